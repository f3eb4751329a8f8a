#include "gpaths/paths.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gpaths/errors.hpp"
#include "gpaths/parallel.hpp"

namespace gpaths {

namespace {

constexpr const char* kModule = "paths";

// Reference segment on which lambda is monotone, stored in increasing lambda.
struct Segment {
    std::vector<double> lambda;
    std::vector<double> c;
    std::vector<const PathPoint*> point;
    double lo() const { return lambda.front(); }
    double hi() const { return lambda.back(); }
};

double correlation_of(const PathPoint& p) { return cm_from_purity_lambda(p.mu, p.lambda).c; }

// Splits a path into maximal runs with monotone lambda. Steps with no change
// in lambda do not break a run.
std::vector<std::vector<std::size_t>> monotone_runs(const std::vector<PathPoint>& pts) {
    std::vector<std::vector<std::size_t>> runs;
    if (pts.empty()) return runs;
    std::vector<std::size_t> run{0};
    int direction = 0;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        const double d = pts[i].lambda - pts[i - 1].lambda;
        const int s = d > 0 ? 1 : (d < 0 ? -1 : 0);
        if (s != 0 && direction != 0 && s != direction) {
            runs.push_back(run);
            run = {i - 1};
            direction = 0;
        }
        if (s != 0 && direction == 0) direction = s;
        run.push_back(i);
    }
    runs.push_back(run);
    return runs;
}

std::vector<Segment> reference_segments(const DynamicalPath& path) {
    std::vector<Segment> out;
    for (const auto& run : monotone_runs(path.points)) {
        Segment seg;
        for (std::size_t i : run) {
            seg.lambda.push_back(path.points[i].lambda);
            seg.c.push_back(correlation_of(path.points[i]));
            seg.point.push_back(&path.points[i]);
        }
        if (seg.lambda.front() > seg.lambda.back()) {
            std::reverse(seg.lambda.begin(), seg.lambda.end());
            std::reverse(seg.c.begin(), seg.c.end());
            std::reverse(seg.point.begin(), seg.point.end());
        }
        out.push_back(std::move(seg));
    }
    return out;
}

// Reference (mu, D) at the given lambda. A lambda that lands on a stored
// point returns that point unchanged; otherwise c is interpolated and mu, D
// recomputed from (lambda + c, c).
std::optional<std::pair<double, double>> reference_at(const Segment& seg, double lambda) {
    if (lambda < seg.lo() || lambda > seg.hi()) return std::nullopt;
    auto it = std::lower_bound(seg.lambda.begin(), seg.lambda.end(), lambda);
    std::size_t i = static_cast<std::size_t>(std::distance(seg.lambda.begin(), it));
    if (i < seg.lambda.size() && seg.lambda[i] == lambda) return std::pair{seg.point[i]->mu, seg.point[i]->discord};
    i = std::clamp<std::size_t>(i, 1, seg.lambda.size() - 1);
    const double l0 = seg.lambda[i - 1], l1 = seg.lambda[i];
    const double w = (lambda - l0) / (l1 - l0);
    const double c = seg.c[i - 1] + w * (seg.c[i] - seg.c[i - 1]);
    const SymmetricCMd cm{lambda + c, c};
    if (!is_physical(cm)) return std::nullopt;
    return std::pair{purity(cm), gaussian_discord(cm)};
}

double overlap(double lo1, double hi1, double lo2, double hi2) {
    return std::max(0.0, std::min(hi1, hi2) - std::max(lo1, lo2));
}

}  // namespace

DynamicalPath extract_path(const Trajectory& traj) {
    DynamicalPath path;
    path.source.spectrum = traj.spectrum ? std::string(to_string(*traj.spectrum)) : std::string("markovian");
    path.source.n_thermal = traj.n_thermal;
    path.source.mode = traj.mode;
    path.source.initial = traj.initial;
    if (traj.initial.c >= 0.0) path.source.initial_sts = to_sts(traj.initial);
    path.points.reserve(traj.samples.size());
    for (const auto& s : traj.samples) {
        const PathPoint p = path_point(s.cm, s.t);
        if (!path.points.empty()) {
            const PathPoint& q = path.points.back();
            if (q.mu == p.mu && q.lambda == p.lambda && q.discord == p.discord) continue;
        }
        path.points.push_back(p);
    }
    return path;
}

UniversalityReport compare_paths(const DynamicalPath& reference, const DynamicalPath& candidate, double tol) {
    UniversalityReport rep;
    rep.reference = reference.source;
    rep.candidate = candidate.source;
    rep.tolerance = tol;
    if (reference.points.empty() || candidate.points.empty())
        throw DomainError(kModule, "compare_paths: empty path");

    const auto segments = reference_segments(reference);
    double ref_lo = std::numeric_limits<double>::infinity(), ref_hi = -ref_lo;
    for (const auto& s : segments) {
        ref_lo = std::min(ref_lo, s.lo());
        ref_hi = std::max(ref_hi, s.hi());
    }

    // Matched fraction: lambda-length of candidate segments covered by the
    // reference range, over their total lambda-length.
    double covered = 0.0, total = 0.0;
    for (const auto& run : monotone_runs(candidate.points)) {
        double lo = candidate.points[run.front()].lambda, hi = candidate.points[run.back()].lambda;
        if (lo > hi) std::swap(lo, hi);
        total += hi - lo;
        covered += overlap(lo, hi, ref_lo, ref_hi);
    }
    if (total > 0.0) {
        rep.matched_fraction = covered / total;
    } else {
        const double l = candidate.points.front().lambda;
        rep.matched_fraction = (l >= ref_lo && l <= ref_hi) ? 1.0 : 0.0;
    }

    double worst = 0.0;
    for (const auto& p : candidate.points) {
        double best = std::numeric_limits<double>::infinity(), best_d = 0.0, best_mu = 0.0;
        for (const auto& seg : segments) {
            const auto ref = reference_at(seg, p.lambda);
            if (!ref) continue;
            const double dm = std::abs(ref->first - p.mu);
            const double dd = std::abs(ref->second - p.discord);
            if (dd + dm < best) {
                best = dd + dm;
                best_d = dd;
                best_mu = dm;
            }
        }
        if (!std::isfinite(best)) continue;
        ++rep.matched_points;
        worst = std::max(worst, best);
        rep.max_discord_deviation = std::max(rep.max_discord_deviation, best_d);
        rep.max_purity_deviation = std::max(rep.max_purity_deviation, best_mu);
    }
    if (rep.matched_points > 0) rep.max_deviation = worst;
    rep.within_tolerance = rep.max_deviation.has_value() && *rep.max_deviation <= tol;
    return rep;
}

double dsep_universal(double r0) {
    if (!(r0 >= 0.0)) throw DomainError(kModule, "dsep_universal requires r0 >= 0");
    const double c0 = 0.5 * std::sinh(2.0 * r0);
    return gaussian_discord(SymmetricCMd{0.5 + c0, c0});
}

std::optional<double> dsep_from_trajectory(const Trajectory& traj) {
    const auto t_sep = separability_time(traj);
    if (!t_sep) return std::nullopt;
    if (*t_sep == 0.0) return gaussian_discord(traj.initial);
    // On the threshold a = 1/2 + c exactly; only c needs interpolating.
    const double c = state_at(traj, *t_sep).c;
    return gaussian_discord(SymmetricCMd{0.5 + c, c});
}

double d_star() { return 2.0 * std::log(2.0) - 1.0; }

std::vector<SweepRow> dsep_sweep(const std::vector<double>& r0_values, const SweepSettings& settings) {
    if (r0_values.empty()) throw ConfigError(kModule, "dsep_sweep needs at least one r0");
    if (settings.spectra.empty()) throw ConfigError(kModule, "dsep_sweep needs at least one spectrum");

    const std::size_t n_r = r0_values.size();
    std::vector<SweepRow> rows(settings.spectra.size() * n_r);
    for (std::size_t s = 0; s < settings.spectra.size(); ++s) {
        const SpectralDensity& spec = settings.spectra[s];
        for (std::size_t k = 0; k < n_r; ++k) {
            SweepRow& row = rows[s * n_r + k];
            row.r0 = r0_values[k];
            row.n_thermal = settings.environment.n_thermal;
            row.spectrum = std::string(to_string(spec.kind));
            row.mode = settings.mode;
        }

        std::optional<CoefficientGrid> grid;
        std::optional<MarkovianChannel> channel;
        try {
            if (settings.mode == EvolutionMode::Markovian)
                channel = MarkovianChannel{gamma_markov(spec, settings.environment, settings.quadrature),
                                           settings.environment.n_thermal};
            else
                grid = build_coefficient_grid(spec, settings.environment, settings.t_max, settings.quadrature);
        } catch (const Error& e) {
            for (std::size_t k = 0; k < n_r; ++k) rows[s * n_r + k].error = e.what();
            continue;
        }

        parallel_for(n_r, [&](std::size_t k) {
            SweepRow& row = rows[s * n_r + k];
            try {
                const SymmetricCMd cm0 = from_sts(STSParamsd{row.r0, settings.nu0});
                const Trajectory traj =
                    channel ? simulate_trajectory(cm0, *channel, settings.t_max, 2)
                            : simulate_trajectory(cm0, *grid, settings.mode, grid->t_max(),
                                                  static_cast<std::size_t>(grid->size()));
                row.t_sep = separability_time(traj);
                if (row.t_sep) row.d_sep = dsep_from_trajectory(traj);
            } catch (const Error& e) {
                row.error = e.what();
            }
        });
    }
    return rows;
}

}  // namespace gpaths

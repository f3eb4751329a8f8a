#include "gpaths/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>
#include <vector>

#include "gpaths/csv.hpp"
#include "gpaths/errors.hpp"
#include "gpaths/parallel.hpp"
#include "gpaths/quadrature.hpp"

namespace gpaths {

namespace {

constexpr const char* kModule = "coefficients";

// Start of the linear tail taper, as a fraction of omega_max.
constexpr double kTaperStart = 0.9;

// sin(x t) / x, continuous through x = 0.
double sin_ratio(double x, double t) {
    const double xt = x * t;
    if (std::abs(xt) < 1e-4) return t * (1.0 - xt * xt / 6.0);
    return std::sin(xt) / x;
}

bool has_flat_tail(SpectrumKind kind) {
    return kind == SpectrumKind::SuperOhmic || kind == SpectrumKind::WhiteNoise;
}

// Cesaro mean of the truncated integral over cutoffs in [0.9, 1] omega_max,
// written as a weight on the integrand.
double tail_weight(SpectrumKind kind, double omega, double omega_max) {
    if (!has_flat_tail(kind)) return 1.0;
    const double start = kTaperStart * omega_max;
    if (omega <= start) return 1.0;
    return (omega_max - omega) / (omega_max - start);
}

double lower_limit(const SpectralDensity& spec, const Environment& env, const QuadratureConfig& q) {
    return spec.kind == SpectrumKind::WhiteNoise ? q.ir_cutoff * env.omega0 : 0.0;
}

std::vector<double> frequency_panels(const SpectralDensity& spec, const Environment& env, double t,
                                     const QuadratureConfig& q) {
    const double lo = lower_limit(spec, env, q);
    const double hi = q.resolved_omega_max(spec, env);
    const double feature = std::min(env.omega0, spec.omega_c);

    std::vector<double> anchors{lo, hi, env.omega0, spec.omega_c};
    if (has_flat_tail(spec.kind)) anchors.push_back(kTaperStart * hi);
    // Logarithmic panels resolve the 1/omega growth above an IR cutoff.
    if (lo > 0.0)
        for (double x = 10.0 * lo; x < 0.1 * feature; x *= 10.0) anchors.push_back(x);
    std::erase_if(anchors, [&](double x) { return x < lo || x > hi; });
    std::sort(anchors.begin(), anchors.end());
    anchors.erase(std::unique(anchors.begin(), anchors.end()), anchors.end());

    // Half a period of sin(omega t) per panel, and never wider than half the
    // narrowest spectral feature.
    double width = 0.5 * feature;
    if (t > 0.0) width = std::min(width, std::numbers::pi / t);

    std::vector<double> panels{anchors.front()};
    for (std::size_t i = 0; i + 1 < anchors.size(); ++i) {
        const double a = anchors[i], b = anchors[i + 1];
        const bool logarithmic = lo > 0.0 && b <= 0.1 * feature;
        const long pieces = logarithmic ? 1 : std::max(1L, static_cast<long>(std::ceil((b - a) / width)));
        for (long k = 1; k < pieces; ++k) panels.push_back(a + (b - a) * static_cast<double>(k) / static_cast<double>(pieces));
        panels.push_back(b);
    }
    return panels;
}

}  // namespace

double QuadratureConfig::resolved_omega_max(const SpectralDensity& spec, const Environment& env) const {
    return omega_max > 0.0 ? omega_max : 50.0 * std::max(env.omega0, spec.omega_c);
}

long QuadratureConfig::stride() const {
    if (!(s_step > 0.0) || !(t_step > 0.0)) throw ConfigError(kModule, "s_step and t_step must be > 0");
    const double ratio = t_step / s_step;
    const double rounded = std::round(ratio);
    if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * ratio)
        throw ConfigError(kModule, "t_step must be a whole multiple of s_step (output grid is a subsample of the s-grid)");
    return static_cast<long>(rounded);
}

void QuadratureConfig::validate(const SpectralDensity& spec, const Environment& env) const {
    spec.validate();
    env.validate();
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw ConfigError(kModule, "abs_tol and rel_tol must be > 0");
    if (!(ir_cutoff > 0.0)) throw ConfigError(kModule, "ir_cutoff must be > 0");
    if (max_intervals < 1) throw ConfigError(kModule, "max_intervals must be >= 1");
    const double scale = std::max(env.omega0, spec.omega_c);
    const double wmax = resolved_omega_max(spec, env);
    if (wmax < 10.0 * scale) throw ConfigError(kModule, "omega_max must be >= 10 * max(omega0, omega_c)");
    if (s_step > 2.0 * std::numbers::pi / (20.0 * scale))
        throw ConfigError(kModule, "s_step must be <= 2 pi / (20 max(omega0, omega_c))");
    stride();
}

CoefficientPair coefficients_at(const SpectralDensity& spec, const Environment& env, double t,
                                const QuadratureConfig& q) {
    if (!(t >= 0.0)) throw DomainError(kModule, "coefficients require t >= 0");
    if (t == 0.0 || env.alpha == 0.0) return {};

    const double w0 = env.omega0;
    const double wmax = q.resolved_omega_max(spec, env);
    // Delta and gamma are integrated separately so that the adaptive
    // refinement of gamma never sees the temperature.
    auto heating = [&](double w) {
        const double j = evaluate_j(spec, w) * tail_weight(spec.kind, w, wmax);
        return quad::Vec<double, 1>(j * thermal_weight(env, w) * 0.5 * (sin_ratio(w - w0, t) + sin_ratio(w + w0, t)));
    };
    auto damping = [&](double w) {
        const double j = evaluate_j(spec, w) * tail_weight(spec.kind, w, wmax);
        return quad::Vec<double, 1>(j * 0.5 * (sin_ratio(w - w0, t) - sin_ratio(w + w0, t)));
    };

    const double a2 = env.alpha * env.alpha;
    quad::Options opt;
    opt.abs_tol = q.abs_tol / a2;
    // Keep quadrature error well under the grid tolerance.
    opt.rel_tol = 1e-3 * q.rel_tol;
    opt.max_intervals = q.max_intervals;
    const auto panels = frequency_panels(spec, env, t, q);
    const std::span<const double> bp(panels);
    const char* which = "Delta";
    try {
        CoefficientPair out;
        out.delta = a2 * quad::integrate<double, 1>(heating, bp, opt).value[0];
        which = "gamma";
        out.gamma = a2 * quad::integrate<double, 1>(damping, bp, opt).value[0];
        return out;
    } catch (const QuadratureError& e) {
        std::ostringstream msg;
        msg << which << " at t = " << t << ": " << e.detail();
        throw QuadratureError(msg.str(), a2 * e.achieved_error(), a2 * e.requested_error());
    }
}

double delta_at(const SpectralDensity& spec, const Environment& env, double t, const QuadratureConfig& q) {
    return coefficients_at(spec, env, t, q).delta;
}

double gamma_at(const SpectralDensity& spec, const Environment& env, double t, const QuadratureConfig& q) {
    return coefficients_at(spec, env, t, q).gamma;
}

CoefficientGrid build_coefficient_grid(const SpectralDensity& spec, const Environment& env, double t_max,
                                       const QuadratureConfig& q) {
    if (!(t_max > 0.0)) throw DomainError(kModule, "t_max must be > 0");
    q.validate(spec, env);
    const long stride = q.stride();
    const long n_out = static_cast<long>(std::ceil(t_max / q.t_step - 1e-9));
    const long n_fine = n_out * stride + 1;
    const double h = q.s_step;

    Eigen::VectorXd s(n_fine), delta(n_fine), gamma(n_fine);
    for (long i = 0; i < n_fine; ++i) s[i] = h * static_cast<double>(i);
    parallel_for(static_cast<std::size_t>(n_fine), [&](std::size_t i) {
        const auto c = coefficients_at(spec, env, s[static_cast<Eigen::Index>(i)], q);
        delta[static_cast<Eigen::Index>(i)] = c.delta;
        gamma[static_cast<Eigen::Index>(i)] = c.gamma;
    });

    Eigen::VectorXd big_gamma = Eigen::VectorXd::Zero(n_fine);
    Eigen::VectorXd delta_gamma = Eigen::VectorXd::Zero(n_fine);
    Eigen::VectorXd delta_int = Eigen::VectorXd::Zero(n_fine);
    for (long i = 1; i < n_fine; ++i) {
        big_gamma[i] = big_gamma[i - 1] + 0.5 * h * (gamma[i - 1] + gamma[i]);
        delta_int[i] = delta_int[i - 1] + 0.5 * h * (delta[i - 1] + delta[i]);
        // Trapezoid on e^{Gamma} Delta, carried in the e^{-Gamma(t)} frame.
        const double decay = std::exp(-(big_gamma[i] - big_gamma[i - 1]));
        delta_gamma[i] = decay * (delta_gamma[i - 1] + 0.5 * h * delta[i - 1]) + 0.5 * h * delta[i];
    }

    CoefficientGrid grid;
    grid.spectrum = spec;
    grid.environment = env;
    const Eigen::Index n = n_out + 1;
    grid.times.resize(n);
    grid.delta.resize(n);
    grid.gamma.resize(n);
    grid.big_gamma.resize(n);
    grid.delta_gamma.resize(n);
    grid.delta_integral.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::Index k = i * stride;
        grid.times[i] = q.t_step * static_cast<double>(i);
        grid.delta[i] = delta[k];
        grid.gamma[i] = gamma[k];
        grid.big_gamma[i] = big_gamma[k];
        grid.delta_gamma[i] = delta_gamma[k];
        grid.delta_integral[i] = delta_int[k];
    }
    grid.check_invariants();
    return grid;
}

void CoefficientGrid::check_invariants() const {
    const Eigen::Index n = times.size();
    if (n == 0) throw DomainError(kModule, "empty coefficient grid");
    if (delta.size() != n || gamma.size() != n || big_gamma.size() != n || delta_gamma.size() != n ||
        delta_integral.size() != n)
        throw DomainError(kModule, "coefficient arrays differ in length");
    if (times[0] != 0.0) throw DomainError(kModule, "grid must start at t = 0");
    for (Eigen::Index i = 1; i < n; ++i)
        if (!(times[i] > times[i - 1])) throw DomainError(kModule, "grid times must be strictly increasing");
    if (delta[0] != 0.0 || gamma[0] != 0.0 || big_gamma[0] != 0.0 || delta_gamma[0] != 0.0)
        throw DomainError(kModule, "coefficients must vanish at t = 0");
    if (!(delta.allFinite() && gamma.allFinite() && big_gamma.allFinite() && delta_gamma.allFinite()))
        throw DomainError(kModule, "non-finite coefficient values");
}

bool CoefficientGrid::big_gamma_monotone() const {
    for (Eigen::Index i = 1; i < times.size(); ++i)
        if (gamma[i] < 0.0 || big_gamma[i] < big_gamma[i - 1]) return false;
    return true;
}

MarkovPlateau gamma_markov_plateau(const SpectralDensity& spec, const Environment& env, const QuadratureConfig& q,
                                   double window_scale) {
    spec.validate();
    env.validate();
    MarkovPlateau p;
    p.window = window_scale * 50.0 / std::min(env.omega0, spec.omega_c);
    if (env.alpha == 0.0) return p;

    constexpr int kSamples = 41;
    Eigen::VectorXd g(kSamples);
    for (int i = 0; i < kSamples; ++i) {
        const double t = p.window * (0.8 + 0.2 * i / (kSamples - 1.0));
        g[i] = gamma_at(spec, env, t, q);
    }
    const double mean = g.mean();
    const double spread = std::sqrt((g.array() - mean).square().mean());
    p.gamma_m = mean;
    p.relative_spread = mean != 0.0 ? spread / std::abs(mean) : (spread == 0.0 ? 0.0 : kInfinity);
    if (p.relative_spread >= 0.01) {
        std::ostringstream msg;
        msg << "gamma(t) shows no plateau on [" << 0.8 * p.window << ", " << p.window
            << "]: relative spread " << p.relative_spread;
        throw NoPlateauError(msg.str(), p.relative_spread);
    }
    return p;
}

double gamma_markov(const SpectralDensity& spec, const Environment& env, const QuadratureConfig& q) {
    return gamma_markov_plateau(spec, env, q).gamma_m;
}

double gamma_markov_resonant_estimate(const SpectralDensity& spec, const Environment& env) {
    return env.alpha * env.alpha * 0.5 * std::numbers::pi * evaluate_j(spec, env.omega0);
}

std::pair<double, double> markovian_coefficients(double gamma_m, double n_thermal, double t) {
    if (!(gamma_m >= 0.0)) throw DomainError(kModule, "gamma_m must be >= 0");
    if (!(t >= 0.0)) throw DomainError(kModule, "t must be >= 0");
    if (!(n_thermal >= 0.0)) throw DomainError(kModule, "n_T must be >= 0");
    const double x = gamma_m * t;
    return {x, -std::expm1(-x) * (2.0 * n_thermal + 1.0)};
}

void write_coefficient_csv(std::ostream& os, const CoefficientGrid& grid) {
    os << "t,delta,gamma,big_gamma,delta_gamma\n";
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
        os << csv::number(grid.times[i]) << ',' << csv::number(grid.delta[i]) << ','
           << csv::number(grid.gamma[i]) << ',' << csv::number(grid.big_gamma[i]) << ','
           << csv::number(grid.delta_gamma[i]) << '\n';
    }
}

}  // namespace gpaths

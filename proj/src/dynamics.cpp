#include "gpaths/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gpaths/errors.hpp"
#include "gpaths/interpolation.hpp"

namespace gpaths {

namespace {

constexpr const char* kModule = "dynamics";

void require_samples(std::size_t n_samples, double t_max) {
    if (n_samples < 2) throw ConfigError(kModule, "n_samples must be >= 2");
    if (!(t_max > 0.0)) throw ConfigError(kModule, "t_max must be > 0");
}

double sample_time(double t_max, std::size_t i, std::size_t n) {
    if (i + 1 == n) return t_max;
    return t_max * static_cast<double>(i) / static_cast<double>(n - 1);
}

}  // namespace

std::string_view to_string(EvolutionMode mode) {
    switch (mode) {
        case EvolutionMode::NonMarkovian: return "nonmarkovian";
        case EvolutionMode::Markovian: return "markovian";
        case EvolutionMode::HighTemperature: return "hight";
    }
    return "unknown";
}

EvolutionMode parse_evolution_mode(std::string_view name) {
    if (name == "nonmarkovian") return EvolutionMode::NonMarkovian;
    if (name == "markovian") return EvolutionMode::Markovian;
    if (name == "hight") return EvolutionMode::HighTemperature;
    throw ConfigError(kModule, "unknown mode '" + std::string(name) + "' (expected nonmarkovian|markovian|hight)");
}

std::vector<double> Trajectory::times() const {
    std::vector<double> out;
    out.reserve(samples.size());
    for (const auto& s : samples) out.push_back(s.t);
    return out;
}

std::vector<double> Trajectory::lambdas() const {
    std::vector<double> out;
    out.reserve(samples.size());
    for (const auto& s : samples) out.push_back(min_symplectic(s.cm));
    return out;
}

SymmetricCMd evolve_cm(const SymmetricCMd& cm0, double big_gamma, double delta_gamma) {
    const double damp = std::exp(-big_gamma);
    SymmetricCMd out{cm0.a * damp + 0.5 * delta_gamma, cm0.c * damp};
    if (!is_physical(out)) {
        std::ostringstream msg;
        msg << "secular map left the physical region (Gamma = " << big_gamma << ", Delta_Gamma = " << delta_gamma
            << ", a = " << out.a << ", c = " << out.c << ")";
        throw UnphysicalMapError(msg.str(), std::nan(""));
    }
    return out;
}

SymmetricCMd evolve_markovian(const SymmetricCMd& cm0, double gamma_m, double n_thermal, double t) {
    if (!(t >= 0.0)) throw DomainError(kModule, "evolve_markovian requires t >= 0");
    if (!(gamma_m >= 0.0) || !(n_thermal >= 0.0))
        throw DomainError(kModule, "evolve_markovian requires gamma_m >= 0 and n_T >= 0");
    const double x = std::exp(-gamma_m * t);
    const double stationary = n_thermal + 0.5;
    // Written around the fixed point so that sigma_T maps exactly onto itself.
    return {stationary + (cm0.a - stationary) * x, cm0.c * x};
}

SymmetricCMd evolve_high_t(const SymmetricCMd& cm0, double delta_integral) {
    return {cm0.a + 0.5 * delta_integral, cm0.c};
}

GridState interpolate_grid(const CoefficientGrid& grid, double t) {
    const double tmax = grid.t_max();
    if (!(t >= 0.0) || t > tmax * (1.0 + 1e-12)) {
        std::ostringstream msg;
        msg << "time " << t << " outside coefficient grid [0, " << tmax << "]";
        throw DomainError(kModule, msg.str());
    }
    const Eigen::Index n = grid.size();
    if (n == 1) return {};
    const double h = grid.step();
    Eigen::Index i = std::min<Eigen::Index>(static_cast<Eigen::Index>(std::floor(t / h)), n - 2);
    const double t0 = grid.times[i], t1 = grid.times[i + 1];
    if (t == t0) return {grid.big_gamma[i], grid.delta_gamma[i], grid.delta_integral[i]};
    if (t >= t1) return {grid.big_gamma[i + 1], grid.delta_gamma[i + 1], grid.delta_integral[i + 1]};

    auto dg = [&](Eigen::Index k) { return grid.delta[k] - grid.gamma[k] * grid.delta_gamma[k]; };
    GridState s;
    s.big_gamma = hermite(t0, t1, grid.big_gamma[i], grid.big_gamma[i + 1], grid.gamma[i], grid.gamma[i + 1], t);
    s.delta_gamma = hermite(t0, t1, grid.delta_gamma[i], grid.delta_gamma[i + 1], dg(i), dg(i + 1), t);
    s.delta_integral =
        hermite(t0, t1, grid.delta_integral[i], grid.delta_integral[i + 1], grid.delta[i], grid.delta[i + 1], t);
    return s;
}

Trajectory simulate_trajectory(const SymmetricCMd& cm0, const CoefficientGrid& grid, EvolutionMode mode,
                               double t_max, std::size_t n_samples) {
    require_samples(n_samples, t_max);
    require_physical(cm0, "simulate_trajectory");
    if (mode == EvolutionMode::Markovian)
        throw ConfigError(kModule, "Markovian trajectories are driven by a MarkovianChannel, not a grid");
    if (t_max > grid.t_max() * (1.0 + 1e-12)) {
        std::ostringstream msg;
        msg << "coefficient grid ends at t = " << grid.t_max() << " but t_max = " << t_max;
        throw ConfigError(kModule, msg.str());
    }

    Trajectory traj;
    traj.mode = mode;
    traj.initial = cm0;
    traj.n_thermal = grid.environment.n_thermal;
    traj.spectrum = grid.spectrum.kind;
    traj.samples.reserve(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i) {
        const double t = sample_time(t_max, i, n_samples);
        const GridState g = interpolate_grid(grid, t);
        TrajectorySample s;
        s.t = t;
        try {
            if (mode == EvolutionMode::NonMarkovian) {
                s.cm = evolve_cm(cm0, g.big_gamma, g.delta_gamma);
                s.big_gamma = g.big_gamma;
                s.delta_gamma = g.delta_gamma;
            } else {
                s.cm = evolve_cm(cm0, 0.0, g.delta_integral);
                s.delta_gamma = g.delta_integral;
            }
        } catch (const UnphysicalMapError& e) {
            std::ostringstream msg;
            msg << e.detail() << " at t = " << t;
            throw UnphysicalMapError(msg.str(), t);
        }
        traj.samples.push_back(s);
    }
    return traj;
}

Trajectory simulate_trajectory(const SymmetricCMd& cm0, const MarkovianChannel& channel, double t_max,
                               std::size_t n_samples) {
    require_samples(n_samples, t_max);
    require_physical(cm0, "simulate_trajectory");
    Trajectory traj;
    traj.mode = EvolutionMode::Markovian;
    traj.initial = cm0;
    traj.n_thermal = channel.n_thermal;
    traj.gamma_m = channel.gamma_m;
    traj.samples.reserve(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i) {
        const double t = sample_time(t_max, i, n_samples);
        const auto [big_gamma, delta_gamma] = markovian_coefficients(channel.gamma_m, channel.n_thermal, t);
        traj.samples.push_back({t, evolve_markovian(cm0, channel.gamma_m, channel.n_thermal, t), big_gamma, delta_gamma});
    }
    return traj;
}

std::optional<double> separability_time(const Trajectory& traj) {
    if (traj.samples.empty()) throw DomainError(kModule, "empty trajectory");
    const double lambda0 = min_symplectic(traj.initial);
    if (lambda0 >= 0.5) return 0.0;

    if (traj.mode == EvolutionMode::Markovian) {
        // lambda(t) = lambda_T + (lambda0 - lambda_T) e^{-gamma_M t}
        const double lambda_T = traj.n_thermal + 0.5;
        const double g = traj.gamma_m.value_or(0.0);
        if (!(lambda_T > 0.5) || !(g > 0.0)) return std::nullopt;
        return std::log1p((0.5 - lambda0) / (lambda_T - 0.5)) / g;
    }

    const auto t = traj.times();
    const auto lam = traj.lambdas();
    const auto it = std::find_if(lam.begin(), lam.end(), [](double l) { return l >= 0.5; });
    if (it == lam.end()) {
        const std::size_t n = lam.size();
        const bool rising = n >= 2 && lam[n - 1] > lam[n - 2];
        // A vacuum bath only approaches lambda = 1/2 asymptotically.
        const bool asymptotic = traj.mode != EvolutionMode::HighTemperature && traj.n_thermal == 0.0;
        if (rising && !asymptotic) {
            std::ostringstream msg;
            msg << "lambda = " << lam.back() << " < 1/2 and rising at t_max = " << t.back()
                << "; extend the trajectory";
            throw InconclusiveThresholdError(msg.str(), t.back());
        }
        return std::nullopt;
    }

    const std::size_t k = static_cast<std::size_t>(std::distance(lam.begin(), it));
    if (k == 0) return t[0];
    std::span<const double> ts(t), ls(lam);
    double lo = t[k - 1], hi = t[k];
    while (hi - lo > 1e-10 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (pchip_eval(ts, ls, k - 1, mid) >= 0.5) hi = mid;
        else lo = mid;
    }
    return 0.5 * (lo + hi);
}

SymmetricCMd state_at(const Trajectory& traj, double t) {
    if (traj.mode == EvolutionMode::Markovian)
        return evolve_markovian(traj.initial, traj.gamma_m.value_or(0.0), traj.n_thermal, t);
    const auto times = traj.times();
    if (!(t >= 0.0) || t > times.back() * (1.0 + 1e-12))
        throw DomainError(kModule, "state_at: time outside the trajectory");
    if (times.size() == 1) return traj.samples.front().cm;
    std::vector<double> a, c;
    a.reserve(times.size());
    c.reserve(times.size());
    for (const auto& s : traj.samples) {
        a.push_back(s.cm.a);
        c.push_back(s.cm.c);
    }
    const std::size_t i = bracket(times, t);
    return {pchip_eval(times, a, i, t), pchip_eval(times, c, i, t)};
}

Reachability reachable_markovian(const SymmetricCMd& cm0, const SymmetricCMd& cm1) {
    require_physical(cm0, "reachable_markovian");
    require_physical(cm1, "reachable_markovian");
    if (!(cm0.c > 0.0)) throw DomainError(kModule, "reachable_markovian: c0 = 0 leaves no correlation-decay clock");

    Reachability r;
    const double x = cm1.c / cm0.c;
    if (x > 1.0 + 1e-12) {
        r.violated = "c-growth";
        return r;
    }
    if (!(cm1.c > 0.0)) {
        // c = 0 is only approached as t -> infinity.
        r.violated = "c-vanished";
        return r;
    }
    if (x >= 1.0 - 1e-12) {
        if (std::abs(cm1.a - cm0.a) <= 1e-12 * std::max(1.0, cm0.a)) {
            // t = 0: every n_T qualifies; report the vacuum.
            r.reachable = true;
            return r;
        }
        r.violated = "zero-time-mismatch";
        return r;
    }
    const double stationary = (cm1.a - cm0.a * x) / (1.0 - x);
    const double n_thermal = stationary - 0.5;
    if (n_thermal < -1e-10 * std::max(1.0, stationary)) {
        r.violated = "negative-temperature";
        return r;
    }
    r.reachable = true;
    r.gamma_m_t = -std::log(x);
    r.n_thermal = std::max(0.0, n_thermal);
    return r;
}

Reachability reachable_secular(const SymmetricCMd& cm0, const SymmetricCMd& cm1) {
    require_physical(cm0, "reachable_secular");
    require_physical(cm1, "reachable_secular");
    if (!(cm0.c > 0.0)) throw DomainError(kModule, "reachable_secular: c0 = 0 leaves no correlation-decay clock");

    Reachability r;
    const double x = cm1.c / cm0.c;
    if (x > 1.0 + 1e-12) {
        r.violated = "c-growth";
        return r;
    }
    if (!(cm1.c > 0.0)) {
        r.violated = "c-vanished";
        return r;
    }
    const double delta_gamma = 2.0 * (cm1.a - cm0.a * std::min(x, 1.0));
    if (delta_gamma < -1e-12 * std::max(1.0, cm1.a)) {
        r.violated = "negative-diffusion";
        return r;
    }
    r.reachable = true;
    r.gamma_m_t = x >= 1.0 ? 0.0 : -std::log(x);
    r.delta_gamma = std::max(0.0, delta_gamma);
    return r;
}

MotionConstant constant_of_motion(const PathPoint& point, double lambda0, double mu0, double lambda_T) {
    if (!(point.mu > 0.0) || !(point.lambda > 0.0) || !(mu0 > 0.0) || !(lambda0 > 0.0))
        throw DomainError(kModule, "constant_of_motion requires positive mu and lambda");
    const double v0 = 1.0 / (4.0 * mu0 * lambda0);
    const double denom = v0 - lambda_T;
    if (std::abs(denom) <= 1e-14 * std::max(std::abs(v0), std::abs(lambda_T))) return {point.lambda, true};
    const double k = (lambda_T - lambda0) / denom;
    return {point.lambda + k / (4.0 * point.lambda * point.mu), false};
}

}  // namespace gpaths

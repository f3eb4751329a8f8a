#pragma once

#include <Eigen/Dense>

#include <iosfwd>
#include <utility>

#include "gpaths/spectral_env.hpp"

namespace gpaths {

/// Numerical knobs of the coefficient quadrature and of the time grids.
///
/// `s_step` is the step of the fine grid on which Delta(s), gamma(s) are
/// sampled and the cumulative integrals Gamma and Delta_Gamma are
/// accumulated; `t_step` is the spacing of the returned grid and must be a
/// whole multiple of `s_step`. A non-positive `omega_max` means
/// 50 * max(omega0, omega_c).
struct QuadratureConfig {
    double omega_max = 0.0;
    double abs_tol = 1e-10;
    double rel_tol = 1e-4;
    double s_step = 0.01;
    double t_step = 0.01;
    double ir_cutoff = 1e-6;  ///< in units of omega0; lower limit for white noise
    int max_intervals = 400000;

    double resolved_omega_max(const SpectralDensity& spec, const Environment& env) const;
    /// Integer ratio t_step / s_step, or ConfigError.
    long stride() const;
    void validate(const SpectralDensity& spec, const Environment& env) const;
};

/// Delta, gamma, Gamma, Delta_Gamma on a uniform grid starting at t = 0.
struct CoefficientGrid {
    Eigen::VectorXd times;
    Eigen::VectorXd delta;
    Eigen::VectorXd gamma;
    Eigen::VectorXd big_gamma;
    Eigen::VectorXd delta_gamma;
    /// Cumulative integral of Delta, used by the high-temperature map.
    Eigen::VectorXd delta_integral;

    SpectralDensity spectrum;
    Environment environment;

    Eigen::Index size() const { return times.size(); }
    double t_max() const { return times.size() ? times[times.size() - 1] : 0.0; }
    double step() const { return times.size() > 1 ? times[1] - times[0] : 0.0; }

    /// Structural invariants; throws DomainError on violation.
    void check_invariants() const;
    /// True when gamma >= 0 on the whole grid and Gamma never decreases.
    bool big_gamma_monotone() const;
};

/// Delta(t) and gamma(t) evaluated together (shared frequency panels).
struct CoefficientPair {
    double delta = 0.0;
    double gamma = 0.0;
};

CoefficientPair coefficients_at(const SpectralDensity& spec, const Environment& env, double t,
                                const QuadratureConfig& q);

/// Heating coefficient Delta(t).
double delta_at(const SpectralDensity& spec, const Environment& env, double t, const QuadratureConfig& q);

/// Damping coefficient gamma(t); independent of temperature.
double gamma_at(const SpectralDensity& spec, const Environment& env, double t, const QuadratureConfig& q);

CoefficientGrid build_coefficient_grid(const SpectralDensity& spec, const Environment& env, double t_max,
                                       const QuadratureConfig& q);

struct MarkovPlateau {
    double gamma_m = 0.0;
    double relative_spread = 0.0;  ///< std dev / mean over the sampled tail
    double window = 0.0;
};

/// Long-time plateau of gamma(t): mean over the last 20% of
/// [0, 50 / min(omega0, omega_c)]. Throws NoPlateauError when the relative
/// spread reaches 1%.
MarkovPlateau gamma_markov_plateau(const SpectralDensity& spec, const Environment& env, const QuadratureConfig& q,
                                   double window_scale = 1.0);
double gamma_markov(const SpectralDensity& spec, const Environment& env, const QuadratureConfig& q);

/// alpha^2 (pi/2) j(omega0): the resonant weight of the plateau, kept as a cross-check.
double gamma_markov_resonant_estimate(const SpectralDensity& spec, const Environment& env);

/// (Gamma, Delta_Gamma) = (gamma_m t, (1 - e^{-gamma_m t})(2 n_T + 1)).
std::pair<double, double> markovian_coefficients(double gamma_m, double n_thermal, double t);

/// CSV with header `t,delta,gamma,big_gamma,delta_gamma`, 17 significant digits.
void write_coefficient_csv(std::ostream& os, const CoefficientGrid& grid);

}  // namespace gpaths

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gpaths/coefficients.hpp"
#include "gpaths/gaussian_core.hpp"

namespace gpaths {

enum class EvolutionMode { NonMarkovian, Markovian, HighTemperature };

std::string_view to_string(EvolutionMode mode);
/// Accepts `nonmarkovian`, `markovian`, `hight`.
EvolutionMode parse_evolution_mode(std::string_view name);

/// Markovian channel: damping rate gamma_m towards (n_T + 1/2) I4.
struct MarkovianChannel {
    double gamma_m = 0.0;
    double n_thermal = 0.0;
};

struct TrajectorySample {
    double t = 0.0;
    SymmetricCMd cm;
    double big_gamma = 0.0;
    /// Delta_Gamma(t); for the high-temperature map this holds the integral of Delta.
    double delta_gamma = 0.0;
};

struct Trajectory {
    EvolutionMode mode = EvolutionMode::Markovian;
    SymmetricCMd initial;
    std::vector<TrajectorySample> samples;
    double n_thermal = 0.0;
    std::optional<double> gamma_m;          ///< set for Markovian trajectories
    std::optional<SpectrumKind> spectrum;   ///< set for grid-driven trajectories

    double t_max() const { return samples.empty() ? 0.0 : samples.back().t; }
    std::vector<double> times() const;
    std::vector<double> lambdas() const;
};

/// a' = a e^{-Gamma} + Delta_Gamma / 2, c' = c e^{-Gamma}. Throws
/// UnphysicalMapError when the result violates the uncertainty relation.
SymmetricCMd evolve_cm(const SymmetricCMd& cm0, double big_gamma, double delta_gamma);

/// Closed-form Markovian relaxation towards sigma_T = (n_T + 1/2) I4.
SymmetricCMd evolve_markovian(const SymmetricCMd& cm0, double gamma_m, double n_thermal, double t);

/// High-temperature map: a' = a + I/2 with I the integral of Delta, c' = c.
SymmetricCMd evolve_high_t(const SymmetricCMd& cm0, double delta_integral);

/// Gamma, Delta_Gamma and the Delta integral at an arbitrary time, by cubic
/// Hermite interpolation using the known derivatives gamma, Delta - gamma Delta_Gamma and Delta.
struct GridState {
    double big_gamma = 0.0;
    double delta_gamma = 0.0;
    double delta_integral = 0.0;
};
GridState interpolate_grid(const CoefficientGrid& grid, double t);

/// Samples n_samples uniform times on [0, t_max] through the grid-driven map.
Trajectory simulate_trajectory(const SymmetricCMd& cm0, const CoefficientGrid& grid, EvolutionMode mode,
                               double t_max, std::size_t n_samples);

/// Markovian trajectory from closed-form coefficients.
Trajectory simulate_trajectory(const SymmetricCMd& cm0, const MarkovianChannel& channel, double t_max,
                               std::size_t n_samples);

/// First time with lambda(t) >= 1/2. Markovian trajectories use the closed
/// form; others bisect a monotone cubic through the bracketing samples.
/// Returns nullopt if the threshold is never reached; throws
/// InconclusiveThresholdError when lambda is still rising below 1/2 at the end.
std::optional<double> separability_time(const Trajectory& traj);

/// Covariance matrix at an arbitrary time inside the trajectory (closed form
/// for Markovian, monotone cubic in the samples otherwise).
SymmetricCMd state_at(const Trajectory& traj, double t);

struct Reachability {
    bool reachable = false;
    double gamma_m_t = 0.0;      ///< Markovian: gamma_M t; secular: Gamma
    double n_thermal = 0.0;      ///< Markovian only
    double delta_gamma = 0.0;    ///< secular only
    std::string violated;        ///< "c-growth", "negative-temperature", ...
};

/// Whether cm1 lies on the Markovian trajectory of cm0 for some (gamma_M t, n_T >= 0).
Reachability reachable_markovian(const SymmetricCMd& cm0, const SymmetricCMd& cm1);

/// Same question for the whole secular family (free Gamma >= 0, Delta_Gamma >= 0).
Reachability reachable_secular(const SymmetricCMd& cm0, const SymmetricCMd& cm1);

struct MotionConstant {
    double value = 0.0;
    bool degenerate = false;   ///< v0 == lambda_T: value is lambda alone
};

/// C = lambda + k / (4 lambda mu), k = (lambda_T - lambda0) / (v0 - lambda_T),
/// v0 = 1 / (4 mu0 lambda0). Constant along any Markovian trajectory.
MotionConstant constant_of_motion(const PathPoint& point, double lambda0, double mu0, double lambda_T);

}  // namespace gpaths

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gpaths/dynamics.hpp"

namespace gpaths {

/// Where a path came from: spectrum label ("markovian" when closed-form),
/// bath occupation, evolution mode, and the initial state.
struct PathSource {
    std::string spectrum;
    double n_thermal = 0.0;
    EvolutionMode mode = EvolutionMode::Markovian;
    SymmetricCMd initial;
    STSParamsd initial_sts;
};

/// Time-eliminated trajectory in (mu, lambda, D) space. Consecutive
/// duplicates are collapsed; t is kept only as metadata.
struct DynamicalPath {
    std::vector<PathPoint> points;
    PathSource source;
};

DynamicalPath extract_path(const Trajectory& traj);

struct UniversalityReport {
    PathSource reference;
    PathSource candidate;
    /// sup over matched candidate points of |dD| + |dmu| at equal lambda;
    /// empty when no candidate point falls inside the reference lambda-range.
    std::optional<double> max_deviation;
    double max_discord_deviation = 0.0;
    double max_purity_deviation = 0.0;
    double matched_fraction = 0.0;
    std::size_t matched_points = 0;
    double tolerance = 0.0;
    bool within_tolerance = false;
};

/// Compares two paths at matched lambda. The reference is split into
/// lambda-monotone segments; on each, c(lambda) is interpolated linearly
/// (exact on Markovian paths, which are straight lines in the (a, c) plane)
/// and mu, D are recomputed from (a, c) = (lambda + c, c). A candidate point
/// covered by several segments takes the closest match.
UniversalityReport compare_paths(const DynamicalPath& reference, const DynamicalPath& candidate, double tol);

/// Discord at the separability threshold in the high-temperature limit,
/// D(1/2 + c0, c0) with c0 = sinh(2 r0) / 2.
double dsep_universal(double r0);

/// Discord at the first time lambda reaches 1/2, or nullopt if it never does.
std::optional<double> dsep_from_trajectory(const Trajectory& traj);

/// High-temperature, high-squeezing limit 2 ln 2 - 1.
double d_star();

struct SweepSettings {
    Environment environment;
    std::vector<SpectralDensity> spectra;  ///< one sub-sweep per entry (ignored for Markovian)
    EvolutionMode mode = EvolutionMode::NonMarkovian;
    QuadratureConfig quadrature;
    double nu0 = 0.0;        ///< thermal photons of the initial squeezed state
    double t_max = 20.0;
};

struct SweepRow {
    double r0 = 0.0;
    double n_thermal = 0.0;
    std::string spectrum;
    EvolutionMode mode = EvolutionMode::NonMarkovian;
    std::optional<double> t_sep;
    std::optional<double> d_sep;
    std::string error;  ///< non-empty when the row failed; the sweep continues
};

/// One row per (spectrum, r0), ordered spectrum-major. Rows with no
/// threshold carry empty t_sep / d_sep.
std::vector<SweepRow> dsep_sweep(const std::vector<double>& r0_values, const SweepSettings& settings);

}  // namespace gpaths

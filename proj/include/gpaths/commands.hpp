#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include <json.hpp>

#include "gpaths/config.hpp"
#include "gpaths/paths.hpp"

namespace gpaths {

/// Trajectory for the configured mode. Markovian runs take gamma_M from the
/// long-time plateau of gamma(t); the other modes build a coefficient grid up to t_max.
Trajectory simulate(const RunConfig& cfg);

void write_trajectory_csv(std::ostream& os, const Trajectory& traj);
void write_path_csv(std::ostream& os, const DynamicalPath& path);
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

/// Writes trajectory.csv and path.csv into cfg.output_dir; returns the files written.
std::vector<std::filesystem::path> run_simulate(const RunConfig& cfg);
/// Writes coefficients.csv.
std::filesystem::path run_coefficients(const RunConfig& cfg);
/// Writes dsep_sweep.csv, one row per (sweep spectrum, r0).
std::filesystem::path run_dsep(const RunConfig& cfg, const std::vector<double>& r0_values);

/// Verification report for the configured run: physicality violations,
/// damping-law error, constant-of-motion drift, universality against the
/// Markovian reference and the separability threshold. Every check carries
/// the tolerance it was judged against.
nlohmann::json verify_report(const RunConfig& cfg);
/// Writes verify.json.
std::filesystem::path run_verify(const RunConfig& cfg);

}  // namespace gpaths

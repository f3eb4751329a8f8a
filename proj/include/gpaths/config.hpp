#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "gpaths/coefficients.hpp"
#include "gpaths/dynamics.hpp"

namespace gpaths {

/// Everything a CLI run needs. Frequencies are in units of omega0, times in 1/omega0.
struct RunConfig {
    SpectralDensity spectrum;
    Environment environment;
    double r0 = 0.0;
    double nu0 = 0.0;
    double t_max = 0.0;
    std::size_t n_samples = 1001;
    QuadratureConfig quadrature;
    EvolutionMode mode = EvolutionMode::Markovian;
    std::filesystem::path output_dir = ".";
    /// Spectra visited by `dsep-sweep`; defaults to {spectrum}.
    std::vector<SpectrumKind> sweep_spectra;
    /// r0 values visited by `dsep-sweep`; defaults to {r0}.
    std::vector<double> r0_list;

    void validate() const;
};

/// Parses a `key = value` document (`#` starts a comment). Required keys:
/// spectrum, omega_c, alpha, n_T, r0, nu0, t_max, mode. Everything else falls
/// back to the documented defaults. Unknown keys and violated invariants throw
/// ConfigError naming the key or constraint.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

/// Comma-separated list of doubles ("0.5,1.2,2").
std::vector<double> parse_double_list(std::string_view text);

}  // namespace gpaths

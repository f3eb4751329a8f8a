#include "gpaths/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>

#include "gpaths/csv.hpp"
#include "gpaths/errors.hpp"
#include "gpaths/json_io.hpp"

namespace gpaths {

namespace {

constexpr const char* kModule = "cli";

constexpr double kUniversalityTol = 1e-2;
constexpr double kMarkovDriftTol = 1e-8;
constexpr double kGridDriftTol = 1e-4;
constexpr double kDampingTol = 1e-10;
constexpr double kDsepTol = 1e-2;

std::ofstream open_output(const std::filesystem::path& dir, const char* name, std::filesystem::path& out) {
    std::filesystem::create_directories(dir);
    out = dir / name;
    std::ofstream os(out, std::ios::binary);
    if (!os) throw ConfigError(kModule, "cannot write '" + out.string() + "'");
    return os;
}

std::string optional_number(const std::optional<double>& x) { return x ? csv::number(*x) : std::string(); }

MarkovianChannel markovian_channel(const RunConfig& cfg) {
    return {gamma_markov(cfg.spectrum, cfg.environment, cfg.quadrature), cfg.environment.n_thermal};
}

// Markovian path from the same initial state; covers lambda up to
// lambda_T (1 - e^{-10}), past anything a finite run can reach.
DynamicalPath markovian_reference(const SymmetricCMd& cm0, double gamma_m, double n_thermal) {
    const double g = gamma_m > 0.0 ? gamma_m : 1.0;
    return extract_path(simulate_trajectory(cm0, MarkovianChannel{g, n_thermal}, 10.0 / g, 2001));
}

}  // namespace

Trajectory simulate(const RunConfig& cfg) {
    const SymmetricCMd cm0 = from_sts(STSParamsd{cfg.r0, cfg.nu0});
    if (cfg.mode == EvolutionMode::Markovian)
        return simulate_trajectory(cm0, markovian_channel(cfg), cfg.t_max, cfg.n_samples);
    const CoefficientGrid grid = build_coefficient_grid(cfg.spectrum, cfg.environment, cfg.t_max, cfg.quadrature);
    return simulate_trajectory(cm0, grid, cfg.mode, cfg.t_max, cfg.n_samples);
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
    os << "t,a,c,mu,lambda,discord,big_gamma,delta_gamma\n";
    for (const auto& s : traj.samples) {
        const PathPoint p = path_point(s.cm, s.t);
        os << csv::number(s.t) << ',' << csv::number(s.cm.a) << ',' << csv::number(s.cm.c) << ','
           << csv::number(p.mu) << ',' << csv::number(p.lambda) << ',' << csv::number(p.discord) << ','
           << csv::number(s.big_gamma) << ',' << csv::number(s.delta_gamma) << '\n';
    }
}

void write_path_csv(std::ostream& os, const DynamicalPath& path) {
    os << "t,mu,lambda,discord\n";
    for (const auto& p : path.points)
        os << csv::number(p.t) << ',' << csv::number(p.mu) << ',' << csv::number(p.lambda) << ','
           << csv::number(p.discord) << '\n';
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    os << "r0,n_T,spectrum,mode,t_sep,d_sep\n";
    for (const auto& r : rows)
        os << csv::number(r.r0) << ',' << csv::number(r.n_thermal) << ',' << r.spectrum << ',' << to_string(r.mode)
           << ',' << optional_number(r.t_sep) << ',' << optional_number(r.d_sep) << '\n';
}

std::vector<std::filesystem::path> run_simulate(const RunConfig& cfg) {
    const Trajectory traj = simulate(cfg);
    std::filesystem::path traj_file, path_file;
    {
        auto os = open_output(cfg.output_dir, "trajectory.csv", traj_file);
        write_trajectory_csv(os, traj);
    }
    {
        auto os = open_output(cfg.output_dir, "path.csv", path_file);
        write_path_csv(os, extract_path(traj));
    }
    return {traj_file, path_file};
}

std::filesystem::path run_coefficients(const RunConfig& cfg) {
    const CoefficientGrid grid = build_coefficient_grid(cfg.spectrum, cfg.environment, cfg.t_max, cfg.quadrature);
    std::filesystem::path file;
    auto os = open_output(cfg.output_dir, "coefficients.csv", file);
    write_coefficient_csv(os, grid);
    return file;
}

std::filesystem::path run_dsep(const RunConfig& cfg, const std::vector<double>& r0_values) {
    SweepSettings settings;
    settings.environment = cfg.environment;
    settings.mode = cfg.mode;
    settings.quadrature = cfg.quadrature;
    settings.nu0 = cfg.nu0;
    settings.t_max = cfg.t_max;
    for (SpectrumKind kind : cfg.sweep_spectra) {
        SpectralDensity spec = cfg.spectrum;
        spec.kind = kind;
        settings.spectra.push_back(spec);
    }
    const auto rows = dsep_sweep(r0_values, settings);
    std::filesystem::path file;
    auto os = open_output(cfg.output_dir, "dsep_sweep.csv", file);
    write_sweep_csv(os, rows);
    return file;
}

nlohmann::json verify_report(const RunConfig& cfg) {
    const SymmetricCMd cm0 = from_sts(STSParamsd{cfg.r0, cfg.nu0});
    // Grid-driven runs only need gamma_M as the clock of the Markovian
    // reference path, whose shape does not depend on it; fall back to the
    // resonant rate when gamma(t) has no plateau (white noise decays as 1/t).
    std::optional<double> plateau;
    std::string plateau_error;
    try {
        plateau = gamma_markov(cfg.spectrum, cfg.environment, cfg.quadrature);
    } catch (const NoPlateauError& e) {
        if (cfg.mode == EvolutionMode::Markovian) throw;
        plateau_error = e.what();
    }
    const double gamma_m = plateau.value_or(gamma_markov_resonant_estimate(cfg.spectrum, cfg.environment));
    const Trajectory traj = simulate(cfg);
    const DynamicalPath path = extract_path(traj);

    std::size_t violations = 0;
    double damping_error = 0.0;
    for (const auto& s : traj.samples) {
        if (!is_physical(s.cm)) ++violations;
        const double expected = cm0.c * std::exp(-s.big_gamma);
        if (cm0.c != 0.0) damping_error = std::max(damping_error, std::abs(s.cm.c - expected) / std::abs(cm0.c));
    }

    const double lambda0 = min_symplectic(cm0);
    const double mu0 = purity(cm0);
    const double lambda_T = cfg.environment.n_thermal + 0.5;
    const MotionConstant c0 = constant_of_motion(path_point(cm0, 0.0), lambda0, mu0, lambda_T);
    double drift = 0.0;
    for (const auto& p : path.points) {
        const MotionConstant c = constant_of_motion(p, lambda0, mu0, lambda_T);
        drift = std::max(drift, std::abs(c.value - c0.value) / std::abs(c0.value));
    }
    const double drift_tol = cfg.mode == EvolutionMode::Markovian ? kMarkovDriftTol : kGridDriftTol;

    // Markovian runs are compared with the same channel at twice the rate,
    // which must reproduce the path exactly; the others with the Markovian path.
    const DynamicalPath reference =
        cfg.mode == EvolutionMode::Markovian
            ? extract_path(simulate_trajectory(cm0, MarkovianChannel{2.0 * gamma_m, cfg.environment.n_thermal},
                                               cfg.t_max, cfg.n_samples))
            : markovian_reference(cm0, gamma_m, cfg.environment.n_thermal);
    const UniversalityReport uni = compare_paths(reference, path, kUniversalityTol);

    nlohmann::json sep = {{"tolerance", kDsepTol}, {"dsep_universal", dsep_universal(cfg.r0)}};
    try {
        const auto t_sep = separability_time(traj);
        sep["t_sep"] = t_sep ? nlohmann::json(*t_sep) : nlohmann::json(nullptr);
        const auto d_sep = t_sep ? dsep_from_trajectory(traj) : std::nullopt;
        sep["d_sep"] = d_sep ? nlohmann::json(*d_sep) : nlohmann::json(nullptr);
        if (d_sep) sep["deviation"] = std::abs(*d_sep - dsep_universal(cfg.r0));
    } catch (const InconclusiveThresholdError& e) {
        sep["t_sep"] = nullptr;
        sep["d_sep"] = nullptr;
        sep["error"] = e.what();
    }

    nlohmann::json report = {{"mode", std::string(to_string(cfg.mode))},
            {"spectrum", std::string(to_string(cfg.spectrum.kind))},
            {"environment",
             {{"omega0", cfg.environment.omega0},
              {"omega_c", cfg.spectrum.omega_c},
              {"alpha", cfg.environment.alpha},
              {"n_T", cfg.environment.n_thermal}}},
            {"initial", {{"r0", cfg.r0}, {"nu0", cfg.nu0}, {"cm", cm0}}},
            {"gamma_m", plateau ? nlohmann::json(*plateau) : nlohmann::json(nullptr)},
            {"reference_rate", gamma_m},
            {"samples", traj.samples.size()},
            {"t_max", cfg.t_max},
            {"quadrature",
             {{"abs_tol", cfg.quadrature.abs_tol},
              {"rel_tol", cfg.quadrature.rel_tol},
              {"s_step", cfg.quadrature.s_step},
              {"t_step", cfg.quadrature.t_step},
              {"omega_max", cfg.quadrature.resolved_omega_max(cfg.spectrum, cfg.environment)}}},
            {"physicality", {{"violations", violations}, {"tolerance", kPhysicalityTol}}},
            {"damping_law",
             {{"max_error", damping_error}, {"tolerance", kDampingTol}, {"within_tolerance", damping_error <= kDampingTol}}},
            {"constant_of_motion",
             {{"max_relative_drift", drift},
              {"degenerate", c0.degenerate},
              {"tolerance", drift_tol},
              {"within_tolerance", drift <= drift_tol}}},
            {"universality", universality_json(uni)},
            {"separability", sep}};
    if (!plateau_error.empty()) report["gamma_m_error"] = plateau_error;
    return report;
}

std::filesystem::path run_verify(const RunConfig& cfg) {
    const nlohmann::json report = verify_report(cfg);
    std::filesystem::path file;
    auto os = open_output(cfg.output_dir, "verify.json", file);
    os << report.dump(2) << '\n';
    return file;
}

}  // namespace gpaths

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "gpaths/commands.hpp"
#include "gpaths/errors.hpp"

namespace {

struct Options {
    std::string config;
    std::string out;
    std::string mode;
    std::string r0_list;
};

gpaths::RunConfig resolve(const Options& o) {
    gpaths::RunConfig cfg = gpaths::load_config(o.config);
    if (!o.out.empty()) cfg.output_dir = o.out;
    if (!o.mode.empty()) cfg.mode = gpaths::parse_evolution_mode(o.mode);
    if (!o.r0_list.empty()) cfg.r0_list = gpaths::parse_double_list(o.r0_list);
    cfg.validate();
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gaussian two-mode open-system paths: coefficients, trajectories, separability sweeps"};
    app.require_subcommand(1);

    Options opts;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", opts.config, "key = value configuration file")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", opts.out, "output directory (overrides output_dir)");
        sub->add_option("--mode", opts.mode, "nonmarkovian | markovian | hight");
    };

    auto* simulate = app.add_subcommand("simulate", "write trajectory.csv and path.csv");
    auto* coefficients = app.add_subcommand("coefficients", "write coefficients.csv");
    auto* sweep = app.add_subcommand("dsep-sweep", "write dsep_sweep.csv");
    auto* verify = app.add_subcommand("verify", "write verify.json");
    for (auto* sub : {simulate, coefficients, sweep, verify}) add_common(sub);
    sweep->add_option("--r0-list", opts.r0_list, "comma-separated r0 values (overrides r0_list)");

    CLI11_PARSE(app, argc, argv);

    try {
        const gpaths::RunConfig cfg = resolve(opts);
        if (simulate->parsed()) {
            for (const auto& f : gpaths::run_simulate(cfg)) std::cout << f.string() << '\n';
        } else if (coefficients->parsed()) {
            std::cout << gpaths::run_coefficients(cfg).string() << '\n';
        } else if (sweep->parsed()) {
            std::cout << gpaths::run_dsep(cfg, cfg.r0_list).string() << '\n';
        } else if (verify->parsed()) {
            std::cout << gpaths::run_verify(cfg).string() << '\n';
        }
    } catch (const gpaths::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

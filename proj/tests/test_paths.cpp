#include <doctest.h>

#include <cmath>

#include "gpaths/errors.hpp"
#include "gpaths/paths.hpp"

using namespace gpaths;

namespace {

const SymmetricCMd kTwb = from_sts(STSParamsd{1.2, 0.0});
const SpectralDensity kOhmic{SpectrumKind::Ohmic, 1.0};

DynamicalPath markovian_path(double gamma_m, double n_thermal, double t_max, std::size_t n = 2001,
                             const SymmetricCMd& cm0 = kTwb) {
    return extract_path(simulate_trajectory(cm0, MarkovianChannel{gamma_m, n_thermal}, t_max, n));
}

}  // namespace

TEST_CASE("constant trajectory collapses to one point") {
    const auto grid = build_coefficient_grid(kOhmic, Environment{1.0, 0.0, 1.0}, 1.0, QuadratureConfig{});
    const DynamicalPath path = extract_path(simulate_trajectory(kTwb, grid, EvolutionMode::NonMarkovian, 1.0, 50));
    CHECK(path.points.size() == 1);
    CHECK(path.source.spectrum == "ohmic");
    CHECK(path.source.initial_sts.r == doctest::Approx(1.2).epsilon(1e-12));
}

TEST_CASE("vacuum bath path ends at the vacuum") {
    const DynamicalPath path = markovian_path(1.0, 0.0, 40.0);
    CHECK(path.source.spectrum == "markovian");
    const PathPoint& end = path.points.back();
    CHECK(std::abs(end.mu - 1.0) <= 1e-6);
    CHECK(std::abs(end.lambda - 0.5) <= 1e-6);
    CHECK(std::abs(end.discord) <= 1e-6);
    for (const auto& p : path.points) CHECK(p.lambda <= 0.5);
}

TEST_CASE("hot bath path crosses the threshold with discord left") {
    const DynamicalPath path = markovian_path(0.01, 10.0, 20.0);
    bool crossed = false;
    for (std::size_t i = 1; i < path.points.size(); ++i) {
        if (path.points[i - 1].lambda < 0.5 && path.points[i].lambda >= 0.5) {
            crossed = true;
            CHECK(path.points[i].discord > 0.1);
        }
    }
    CHECK(crossed);
}

TEST_CASE("path comparison") {
    const DynamicalPath path = markovian_path(0.01, 10.0, 200.0);
    const auto self = compare_paths(path, path, 1e-12);
    REQUIRE(self.max_deviation);
    CHECK(*self.max_deviation == 0.0);
    CHECK(self.matched_fraction == 1.0);
    CHECK(self.within_tolerance);

    // Doubling the rate only re-times the same curve.
    const auto faster = compare_paths(path, markovian_path(0.02, 10.0, 100.0, 1337), 1e-10);
    REQUIRE(faster.max_deviation);
    CHECK(*faster.max_deviation <= 1e-10);
    CHECK(faster.matched_fraction == doctest::Approx(1.0));

    // A different bath is a different curve.
    const auto other = compare_paths(path, markovian_path(0.01, 2.0, 200.0), 1e-2);
    CHECK_FALSE(other.within_tolerance);

    // Disjoint lambda ranges cannot be compared.
    const auto disjoint = compare_paths(markovian_path(0.01, 10.0, 1.0), markovian_path(0.01, 10.0, 300.0, 11, evolve_markovian(kTwb, 0.01, 10.0, 200.0)), 1e-2);
    CHECK_FALSE(disjoint.max_deviation.has_value());
    CHECK(disjoint.matched_fraction == 0.0);
    CHECK_FALSE(disjoint.within_tolerance);
}

TEST_CASE("off-resonant non-Markovian path follows the Markovian one") {
    const Environment env{10.0, 0.1, 10.0};
    QuadratureConfig q;
    const auto grid = build_coefficient_grid(kOhmic, env, 20.0, q);
    const DynamicalPath nm = extract_path(simulate_trajectory(kTwb, grid, EvolutionMode::NonMarkovian, 20.0, 2001));
    const double gm = gamma_markov(kOhmic, env, q);
    const auto rep = compare_paths(markovian_path(gm, 10.0, 10.0 / gm), nm, 1e-2);
    REQUIRE(rep.max_deviation);
    CHECK(*rep.max_deviation <= 1e-2);
    CHECK(rep.matched_fraction >= 0.95);
}

TEST_CASE("universal discord at the threshold") {
    CHECK(dsep_universal(0.0) == 0.0);
    CHECK(dsep_universal(4.0) == doctest::Approx(0.3863).epsilon(2e-3 / 0.3863));
    CHECK(std::abs(dsep_universal(6.0) - d_star()) <= 1e-4);
    CHECK(d_star() == doctest::Approx(0.386294).epsilon(1e-6));
    CHECK(d_star() == doctest::Approx(entropic_h(1.5) - 1.0).epsilon(1e-15));
    CHECK_THROWS_AS(dsep_universal(-1.0), DomainError);
    double prev = 0.0;
    for (double r = 0.1; r < 5.0; r += 0.1) {
        CHECK(dsep_universal(r) > prev);
        prev = dsep_universal(r);
    }
}

TEST_CASE("discord at the threshold from trajectories") {
    CHECK_FALSE(dsep_from_trajectory(simulate_trajectory(kTwb, MarkovianChannel{0.1, 0.0}, 100.0, 11)).has_value());

    // Low temperature: c(t_sep) from the closed form.
    const double gm = 0.05, n = 0.1;
    const Trajectory cool = simulate_trajectory(kTwb, MarkovianChannel{gm, n}, 200.0, 11);
    const double lambda0 = min_symplectic(kTwb);
    const double t_sep = std::log((n + 0.5 - lambda0) / n) / gm;
    const double c_sep = kTwb.c * std::exp(-gm * t_sep);
    const auto d = dsep_from_trajectory(cool);
    REQUIRE(d);
    CHECK(*d == doctest::Approx(gaussian_discord(SymmetricCMd{0.5 + c_sep, c_sep})).epsilon(1e-12));
    CHECK(*d < dsep_universal(1.2));

    // Hot bath through the full coefficient grid.
    const Environment env{1.0, 0.1, 10.0};
    const auto grid = build_coefficient_grid(kOhmic, env, 10.0, QuadratureConfig{});
    const auto hot = dsep_from_trajectory(simulate_trajectory(kTwb, grid, EvolutionMode::NonMarkovian, 10.0, 1001));
    REQUIRE(hot);
    CHECK(std::abs(*hot - dsep_universal(1.2)) <= 0.01);

    const auto ht = dsep_from_trajectory(simulate_trajectory(kTwb, grid, EvolutionMode::HighTemperature, 10.0, 1001));
    REQUIRE(ht);
    CHECK(*ht == doctest::Approx(dsep_universal(1.2)).epsilon(1e-8));
}

TEST_CASE("Markovian sweeps") {
    SweepSettings s;
    s.spectra = {kOhmic};
    s.mode = EvolutionMode::Markovian;
    s.environment = Environment{1.0, 0.1, 0.0};
    const std::vector<double> r0{0.5, 1.2};

    const auto vacuum = dsep_sweep(r0, s);
    REQUIRE(vacuum.size() == 2);
    for (const auto& row : vacuum) {
        CHECK_FALSE(row.t_sep.has_value());
        CHECK_FALSE(row.d_sep.has_value());
        CHECK(row.error.empty());
    }

    for (double n : {1e-2, 1e-3}) {
        s.environment.n_thermal = n;
        const auto rows = dsep_sweep(r0, s);
        REQUIRE(rows.size() == 2);
        for (const auto& row : rows) {
            REQUIRE(row.d_sep);
            CHECK(*row.d_sep < dsep_universal(row.r0));
            CHECK(row.n_thermal == n);
            CHECK(row.mode == EvolutionMode::Markovian);
        }
    }
    CHECK_THROWS_AS(dsep_sweep({}, s), ConfigError);
}

TEST_CASE("sweep rows are spectrum-major and record failures") {
    SweepSettings s;
    s.spectra = {kOhmic, SpectralDensity{SpectrumKind::SuperOhmic, 1.0}};
    s.mode = EvolutionMode::HighTemperature;
    s.environment = Environment{1.0, 0.1, 10.0};
    s.t_max = 1.0;
    const auto rows = dsep_sweep({0.3, 0.4}, s);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].spectrum == "ohmic");
    CHECK(rows[1].r0 == 0.4);
    CHECK(rows[2].spectrum == "superohmic");
    // One time unit is too short to reach the threshold while lambda still rises.
    for (const auto& row : rows) CHECK(row.error.find("rising") != std::string::npos);
}

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string>

#include "gpaths/coefficients.hpp"
#include "gpaths/errors.hpp"
#include "oracle.hpp"

using namespace gpaths;

namespace {

const SpectralDensity kOhmic{SpectrumKind::Ohmic, 1.0};
const SpectralDensity kSuperOhmic{SpectrumKind::SuperOhmic, 1.0};
const Environment kHot{1.0, 0.1, 10.0};

double max_abs(const Eigen::VectorXd& v) { return v.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("coefficients vanish at t = 0") {
    QuadratureConfig q;
    for (const auto& spec : {kOhmic, kSuperOhmic, SpectralDensity{SpectrumKind::WhiteNoise, 1.0}}) {
        CHECK(delta_at(spec, kHot, 0.0, q) == 0.0);
        CHECK(gamma_at(spec, kHot, 0.0, q) == 0.0);
    }
    CHECK_THROWS_AS(delta_at(kOhmic, kHot, -1.0, q), DomainError);
}

TEST_CASE("Ohmic resonant coefficients match the double-trapezoid oracle") {
    QuadratureConfig q;
    const double wmax = q.resolved_omega_max(kOhmic, kHot);
    for (double t : {0.5, 2.0, 4.0}) {
        const auto c = coefficients_at(kOhmic, kHot, t, q);
        const auto [d, g] = oracle::coefficients(kOhmic, kHot, t, wmax, 0.002, 0.002);
        CAPTURE(t);
        CHECK(c.delta == doctest::Approx(d).epsilon(2e-3));
        CHECK(c.gamma == doctest::Approx(g).epsilon(2e-3));
    }
}

TEST_CASE("super-Ohmic coefficients match the oracle with the same tail taper") {
    QuadratureConfig q;
    const Environment env{1.0, 0.1, 1.0};
    const double wmax = q.resolved_omega_max(kSuperOhmic, env);
    for (double t : {0.7, 3.0}) {
        const auto c = coefficients_at(kSuperOhmic, env, t, q);
        const auto [d, g] = oracle::coefficients(kSuperOhmic, env, t, wmax, 0.002, 0.001);
        CAPTURE(t);
        CHECK(c.delta == doctest::Approx(d).epsilon(2e-3));
        CHECK(c.gamma == doctest::Approx(g).epsilon(2e-3));
    }
}

TEST_CASE("off-resonant Ohmic heating oscillates in sign at short times") {
    QuadratureConfig q;
    const Environment env{10.0, 0.1, 10.0};
    bool positive = false, negative = false;
    for (double t = 0.05; t < 3.0; t += 0.05) {
        const double d = delta_at(kOhmic, env, t, q);
        positive = positive || d > 0.0;
        negative = negative || d < 0.0;
    }
    CHECK(positive);
    CHECK(negative);
    const double wmax = q.resolved_omega_max(kOhmic, env);
    for (double t : {0.2, 0.5}) {
        const auto c = coefficients_at(kOhmic, env, t, q);
        const auto [d, g] = oracle::coefficients(kOhmic, env, t, wmax, 0.004, 0.0005);
        CAPTURE(t);
        CHECK(c.delta == doctest::Approx(d).epsilon(5e-3));
        CHECK(c.gamma == doctest::Approx(g).epsilon(5e-3));
    }
}

TEST_CASE("heating plateau is gamma_M (2 n_T + 1)") {
    QuadratureConfig q;
    const double gm = gamma_markov(kOhmic, kHot, q);
    CHECK(gm > 0.0);
    CHECK(delta_at(kOhmic, kHot, 45.0, q) == doctest::Approx(gm * 21.0).epsilon(0.02));
    CHECK(gamma_at(kOhmic, kHot, 45.0, q) == doctest::Approx(gm).epsilon(0.01));
}

TEST_CASE("coefficients scale as alpha squared") {
    QuadratureConfig q;
    Environment strong = kHot;
    strong.alpha = 0.2;
    for (double t : {0.3, 2.5, 11.0}) {
        const auto weak = coefficients_at(kSuperOhmic, kHot, t, q);
        const auto c = coefficients_at(kSuperOhmic, strong, t, q);
        CHECK(c.delta == doctest::Approx(4.0 * weak.delta).epsilon(1e-12));
        CHECK(c.gamma == doctest::Approx(4.0 * weak.gamma).epsilon(1e-12));
    }
}

TEST_CASE("damping is independent of temperature") {
    QuadratureConfig q;
    const Environment cold{1.0, 0.1, 0.0};
    for (double t : {0.4, 3.3, 17.0}) CHECK(gamma_at(kOhmic, cold, t, q) == gamma_at(kOhmic, kHot, t, q));
}

TEST_CASE("Markovian rate") {
    QuadratureConfig q;
    const auto p = gamma_markov_plateau(kOhmic, kHot, q);
    CHECK(p.relative_spread < 0.01);
    CHECK(p.window == doctest::Approx(50.0));

    Environment strong = kHot;
    strong.alpha = 0.2;
    CHECK(gamma_markov(kOhmic, strong, q) == doctest::Approx(4.0 * p.gamma_m).epsilon(1e-12));

    const auto wide = gamma_markov_plateau(kOhmic, kHot, q, 2.0);
    CHECK(wide.gamma_m == doctest::Approx(p.gamma_m).epsilon(0.01));

    // The plateau is the resonant weight (pi/2) alpha^2 j(omega0), which also
    // carries it towards zero as j(omega0) does.
    CHECK(p.gamma_m == doctest::Approx(gamma_markov_resonant_estimate(kOhmic, kHot)).epsilon(0.01));
    const SpectralDensity narrow{SpectrumKind::Ohmic, 0.2};
    CHECK(gamma_markov(narrow, kHot, q) == doctest::Approx(gamma_markov_resonant_estimate(narrow, kHot)).epsilon(0.02));
    CHECK(gamma_markov(kOhmic, Environment{1.0, 0.0, 10.0}, q) == 0.0);
}

TEST_CASE("closed-form Markovian coefficients") {
    auto [g0, d0] = markovian_coefficients(0.3, 10.0, 0.0);
    CHECK(g0 == 0.0);
    CHECK(d0 == 0.0);
    auto [g1, d1] = markovian_coefficients(1.0, 4.0, 50.0);
    CHECK(g1 == 50.0);
    CHECK(d1 == doctest::Approx(9.0).epsilon(1e-15));
    auto [g2, d2] = markovian_coefficients(1.0, 0.0, std::log(2.0));
    CHECK(g2 == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(d2 == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_THROWS_AS(markovian_coefficients(-1.0, 0.0, 1.0), DomainError);
}

TEST_CASE("zero coupling gives an all-zero grid") {
    QuadratureConfig q;
    const auto grid = build_coefficient_grid(kOhmic, Environment{1.0, 0.0, 10.0}, 2.0, q);
    CHECK(grid.size() == 201);
    CHECK(max_abs(grid.delta) == 0.0);
    CHECK(max_abs(grid.gamma) == 0.0);
    CHECK(max_abs(grid.big_gamma) == 0.0);
    CHECK(max_abs(grid.delta_gamma) == 0.0);
}

TEST_CASE("long Ohmic resonant grid") {
    QuadratureConfig q;
    const auto grid = build_coefficient_grid(kOhmic, kHot, 100.0, q);
    CHECK(grid.size() == 10001);
    CHECK(grid.t_max() == doctest::Approx(100.0));
    CHECK(grid.step() == doctest::Approx(0.01));
    CHECK_NOTHROW(grid.check_invariants());
    CHECK(grid.big_gamma_monotone());

    const double gm = gamma_markov(kOhmic, kHot, q);
    for (Eigen::Index i = 2000; i < grid.size(); i += 500) {
        const double closed = markovian_coefficients(gm, 10.0, grid.times[i]).second;
        CAPTURE(grid.times[i]);
        CHECK(grid.delta_gamma[i] == doctest::Approx(closed).epsilon(0.05));
    }
    for (Eigen::Index i = 3000; i < grid.size(); ++i) CHECK(grid.delta_gamma[i] > grid.delta_gamma[i - 1]);
    CHECK(grid.delta_gamma[grid.size() - 1] < 21.0);
}

TEST_CASE("grids converge under step halving") {
    QuadratureConfig q;
    q.s_step = 0.01;
    q.t_step = 0.02;
    QuadratureConfig fine = q;
    fine.s_step = 0.005;
    fine.t_step = 0.01;
    for (const auto& spec : {kOhmic, kSuperOhmic}) {
        const auto a = build_coefficient_grid(spec, kHot, 8.0, q);
        const auto b = build_coefficient_grid(spec, kHot, 8.0, fine);
        REQUIRE(b.size() == 2 * a.size() - 1);
        auto check = [&](const Eigen::VectorXd& x, const Eigen::VectorXd& y, const char* name) {
            double worst = 0.0;
            for (Eigen::Index i = 0; i < x.size(); ++i) worst = std::max(worst, std::abs(x[i] - y[2 * i]));
            CAPTURE(name);
            CHECK(worst <= q.rel_tol * max_abs(y));
        };
        check(a.delta, b.delta, "delta");
        check(a.gamma, b.gamma, "gamma");
        check(a.big_gamma, b.big_gamma, "big_gamma");
        check(a.delta_gamma, b.delta_gamma, "delta_gamma");
    }
}

TEST_CASE("grid does not depend on the worker count") {
    QuadratureConfig q;
    ::setenv("GAUSSIAN_PATHS_THREADS", "1", 1);
    const auto a = build_coefficient_grid(kSuperOhmic, kHot, 1.0, q);
    ::setenv("GAUSSIAN_PATHS_THREADS", "3", 1);
    const auto b = build_coefficient_grid(kSuperOhmic, kHot, 1.0, q);
    ::unsetenv("GAUSSIAN_PATHS_THREADS");
    CHECK(a.delta == b.delta);
    CHECK(a.delta_gamma == b.delta_gamma);
}

TEST_CASE("quadrature configuration errors") {
    QuadratureConfig q;
    q.t_step = 0.015;
    CHECK_THROWS_AS(build_coefficient_grid(kOhmic, kHot, 1.0, q), ConfigError);
    q = QuadratureConfig{};
    q.s_step = 0.05;
    q.t_step = 0.05;
    const Environment fast{10.0, 0.1, 1.0};
    CHECK_THROWS_AS(build_coefficient_grid(kOhmic, fast, 1.0, q), ConfigError);
    q = QuadratureConfig{};
    q.omega_max = 5.0;
    CHECK_THROWS_AS(q.validate(kOhmic, kHot), ConfigError);
    q = QuadratureConfig{};
    q.rel_tol = 0.0;
    CHECK_THROWS_AS(q.validate(kOhmic, kHot), ConfigError);
}

TEST_CASE("quadrature failure carries the achieved error") {
    QuadratureConfig q;
    q.rel_tol = 1e-12;
    q.abs_tol = 1e-30;
    q.max_intervals = 100;
    try {
        delta_at(kOhmic, kHot, 5.0, q);
        FAIL("expected a quadrature error");
    } catch (const QuadratureError& e) {
        CHECK(e.achieved_error() > e.requested_error());
        CHECK(std::string(e.what()).rfind("quadrature: Delta at t = 5", 0) == 0);
    }
}

TEST_CASE("coefficient CSV") {
    QuadratureConfig q;
    const auto grid = build_coefficient_grid(kOhmic, kHot, 0.5, q);
    std::ostringstream os;
    write_coefficient_csv(os, grid);
    std::istringstream in(os.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "t,delta,gamma,big_gamma,delta_gamma");
    Eigen::Index row = 0;
    while (std::getline(in, line)) {
        std::istringstream fields(line);
        std::string field;
        std::vector<double> values;
        while (std::getline(fields, field, ',')) values.push_back(std::strtod(field.c_str(), nullptr));
        REQUIRE(values.size() == 5);
        CHECK(values[0] == grid.times[row]);
        CHECK(values[1] == grid.delta[row]);
        CHECK(values[4] == grid.delta_gamma[row]);
        ++row;
    }
    CHECK(row == grid.size());
}

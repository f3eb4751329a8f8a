#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>

#include "gpaths/errors.hpp"
#include "gpaths/quadrature.hpp"

using namespace gpaths;

TEST_CASE("smooth integrals") {
    quad::Options opt;
    CHECK(quad::integrate_scalar([](double x) { return std::exp(x); }, 0.0, 1.0, opt) ==
          doctest::Approx(std::expm1(1.0)).epsilon(1e-13));
    CHECK(quad::integrate_scalar([](double x) { return 1.0 / (1.0 + x * x); }, 0.0, 50.0, opt) ==
          doctest::Approx(std::atan(50.0)).epsilon(1e-12));
}

TEST_CASE("oscillatory vector integral over breakpoints") {
    const double t = 40.0;
    std::array<double, 3> bp{0.0, 1.0, 5.0};
    auto f = [t](double w) {
        quad::Vec<double, 2> v;
        v[0] = std::cos(w * t);
        v[1] = w * std::sin(w * t);
        return v;
    };
    const auto r = quad::integrate<double, 2>(f, std::span<const double>(bp), quad::Options{});
    CHECK(r.value[0] == doctest::Approx(std::sin(5.0 * t) / t).epsilon(1e-10));
    const double expected = (std::sin(5.0 * t) - 5.0 * t * std::cos(5.0 * t)) / (t * t);
    CHECK(r.value[1] == doctest::Approx(expected).epsilon(1e-10));
    CHECK(r.error[0] <= 1e-9);
}

TEST_CASE("interval budget exhaustion is reported") {
    quad::Options opt;
    opt.max_intervals = 3;
    opt.rel_tol = 1e-15;
    opt.abs_tol = 1e-300;
    CHECK_THROWS_AS(quad::integrate_scalar([](double x) { return std::sin(1.0 / (x + 1e-3)); }, 0.0, 1.0, opt),
                    QuadratureError);
}

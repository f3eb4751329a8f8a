#pragma once

// Symmetric two-mode Gaussian states, sigma = a I4 + c (sigma_x (x) sigma_z),
// and their correlation measures. Everything is templated on the scalar type
// so the same formulas can be evaluated in extended precision.

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <string>

#include "gpaths/errors.hpp"

namespace gpaths {

inline constexpr double kPhysicalityTol = 1e-9;

template <typename Scalar>
struct SymmetricCM {
    Scalar a{0.5};
    Scalar c{0};

    /// Full 4x4 covariance matrix in (x1, p1, x2, p2) ordering.
    Eigen::Matrix<Scalar, 4, 4> matrix() const {
        Eigen::Matrix<Scalar, 4, 4> s = Eigen::Matrix<Scalar, 4, 4>::Identity() * a;
        s(0, 2) = s(2, 0) = c;
        s(1, 3) = s(3, 1) = -c;
        return s;
    }
};

using SymmetricCMd = SymmetricCM<double>;

/// Squeezed thermal state parameters: two-mode squeezing r applied to two
/// thermal states with nu_thermal photons each.
template <typename Scalar>
struct STSParams {
    Scalar r{0};
    Scalar nu_thermal{0};
};

using STSParamsd = STSParams<double>;

/// One sample of a dynamical path in (mu, lambda, D) space.
struct PathPoint {
    double t = 0.0;
    double mu = 1.0;
    double lambda = 0.5;
    double discord = 0.0;
};

/// (a - |c|)(a + |c|); its square root is the (doubly degenerate)
/// symplectic eigenvalue.
template <typename Scalar>
Scalar determinant_root(const SymmetricCM<Scalar>& cm) {
    using std::abs;
    return (cm.a - abs(cm.c)) * (cm.a + abs(cm.c));
}

/// Uncertainty relation sqrt(a^2 - c^2) >= 1/2 (with kPhysicalityTol slack).
template <typename Scalar>
bool is_physical(const SymmetricCM<Scalar>& cm, Scalar tol = Scalar(kPhysicalityTol)) {
    using std::sqrt;
    if (!(cm.a > Scalar(0))) return false;
    const Scalar s = determinant_root(cm);
    return s >= Scalar(0) && sqrt(s) >= Scalar(0.5) - tol;
}

template <typename Scalar>
void require_physical(const SymmetricCM<Scalar>& cm, const char* op) {
    if (!is_physical(cm))
        throw DomainError("gaussian_core", std::string(op) + ": covariance matrix violates the uncertainty relation");
}

template <typename Scalar>
SymmetricCM<Scalar> from_sts(const STSParams<Scalar>& p) {
    using std::cosh;
    using std::sinh;
    if (!(p.r >= Scalar(0)) || !(p.nu_thermal >= Scalar(0)))
        throw DomainError("gaussian_core", "from_sts requires r >= 0 and nu_T >= 0");
    const Scalar scale = p.nu_thermal + Scalar(0.5);
    return {scale * cosh(2 * p.r), scale * sinh(2 * p.r)};
}

template <typename Scalar>
STSParams<Scalar> to_sts(const SymmetricCM<Scalar>& cm) {
    using std::atanh;
    using std::sqrt;
    if (cm.c < Scalar(0)) throw DomainError("gaussian_core", "to_sts requires c >= 0");
    require_physical(cm, "to_sts");
    using std::max;
    const Scalar nu = sqrt(max(determinant_root(cm), Scalar(0.25))) - Scalar(0.5);
    return {atanh(cm.c / cm.a) / 2, max(nu, Scalar(0))};
}

/// Local mean photon number sinh^2(r)(2 nu_T + 1) + nu_T.
template <typename Scalar>
Scalar mean_photons(const STSParams<Scalar>& p) {
    using std::sinh;
    const Scalar s = sinh(p.r);
    return s * s * (2 * p.nu_thermal + 1) + p.nu_thermal;
}

/// mu = 1 / (4 sqrt(det sigma)) = 1 / (4 (a^2 - c^2)).
template <typename Scalar>
Scalar purity(const SymmetricCM<Scalar>& cm) {
    if (!(determinant_root(cm) > Scalar(0)))
        throw DomainError("gaussian_core", "purity: a^2 <= c^2");
    require_physical(cm, "purity");
    return Scalar(1) / (4 * determinant_root(cm));
}

/// Smallest symplectic eigenvalue of the partial transpose, a - |c|.
template <typename Scalar>
Scalar min_symplectic(const SymmetricCM<Scalar>& cm) {
    using std::abs;
    return cm.a - abs(cm.c);
}

template <typename Scalar>
Scalar log_negativity(const SymmetricCM<Scalar>& cm) {
    using std::log;
    using std::max;
    return max(Scalar(0), -log(2 * min_symplectic(cm)));
}

namespace detail {

template <typename Scalar>
Scalar clamp_half(Scalar x, const char* op) {
    if (x < Scalar(0.5) - Scalar(kPhysicalityTol))
        throw DomainError("gaussian_core", std::string(op) + ": argument below 1/2");
    return x < Scalar(0.5) ? Scalar(0.5) : x;
}

// q log(1 + d/q) - d, with the q -> 0 limit -d.
template <typename Scalar>
Scalar log1p_defect(Scalar q, Scalar d) {
    using std::abs;
    using std::log1p;
    if (q <= Scalar(0)) return -d;
    const Scalar x = d / q;
    if (abs(x) < Scalar(1e-3)) {
        // x^2 (-1/2 + x/3 - x^2/4 + x^3/5 - x^4/6)
        const Scalar poly = Scalar(-0.5) + x * (Scalar(1) / 3 + x * (Scalar(-0.25) + x * (Scalar(0.2) - x / 6)));
        return q * x * x * poly;
    }
    return q * log1p(x) - d;
}

// h(u) - h(v) for u = v + d >= v >= 1/2, accurate when d << v.
template <typename Scalar>
Scalar h_difference(Scalar v, Scalar d) {
    using std::log1p;
    if (d <= Scalar(0)) return Scalar(0);
    const Scalar u_minus_half = (v - Scalar(0.5)) + d;
    return d * log1p(Scalar(1) / u_minus_half) + log1p_defect(v + Scalar(0.5), d) -
           log1p_defect(v - Scalar(0.5), d);
}

}  // namespace detail

/// h(x) = (x + 1/2) ln(x + 1/2) - (x - 1/2) ln(x - 1/2), h(1/2) = 0.
template <typename Scalar>
Scalar entropic_h(Scalar x) {
    using std::log;
    using std::log1p;
    x = detail::clamp_half(x, "entropic_h");
    const Scalar lower = x - Scalar(0.5);
    if (lower < Scalar(1e-300)) return (x + Scalar(0.5)) * log(x + Scalar(0.5));
    if (x < Scalar(1)) return (x + Scalar(0.5)) * log(x + Scalar(0.5)) - lower * log(lower);
    // x ln((x + 1/2)/(x - 1/2)) + (1/2) ln(x^2 - 1/4): no large cancelling terms.
    return x * log1p(Scalar(1) / lower) + Scalar(0.5) * log(lower * (x + Scalar(0.5)));
}

/// Gaussian discord of a symmetric state,
/// D = h(a) - 2 h(sqrt(a^2 - c^2)) + h(a - 2c^2/(1 + 2a)), natural log.
///
/// Evaluated as [h(a) - h(nu)] - [h(nu) - h(y)] with both gaps formed
/// analytically, so D keeps full relative accuracy as c -> 0 and is exactly
/// zero at c = 0.
template <typename Scalar>
Scalar gaussian_discord(const SymmetricCM<Scalar>& cm) {
    using std::abs;
    using std::sqrt;
    require_physical(cm, "gaussian_discord");
    const Scalar a = cm.a;
    const Scalar c2 = cm.c * cm.c;
    Scalar s = determinant_root(cm);
    // Rounding a and c leaves (a - |c|)(a + |c|) uncertain by about
    // eps a (a + |c|); inside that band the state is pure.
    const Scalar band = 4 * std::numeric_limits<Scalar>::epsilon() * a * (a + abs(cm.c));
    if (abs(s - Scalar(0.25)) <= band) s = Scalar(0.25);
    const Scalar nu = detail::clamp_half(sqrt(s), "gaussian_discord");
    // a - nu and nu - y, with y = a - 2c^2/(1 + 2a), in closed form.
    const Scalar gap_a = c2 / (a + nu);
    const Scalar two_nu_minus_one = (4 * s - 1) / (2 * nu + 1);
    const Scalar gap_y = c2 * (two_nu_minus_one > Scalar(0) ? two_nu_minus_one : Scalar(0)) / ((1 + 2 * a) * (a + nu));
    const Scalar y = nu - gap_y < Scalar(0.5) ? Scalar(0.5) : nu - gap_y;
    return detail::h_difference(nu, gap_a) - detail::h_difference(y, gap_y);
}

/// Inverse of (a, c) -> (mu, lambda): a + c = 1/(4 mu lambda), a - c = lambda.
template <typename Scalar>
SymmetricCM<Scalar> cm_from_purity_lambda(Scalar mu, Scalar lambda) {
    const Scalar v = Scalar(1) / (4 * mu * lambda);
    return {(v + lambda) / 2, (v - lambda) / 2};
}

template <typename Scalar>
PathPoint path_point(const SymmetricCM<Scalar>& cm, double t) {
    return {t, static_cast<double>(purity(cm)), static_cast<double>(min_symplectic(cm)),
            static_cast<double>(gaussian_discord(cm))};
}

}  // namespace gpaths

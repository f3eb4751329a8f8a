#pragma once

// Globally adaptive Gauss-Kronrod (7/15) quadrature for vector-valued
// integrands. The caller supplies the initial panel breakpoints, which is how
// oscillation-aware panelling is expressed; the integrator then bisects the
// panel with the worst weighted error until every component meets
// max(abs_tol, rel_tol * |I_k|).

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <queue>
#include <span>
#include <sstream>
#include <vector>

#include "gpaths/errors.hpp"

namespace gpaths::quad {

template <typename Scalar, int N>
using Vec = Eigen::Matrix<Scalar, N, 1>;

template <typename Scalar, int N>
struct Result {
    Vec<Scalar, N> value = Vec<Scalar, N>::Zero();
    Vec<Scalar, N> error = Vec<Scalar, N>::Zero();
    int evaluations = 0;
    int intervals = 0;
};

struct Options {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_intervals = 200000;
};

namespace detail {

// Kronrod abscissae on [-1, 1]; odd indices are the 7-point Gauss nodes.
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename Scalar, int N>
struct Panel {
    Scalar lo, hi;
    Vec<Scalar, N> value, error;
    Scalar badness;  // max_k error_k / scale_k
    bool operator<(const Panel& other) const { return badness < other.badness; }
};

template <typename Scalar, int N, typename F>
void gk15(F& f, Scalar lo, Scalar hi, Vec<Scalar, N>& value, Vec<Scalar, N>& error) {
    const Scalar center = (lo + hi) / 2;
    const Scalar half = (hi - lo) / 2;
    const Vec<Scalar, N> fc = f(center);
    Vec<Scalar, N> kronrod = fc * Scalar(kWgk[7]);
    Vec<Scalar, N> gauss = fc * Scalar(kWg[3]);
    for (int j = 0; j < 7; ++j) {
        const Scalar dx = half * Scalar(kXgk[j]);
        const Vec<Scalar, N> f1 = f(center - dx);
        const Vec<Scalar, N> f2 = f(center + dx);
        kronrod += (f1 + f2) * Scalar(kWgk[j]);
        if (j % 2 == 1) gauss += (f1 + f2) * Scalar(kWg[j / 2]);
    }
    value = kronrod * half;
    error = ((kronrod - gauss) * half).cwiseAbs();
}

}  // namespace detail

/// Integrates f over [breakpoints.front(), breakpoints.back()] starting from
/// the supplied panels. Throws QuadratureError carrying the achieved error
/// estimate when max_intervals is exhausted.
template <typename Scalar, int N, typename F>
Result<Scalar, N> integrate(F&& f, std::span<const Scalar> breakpoints, const Options& opt) {
    using P = detail::Panel<Scalar, N>;
    Result<Scalar, N> res;
    if (breakpoints.size() < 2) return res;

    std::vector<P> initial;
    initial.reserve(breakpoints.size() - 1);
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        if (!(breakpoints[i + 1] > breakpoints[i])) continue;
        P p{breakpoints[i], breakpoints[i + 1], {}, {}, 0};
        detail::gk15<Scalar, N>(f, p.lo, p.hi, p.value, p.error);
        res.value += p.value;
        res.error += p.error;
        initial.push_back(p);
    }
    res.evaluations = 15 * static_cast<int>(initial.size());

    // Error weights are frozen from the first pass so that the heap order
    // stays consistent during refinement.
    Vec<Scalar, N> scale;
    for (int k = 0; k < res.value.size(); ++k)
        scale[k] = std::max(Scalar(opt.abs_tol), Scalar(opt.rel_tol) * std::abs(res.value[k]));

    auto badness = [&](const Vec<Scalar, N>& err) { return err.cwiseQuotient(scale).maxCoeff(); };
    auto converged = [&]() {
        for (int k = 0; k < res.value.size(); ++k) {
            const Scalar tol = std::max(Scalar(opt.abs_tol), Scalar(opt.rel_tol) * std::abs(res.value[k]));
            if (res.error[k] > tol) return false;
        }
        return true;
    };

    std::priority_queue<P> heap;
    for (auto& p : initial) {
        p.badness = badness(p.error);
        heap.push(p);
    }

    int intervals = static_cast<int>(initial.size());
    while (!converged()) {
        if (intervals >= opt.max_intervals || heap.empty()) {
            std::ostringstream msg;
            msg << "tolerance not met after " << intervals << " intervals; achieved error "
                << res.error.maxCoeff() << " for |I| = " << res.value.cwiseAbs().maxCoeff();
            throw QuadratureError(msg.str(), static_cast<double>(res.error.maxCoeff()),
                                  std::max(opt.abs_tol, opt.rel_tol * static_cast<double>(res.value.cwiseAbs().maxCoeff())));
        }
        P worst = heap.top();
        heap.pop();
        const Scalar mid = (worst.lo + worst.hi) / 2;
        if (!(mid > worst.lo && mid < worst.hi)) {
            // Panel cannot be split further in this precision; accept it as is.
            continue;
        }
        P left{worst.lo, mid, {}, {}, 0};
        P right{mid, worst.hi, {}, {}, 0};
        detail::gk15<Scalar, N>(f, left.lo, left.hi, left.value, left.error);
        detail::gk15<Scalar, N>(f, right.lo, right.hi, right.value, right.error);
        res.value += left.value + right.value - worst.value;
        res.error += left.error + right.error - worst.error;
        left.badness = badness(left.error);
        right.badness = badness(right.error);
        heap.push(left);
        heap.push(right);
        res.evaluations += 30;
        ++intervals;
    }

    // Recompute the totals from scratch to shed the drift of the running sums.
    res.value.setZero();
    res.error.setZero();
    while (!heap.empty()) {
        res.value += heap.top().value;
        res.error += heap.top().error;
        heap.pop();
    }
    res.intervals = intervals;
    return res;
}

/// Scalar convenience overload.
template <typename F>
double integrate_scalar(F&& f, double lo, double hi, const Options& opt) {
    const double bp[2] = {lo, hi};
    auto vf = [&](double x) { return Vec<double, 1>(f(x)); };
    return integrate<double, 1>(vf, std::span<const double>(bp, 2), opt).value[0];
}

}  // namespace gpaths::quad

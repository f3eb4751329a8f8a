#pragma once

#include <algorithm>
#include <cmath>
#include <span>

namespace gpaths {

/// Cubic Hermite interpolant on [x0, x1] with end values and slopes.
inline double hermite(double x0, double x1, double f0, double f1, double d0, double d1, double x) {
    const double h = x1 - x0;
    const double s = (x - x0) / h;
    const double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * f0 + (s3 - 2 * s2 + s) * h * d0 + (-2 * s3 + 3 * s2) * f1 +
           (s3 - s2) * h * d1;
}

/// Fritsch-Carlson (PCHIP) slope at node i of the samples (x, y).
inline double pchip_slope(std::span<const double> x, std::span<const double> y, std::size_t i) {
    const std::size_t n = x.size();
    if (n < 2) return 0.0;
    auto secant = [&](std::size_t k) { return (y[k + 1] - y[k]) / (x[k + 1] - x[k]); };
    if (n == 2) return secant(0);
    if (i == 0 || i == n - 1) {
        // Non-centred three-point end formula, limited to keep monotonicity.
        const std::size_t k = i == 0 ? 0 : n - 2;
        const std::size_t k2 = i == 0 ? 1 : n - 3;
        const double h0 = x[k + 1] - x[k], h1 = x[k2 + 1] - x[k2];
        const double d0 = secant(k), d1 = secant(k2);
        double d = ((2 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if (d * d0 <= 0.0) d = 0.0;
        else if (d0 * d1 <= 0.0 && std::abs(d) > std::abs(3 * d0)) d = 3 * d0;
        return d;
    }
    const double dl = secant(i - 1), dr = secant(i);
    if (dl * dr <= 0.0) return 0.0;
    const double hl = x[i] - x[i - 1], hr = x[i + 1] - x[i];
    const double w1 = 2 * hr + hl, w2 = hr + 2 * hl;
    return (w1 + w2) / (w1 / dl + w2 / dr);
}

/// Monotone cubic interpolation of (x, y) at xq, restricted to the interval
/// [x[i], x[i+1]] that brackets it.
inline double pchip_eval(std::span<const double> x, std::span<const double> y, std::size_t i, double xq) {
    return hermite(x[i], x[i + 1], y[i], y[i + 1], pchip_slope(x, y, i), pchip_slope(x, y, i + 1), xq);
}

/// Index i with x[i] <= xq <= x[i+1] for increasing x (clamped to the ends).
inline std::size_t bracket(std::span<const double> x, double xq) {
    if (x.size() < 2) return 0;
    auto it = std::upper_bound(x.begin(), x.end(), xq);
    std::size_t i = static_cast<std::size_t>(std::distance(x.begin(), it));
    if (i == 0) return 0;
    return std::min(i - 1, x.size() - 2);
}

}  // namespace gpaths

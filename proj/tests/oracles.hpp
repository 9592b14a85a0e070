#pragma once

// Independent reference computations for the unit tests. Nothing here may
// call into the library code path it is used to check.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>

namespace oracle {

// Smallest zero-based i with u < cumulative[i], by linear scan.
inline std::size_t linear_select(std::span<const double> cumulative, double u) {
    for (std::size_t i = 0; i < cumulative.size(); ++i)
        if (u < cumulative[i]) return i;
    return cumulative.size() - 1;
}

// Composite Simpson rule on a fixed grid of 2m panels.
template <class F>
double simpson(F&& f, double lo, double hi, std::size_t m = 20000) {
    const std::size_t n = 2 * m;
    const double h = (hi - lo) / static_cast<double>(n);
    double s = f(lo) + f(hi);
    for (std::size_t i = 1; i < n; ++i) s += f(lo + h * static_cast<double>(i)) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

// (2/pi) asin(sqrt(x)) written out directly.
inline double arcsine_cdf(double x) { return 2.0 / std::numbers::pi * std::asin(std::sqrt(x)); }

inline double half_normal(double x) { return std::sqrt(2.0 / std::numbers::pi) * std::exp(-0.5 * x * x); }

// Equal-area Ziggurat for the half-normal: bisection on r over a fixed 200
// iterations, the top layer forced to close at f(0).
inline double half_normal_ziggurat_r(std::size_t layers) {
    const double top = half_normal(0.0);
    auto residual = [&](double r) {
        const double v = r * half_normal(r) + std::erfc(r / std::sqrt(2.0));
        double x = r;
        for (std::size_t i = layers - 1; i >= 2; --i) {
            const double y = half_normal(x) + v / x;
            if (y >= top) return 1.0;
            x = std::sqrt(-2.0 * std::log(y / top));
        }
        return half_normal(x) + v / x - top;
    };
    double lo = 0.01, hi = 20.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (residual(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

inline double binomial_sigma(double p, double n) { return std::sqrt(p * (1.0 - p) / n); }

}  // namespace oracle

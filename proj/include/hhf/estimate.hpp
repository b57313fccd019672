#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

namespace hhf {

/// A computed real together with a bound on its absolute error. Arithmetic
/// propagates the bound conservatively (first order plus the cross term), so
/// the error of a derived quantity never undercounts its inputs.
struct Estimate {
    double value = 0.0;
    double error = 0.0;

    constexpr Estimate() = default;
    constexpr Estimate(double v, double e = 0.0) : value(v), error(e) {}
};

/// A value computed by a short closed-form evaluation (a few elementary
/// operations), carrying a rounding allowance of `ulps` units in the last place.
inline Estimate rounded(double v, double ulps = 8.0) {
    return {v, ulps * std::numeric_limits<double>::epsilon() * std::abs(v)};
}

inline Estimate operator+(Estimate x, Estimate y) { return {x.value + y.value, x.error + y.error}; }
inline Estimate operator-(Estimate x, Estimate y) { return {x.value - y.value, x.error + y.error}; }
inline Estimate operator-(Estimate x) { return {-x.value, x.error}; }

inline Estimate operator*(Estimate x, Estimate y) {
    return {x.value * y.value,
            std::abs(x.value) * y.error + std::abs(y.value) * x.error + x.error * y.error};
}

inline Estimate operator*(double s, Estimate x) { return {s * x.value, std::abs(s) * x.error}; }
inline Estimate operator*(Estimate x, double s) { return s * x; }
inline Estimate operator/(Estimate x, double s) { return {x.value / s, x.error / std::abs(s)}; }

inline Estimate abs(Estimate x) { return {std::abs(x.value), x.error}; }

/// x^p for x >= 0. The error is the larger excursion of t^p over
/// [x - err, x + err] (clamped at 0), which stays valid for p < 1 near zero.
inline Estimate pow(Estimate x, double p) {
    const double v = std::pow(x.value, p);
    const double lo = std::pow(std::max(0.0, x.value - x.error), p);
    const double hi = std::pow(x.value + x.error, p);
    return {v, std::max(std::abs(hi - v), std::abs(v - lo))};
}

} // namespace hhf

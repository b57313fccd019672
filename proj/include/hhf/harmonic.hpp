#pragma once

/**
 * @file harmonic.hpp
 * @brief The positive interval [a,b], its harmonic mean, the paths L and U,
 *        harmonic reflection, and the power-difference bound
 *        |a^θ - b^θ| <= (b-a)^θ.
 *
 * Everything harmonic lives in the reciprocal variable u = 1/x. In it the
 * harmonic mean H = 2ab/(a+b) is the midpoint of [1/b, 1/a], reflection
 * x -> 1/(1/a + 1/b - 1/x) is the mirror about that midpoint, and the paths
 *
 *     1/L(t) = (1-t)/a + t/H        L(0) = a, L(1) = H
 *     1/U(t) = (1-t)/b + t/H        U(0) = b, U(1) = H
 *
 * are straight segments, mirror images of each other.
 */

#include "hhf/errors.hpp"

#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace hhf {

using Fn = std::function<double(double)>;

/// A closed interval [a,b] with 0 < a < b.
class Interval {
public:
    Interval(double a, double b) : a_(a), b_(b) {
        if (!(std::isfinite(a) && std::isfinite(b)) || !(a > 0.0) || !(a < b))
            throw InvalidArgument("interval requires 0 < a < b (got a=" + std::to_string(a) +
                                  ", b=" + std::to_string(b) + ")");
    }

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }

    /// True when x is inside up to a few ulps of slack at either end.
    bool contains(double x) const noexcept {
        constexpr double slack = 1e-12;
        return x >= a_ * (1.0 - slack) && x <= b_ * (1.0 + slack);
    }

private:
    double a_;
    double b_;
};

/// 2ab/(a+b) without the a<b requirement, so the degenerate a=b case can be probed.
inline double harmonic_mean(double a, double b) { return 2.0 * a * b / (a + b); }
inline double harmonic_mean(const Interval& iv) { return harmonic_mean(iv.a(), iv.b()); }

/// How the path parameter runs. `forward` starts L at a and U at b; `printed`
/// is the literal aH/(tH+(1-t)a), which starts both paths at H.
enum class PathConvention { forward, printed };

struct HarmonicFrame {
    Interval interval;
    double H;

    explicit HarmonicFrame(const Interval& iv) : interval(iv), H(harmonic_mean(iv)) {}

    double a() const noexcept { return interval.a(); }
    double b() const noexcept { return interval.b(); }
};

namespace detail {
inline void require_unit(double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw InvalidArgument("path parameter t must lie in [0,1]");
}
} // namespace detail

inline double map_L(double t, const HarmonicFrame& fr) {
    detail::require_unit(t);
    return fr.a() * fr.H / (t * fr.a() + (1.0 - t) * fr.H);
}

inline double map_U(double t, const HarmonicFrame& fr) {
    detail::require_unit(t);
    return fr.b() * fr.H / (t * fr.b() + (1.0 - t) * fr.H);
}

inline double map_L(double t, const HarmonicFrame& fr, PathConvention c) {
    return map_L(c == PathConvention::forward ? t : 1.0 - t, fr);
}

inline double map_U(double t, const HarmonicFrame& fr, PathConvention c) {
    return map_U(c == PathConvention::forward ? t : 1.0 - t, fr);
}

inline double harmonic_reflect(double x, const Interval& iv) {
    if (!iv.contains(x)) throw InvalidArgument("reflection point must lie in [a,b]");
    return 1.0 / (1.0 / iv.a() + 1.0 / iv.b() - 1.0 / x);
}

/// x -> (g(x) + g(reflect(x)))/2, harmonically symmetric by construction.
inline Fn symmetrize(Fn g, const Interval& iv) {
    return [g = std::move(g), iv](double x) { return 0.5 * (g(x) + g(harmonic_reflect(x, iv))); };
}

/// n points uniform in 1/x from a to b. Node i and node n-1-i are reflections
/// of each other; the endpoints are exact.
inline std::vector<double> harmonic_grid(const Interval& iv, std::size_t n) {
    if (n < 2) throw InvalidArgument("harmonic grid needs at least 2 points");
    std::vector<double> xs(n);
    const double ua = 1.0 / iv.a();
    const double step = (ua - 1.0 / iv.b()) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) xs[i] = 1.0 / (ua - static_cast<double>(i) * step);
    xs.front() = iv.a();
    xs.back() = iv.b();
    return xs;
}

struct SymmetryReport {
    double max_deviation = 0.0;
    double witness = 0.0;  // x of the worst pair (the smaller member)
    std::size_t grid = 0;
    double tolerance = 1e-10;

    bool passed() const noexcept { return max_deviation <= tolerance; }
};

inline SymmetryReport check_harmonic_symmetry(const Fn& g, const Interval& iv, std::size_t n = 201,
                                              double tolerance = 1e-10) {
    if (n < 3) throw InvalidArgument("symmetry grid needs at least 3 points");
    const auto xs = harmonic_grid(iv, n);
    SymmetryReport rep;
    rep.grid = n;
    rep.tolerance = tolerance;
    rep.witness = xs.front();
    for (std::size_t i = 0; i < n / 2; ++i) {
        const double dev = std::abs(g(xs[i]) - g(xs[n - 1 - i]));
        if (dev > rep.max_deviation) {
            rep.max_deviation = dev;
            rep.witness = xs[i];
        }
    }
    return rep;
}

/// (|a^θ - b^θ|, (b-a)^θ) for 0 < θ <= 1 and 0 < a <= b.
inline std::pair<double, double> lemma1_sides(double a, double b, double theta) {
    if (!(theta > 0.0 && theta <= 1.0)) throw InvalidArgument("theta must lie in (0,1]");
    if (!(a > 0.0 && a <= b) || !std::isfinite(b)) throw InvalidArgument("need 0 < a <= b");
    return {std::abs(std::pow(a, theta) - std::pow(b, theta)), std::pow(b - a, theta)};
}

} // namespace hhf

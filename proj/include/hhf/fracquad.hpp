#pragma once

/**
 * @file fracquad.hpp
 * @brief Adaptive Gauss-Kronrod quadrature, the gamma function, and the
 *        Riemann-Liouville fractional integrals
 *
 *     J_{a+}^α f(x) = 1/Γ(α) ∫_a^x (x-t)^(α-1) f(t) dt,   x > a
 *     J_{b-}^α f(x) = 1/Γ(α) ∫_x^b (t-x)^(α-1) f(t) dt,   x < b
 *
 * (published under the name "Hadamard fractional integrals" in some of the
 * harmonic-convexity literature, though the kernels are the Riemann-Liouville
 * ones implemented here).
 *
 * For α < 1 the kernel singularity is removed exactly by u = (distance to the
 * singular endpoint)^α, which turns w(t) dt into du/α.
 */

#include "hhf/errors.hpp"
#include "hhf/estimate.hpp"
#include "hhf/harmonic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace hhf {

struct Tolerance {
    double abs = 1e-10;
    double rel = 1e-8;
    std::size_t max_evaluations = 1'000'000;
};

struct QuadResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    std::size_t evaluations = 0;

    Estimate estimate() const { return {value, abs_error_estimate}; }
};

/// Order α of a fractional integral, validated to (0, 50].
class FracOrder {
public:
    static constexpr double max_order = 50.0;

    explicit FracOrder(double alpha) : alpha_(alpha) {
        if (!(alpha > 0.0) || !(alpha <= max_order))
            throw InvalidArgument("fractional order must lie in (0, 50]");
    }

    double value() const noexcept { return alpha_; }

private:
    double alpha_;
};

inline double gamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw InvalidArgument("gamma requires x > 0");
    const double g = std::tgamma(x);
    if (!std::isfinite(g)) throw NumericalFailure("gamma overflow");
    return g;
}

namespace detail {

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
inline constexpr std::array<double, 11> gk21_nodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};

inline constexpr std::array<double, 11> gk21_kronrod_weights = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

// Gauss weights for the odd-indexed nodes above.
inline constexpr std::array<double, 5> gk21_gauss_weights = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment {
    double lo;
    double hi;
    double value;
    double error;
};

template <class F>
double sample(F& f, double x) {
    const double y = f(x);
    if (!std::isfinite(y)) throw DomainError("integrand is not finite at x=" + std::to_string(x));
    return y;
}

template <class F>
Segment gk21(F& f, double lo, double hi) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double fc = sample(f, center);
    double kronrod = fc * gk21_kronrod_weights[10];
    double resabs = std::abs(kronrod);
    double gauss = 0.0;
    std::array<double, 10> f1{}, f2{};
    for (std::size_t j = 0; j < 10; ++j) {
        const double dx = half * gk21_nodes[j];
        f1[j] = sample(f, center - dx);
        f2[j] = sample(f, center + dx);
        const double pair = f1[j] + f2[j];
        kronrod += gk21_kronrod_weights[j] * pair;
        resabs += gk21_kronrod_weights[j] * (std::abs(f1[j]) + std::abs(f2[j]));
        if (j % 2 == 1) gauss += gk21_gauss_weights[j / 2] * pair;
    }
    const double mean = 0.5 * kronrod;
    double resasc = gk21_kronrod_weights[10] * std::abs(fc - mean);
    for (std::size_t j = 0; j < 10; ++j)
        resasc += gk21_kronrod_weights[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));

    const double width = std::abs(half);
    const double value = kronrod * half;
    resabs *= width;
    resasc *= width;
    double err = std::abs((kronrod - gauss) * half);
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    constexpr double eps = std::numeric_limits<double>::epsilon();
    constexpr double tiny = std::numeric_limits<double>::min();
    if (resabs > tiny / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
    return {lo, hi, value, err};
}

// Max-heap on error; among equal errors the leftmost segment wins.
struct WorseFirst {
    bool operator()(const Segment& x, const Segment& y) const {
        if (x.error != y.error) return x.error < y.error;
        return x.lo > y.lo;
    }
};

inline double ordered_total(std::vector<Segment> segs, double Segment::*field) {
    std::sort(segs.begin(), segs.end(), [](const Segment& x, const Segment& y) { return x.lo < y.lo; });
    double s = 0.0;
    for (const auto& seg : segs) s += seg.*field;
    return s;
}

} // namespace detail

/// Adaptive bisection with the 21-point Gauss-Kronrod pair. Endpoints are
/// never sampled, so integrable endpoint singularities are allowed.
/// Throws NumericalFailure when the tolerance is not met within the budget.
template <class F>
QuadResult integrate(F&& f, double lo, double hi, const Tolerance& tol = {}) {
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
        throw InvalidArgument("integrate requires finite lo < hi");
    constexpr std::size_t per_rule = 21;

    std::vector<detail::Segment> heap{detail::gk21(f, lo, hi)};
    std::vector<detail::Segment> frozen;  // too narrow to split further
    std::size_t evaluations = per_rule;
    double value = heap.front().value;
    double error = heap.front().error;
    const detail::WorseFirst order;

    for (;;) {
        if (error <= std::max(tol.abs, tol.rel * std::abs(value))) {
            std::vector<detail::Segment> all(heap);
            all.insert(all.end(), frozen.begin(), frozen.end());
            value = detail::ordered_total(all, &detail::Segment::value);
            error = detail::ordered_total(all, &detail::Segment::error);
            if (error <= std::max(tol.abs, tol.rel * std::abs(value)))
                return {value, error, evaluations};
        }
        if (heap.empty())
            throw NumericalFailure("quadrature stalled at roundoff level before reaching tolerance");
        if (evaluations + 2 * per_rule > tol.max_evaluations)
            throw NumericalFailure("quadrature exceeded its evaluation budget of " +
                                   std::to_string(tol.max_evaluations));

        std::pop_heap(heap.begin(), heap.end(), order);
        const detail::Segment worst = heap.back();
        heap.pop_back();

        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(mid > worst.lo && mid < worst.hi) ||
            worst.hi - worst.lo < 64.0 * std::numeric_limits<double>::epsilon() *
                                      std::max(std::abs(worst.lo), std::abs(worst.hi))) {
            frozen.push_back(worst);
            continue;
        }
        const detail::Segment left = detail::gk21(f, worst.lo, mid);
        const detail::Segment right = detail::gk21(f, mid, worst.hi);
        evaluations += 2 * per_rule;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        for (const auto& s : {left, right}) {
            heap.push_back(s);
            std::push_heap(heap.begin(), heap.end(), order);
        }
    }
}

enum class SingularEnd { lo, hi };

/// ∫ w(t) f(t) dt over [lo,hi] with w(t) = (t-lo)^(α-1) or (hi-t)^(α-1)
/// depending on which endpoint carries the kernel singularity.
template <class F>
QuadResult integrate_kernel_pow(F&& f, double lo, double hi, FracOrder order, SingularEnd at,
                                const Tolerance& tol = {}) {
    const double alpha = order.value();
    if (alpha == 1.0) return integrate(f, lo, hi, tol);
    if (alpha > 1.0) {
        auto weighted = [&](double t) {
            const double dist = at == SingularEnd::lo ? t - lo : hi - t;
            return std::pow(dist, alpha - 1.0) * f(t);
        };
        return integrate(weighted, lo, hi, tol);
    }
    const double inv = 1.0 / alpha;
    auto substituted = [&](double u) {
        const double dist = std::pow(u, inv);
        return f(at == SingularEnd::lo ? lo + dist : hi - dist);
    };
    Tolerance scaled = tol;
    scaled.abs = tol.abs * alpha;
    QuadResult r = integrate(substituted, 0.0, std::pow(hi - lo, alpha), scaled);
    r.value *= inv;
    r.abs_error_estimate *= inv;
    return r;
}

/// J_{a+}^α f(x).
template <class F>
QuadResult frac_left(F&& f, double a, FracOrder order, double x, const Tolerance& tol = {}) {
    if (!(a >= 0.0) || !(x > a)) throw InvalidArgument("left fractional integral requires x > a >= 0");
    const double g = gamma(order.value());
    Tolerance scaled = tol;
    scaled.abs = tol.abs * g;
    QuadResult r = integrate_kernel_pow(f, a, x, order, SingularEnd::hi, scaled);
    r.value /= g;
    r.abs_error_estimate /= g;
    return r;
}

/// J_{b-}^α f(x).
template <class F>
QuadResult frac_right(F&& f, double b, FracOrder order, double x, const Tolerance& tol = {}) {
    if (!(x < b) || !(x >= 0.0)) throw InvalidArgument("right fractional integral requires 0 <= x < b");
    const double g = gamma(order.value());
    Tolerance scaled = tol;
    scaled.abs = tol.abs * g;
    QuadResult r = integrate_kernel_pow(f, x, b, order, SingularEnd::lo, scaled);
    r.value /= g;
    r.abs_error_estimate /= g;
    return r;
}

/// The pair J_{1/a-}^α (f∘h)(1/b) and J_{1/b+}^α (f∘h)(1/a), h(x) = 1/x.
struct FracPair {
    QuadResult from_upper;  // J_{1/a-}^α (f∘h)(1/b)
    QuadResult from_lower;  // J_{1/b+}^α (f∘h)(1/a)

    Estimate sum() const { return from_upper.estimate() + from_lower.estimate(); }
};

template <class F>
FracPair frac_pair_on_reciprocal(F&& f, const Interval& iv, FracOrder order, const Tolerance& tol = {}) {
    auto on_reciprocal = [&](double u) { return f(1.0 / u); };
    const double lo = 1.0 / iv.b();
    const double hi = 1.0 / iv.a();
    return {frac_right(on_reciprocal, hi, order, lo, tol), frac_left(on_reciprocal, lo, order, hi, tol)};
}

} // namespace hhf

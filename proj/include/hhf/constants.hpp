#pragma once

/**
 * @file constants.hpp
 * @brief The coefficient families (ζ, C(α), C(α,q)) that multiply
 *        |f'(a)|, |f'(H)| and |f'(b)| in the error bounds.
 *
 * Each constant is a nonnegative integral over the path parameter t ∈ [0,1].
 *
 * Two modes exist. `consistent` (the default) uses the forward paths
 * (L(0)=a, U(0)=b) and kernels re-derived so every constant matches the
 * convexity weights it is paired with:
 *
 *     window kernel   k(t) = (2-t)^α - t^α        (vanishes at t = 1)
 *     C(α)            (1-t) k L²,  t k (L²+U²),  (1-t) k U²
 *     C(α) small α    (1-t)^(α+1) L²,  t (1-t)^α (L²+U²),  (1-t)^(α+1) U²
 *     C(α,q)          k (1-t) L^2q,  k t (L^2q+U^2q),  k (1-t) U^2q
 *
 * `strict_paper` evaluates the formulas exactly as typeset: the literal
 * paths aH/(tH+(1-t)a) (which start at H), the kernel (1+t)^α - (1-t)^α,
 * and C3(α) duplicating C1(α). Under that reading several of the published
 * bounds admit counterexamples; the mode exists so they can be reproduced.
 *
 * The ζ and C(α,q) families coincide numerically between the modes up to
 * the reparametrization t -> 1-t (C(α,q) exactly, ζ only through the paths).
 */

#include "hhf/errors.hpp"
#include "hhf/estimate.hpp"
#include "hhf/fracquad.hpp"
#include "hhf/harmonic.hpp"

#include <array>
#include <cmath>
#include <string>

namespace hhf {

enum class ConstantsMode { consistent, strict_paper };

enum class ConstantFamily { zeta, c_alpha_exact, c_alpha_small, c_alpha_q };

inline const char* to_string(ConstantFamily f) {
    switch (f) {
    case ConstantFamily::zeta: return "zeta";
    case ConstantFamily::c_alpha_exact: return "C_alpha_exact";
    case ConstantFamily::c_alpha_small: return "C_alpha_smallalpha";
    case ConstantFamily::c_alpha_q: return "C_alpha_q";
    }
    return "?";
}

inline PathConvention path_convention(ConstantsMode m) {
    return m == ConstantsMode::consistent ? PathConvention::forward : PathConvention::printed;
}

struct BoundConstants {
    std::array<Estimate, 3> c{};
    ConstantFamily family = ConstantFamily::zeta;
    ConstantsMode mode = ConstantsMode::consistent;
    double alpha = 0.0;  // 0 when not applicable
    double q = 0.0;      // 0 when not applicable

    double c1() const { return c[0].value; }
    double c2() const { return c[1].value; }
    double c3() const { return c[2].value; }

    double error_budget() const { return c[0].error + c[1].error + c[2].error; }
};

namespace detail {

template <class F>
Estimate quad(F&& f, double lo, double hi, const Tolerance& tol) {
    return integrate(f, lo, hi, tol).estimate();
}

inline double window_kernel(double t, double alpha, ConstantsMode m) {
    if (m == ConstantsMode::consistent) return std::pow(2.0 - t, alpha) - std::pow(t, alpha);
    return std::pow(1.0 + t, alpha) - std::pow(1.0 - t, alpha);
}

} // namespace detail

/// The window kernel integrated over [0,1]: (2^(α+1) - 2)/(α+1) in either mode.
inline double window_kernel_mass(double alpha) { return (std::pow(2.0, alpha + 1.0) - 2.0) / (alpha + 1.0); }

/// ζ1 = ∫|2h(L)-h(b)|(1-t)L², ζ2 = ∫t L²|2h(L)-h(b)| + ∫t U²|2h(U)-h(b)|,
/// ζ3 = ∫|2h(U)-h(b)|(1-t)U².
template <class H>
BoundConstants zeta_constants(const H& h, const Interval& iv, ConstantsMode mode = ConstantsMode::consistent,
                              const Tolerance& tol = {}) {
    const HarmonicFrame fr(iv);
    const PathConvention pc = path_convention(mode);
    const double hb = h(iv.b());
    auto kl = [&](double t) {
        const double l = map_L(t, fr, pc);
        return std::abs(2.0 * h(l) - hb) * l * l;
    };
    auto ku = [&](double t) {
        const double u = map_U(t, fr, pc);
        return std::abs(2.0 * h(u) - hb) * u * u;
    };
    BoundConstants k;
    k.family = ConstantFamily::zeta;
    k.mode = mode;
    k.c[0] = detail::quad([&](double t) { return (1.0 - t) * kl(t); }, 0.0, 1.0, tol);
    k.c[1] = detail::quad([&](double t) { return t * kl(t); }, 0.0, 1.0, tol) +
             detail::quad([&](double t) { return t * ku(t); }, 0.0, 1.0, tol);
    k.c[2] = detail::quad([&](double t) { return (1.0 - t) * ku(t); }, 0.0, 1.0, tol);
    return k;
}

enum class CAlphaVariant { exact, small_alpha };

inline const char* to_string(CAlphaVariant v) { return v == CAlphaVariant::exact ? "exact" : "small-alpha"; }

inline BoundConstants c_alpha_constants(const Interval& iv, FracOrder order, CAlphaVariant variant,
                                        ConstantsMode mode = ConstantsMode::consistent,
                                        const Tolerance& tol = {}) {
    const double alpha = order.value();
    if (variant == CAlphaVariant::small_alpha && alpha > 1.0)
        throw InvalidArgument("the small-alpha constants require 0 < alpha <= 1");
    const HarmonicFrame fr(iv);
    const PathConvention pc = path_convention(mode);
    auto l2 = [&](double t) { return std::pow(map_L(t, fr, pc), 2); };
    auto u2 = [&](double t) { return std::pow(map_U(t, fr, pc), 2); };

    BoundConstants k;
    k.mode = mode;
    k.alpha = alpha;
    const bool strict = mode == ConstantsMode::strict_paper;
    if (variant == CAlphaVariant::exact) {
        k.family = ConstantFamily::c_alpha_exact;
        auto ker = [&](double t) { return detail::window_kernel(t, alpha, mode); };
        k.c[0] = detail::quad([&](double t) { return (1.0 - t) * ker(t) * l2(t); }, 0.0, 1.0, tol);
        k.c[1] = detail::quad([&](double t) { return t * ker(t) * (l2(t) + u2(t)); }, 0.0, 1.0, tol);
        k.c[2] = strict ? k.c[0]
                        : detail::quad([&](double t) { return (1.0 - t) * ker(t) * u2(t); }, 0.0, 1.0, tol);
    } else {
        k.family = ConstantFamily::c_alpha_small;
        if (strict) {
            k.c[0] = detail::quad([&](double t) { return (1.0 - t) * std::pow(t, alpha) * l2(t); }, 0.0, 1.0, tol);
            k.c[1] = detail::quad([&](double t) { return std::pow(t, alpha + 1.0) * (l2(t) + u2(t)); }, 0.0, 1.0,
                                  tol);
            k.c[2] = detail::quad([&](double t) { return (1.0 - t) * std::pow(t, alpha) * u2(t); }, 0.0, 1.0, tol);
        } else {
            k.c[0] = detail::quad([&](double t) { return std::pow(1.0 - t, alpha + 1.0) * l2(t); }, 0.0, 1.0, tol);
            k.c[1] = detail::quad([&](double t) { return t * std::pow(1.0 - t, alpha) * (l2(t) + u2(t)); }, 0.0,
                                  1.0, tol);
            k.c[2] = detail::quad([&](double t) { return std::pow(1.0 - t, alpha + 1.0) * u2(t); }, 0.0, 1.0, tol);
        }
    }
    return k;
}

/// Defined for q >= 1; the bounds that consume it require q > 1.
inline BoundConstants c_alpha_q_constants(const Interval& iv, FracOrder order, double q,
                                          ConstantsMode mode = ConstantsMode::consistent,
                                          const Tolerance& tol = {}) {
    if (!(q >= 1.0) || !std::isfinite(q)) throw InvalidArgument("q must be >= 1");
    const double alpha = order.value();
    const HarmonicFrame fr(iv);
    const PathConvention pc = path_convention(mode);
    auto l2q = [&](double t) { return std::pow(map_L(t, fr, pc), 2.0 * q); };
    auto u2q = [&](double t) { return std::pow(map_U(t, fr, pc), 2.0 * q); };
    auto ker = [&](double t) { return detail::window_kernel(t, alpha, mode); };
    // Weight on the |f'(a)|, |f'(b)| terms; the |f'(H)| term takes the complement.
    const bool strict = mode == ConstantsMode::strict_paper;
    auto end_w = [strict](double t) { return strict ? t : 1.0 - t; };

    BoundConstants k;
    k.family = ConstantFamily::c_alpha_q;
    k.mode = mode;
    k.alpha = alpha;
    k.q = q;
    k.c[0] = detail::quad([&](double t) { return ker(t) * end_w(t) * l2q(t); }, 0.0, 1.0, tol);
    k.c[1] = detail::quad([&](double t) { return ker(t) * (1.0 - end_w(t)) * (l2q(t) + u2q(t)); }, 0.0, 1.0, tol);
    k.c[2] = detail::quad([&](double t) { return ker(t) * end_w(t) * u2q(t); }, 0.0, 1.0, tol);
    return k;
}

} // namespace hhf

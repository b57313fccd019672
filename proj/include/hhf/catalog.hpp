#pragma once

/**
 * @file catalog.hpp
 * @brief Both (or all three) sides of every Hermite-Hadamard-Fejér chain,
 *        the integral identity, and each of the error bounds.
 *
 * Notation shared by all evaluators:
 *
 *     H  = 2ab/(a+b)          d = (b-a)/(ab)          avg = (f(a)+f(b))/2
 *     P(φ) = J_{1/a-}^α (φ∘h)(1/b) + J_{1/b+}^α (φ∘h)(1/a),   h(x) = 1/x
 *
 * Every side is an Estimate; SidesResult::quad_error_budget is the summed
 * error of everything that went into the sides.
 */

#include "hhf/constants.hpp"
#include "hhf/errors.hpp"
#include "hhf/estimate.hpp"
#include "hhf/expr.hpp"
#include "hhf/fracquad.hpp"
#include "hhf/harmonic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace hhf {

enum class InequalityId {
    hh_1_3,
    hh_frac_1_4,
    fejer_1_6,
    fejer_frac_1_7,
    identity_2_1,
    bound_2_6,
    bound_2_9,
    bound_2_10,
    bound_2_16,
    bound_2_17,
    bound_2_18,
    bound_2_19,
    bound_2_20,
    bound_2_23,
    lemma_1,
};

inline constexpr std::array<InequalityId, 15> all_inequalities = {
    InequalityId::hh_1_3,     InequalityId::hh_frac_1_4, InequalityId::fejer_1_6,  InequalityId::fejer_frac_1_7,
    InequalityId::identity_2_1, InequalityId::bound_2_6, InequalityId::bound_2_9,  InequalityId::bound_2_10,
    InequalityId::bound_2_16, InequalityId::bound_2_17,  InequalityId::bound_2_18, InequalityId::bound_2_19,
    InequalityId::bound_2_20, InequalityId::bound_2_23,  InequalityId::lemma_1,
};

inline constexpr std::array<std::string_view, 15> inequality_names = {
    "hh-1.3",     "hh-frac-1.4", "fejer-1.6",  "fejer-frac-1.7", "identity-2.1",
    "bound-2.6",  "bound-2.9",   "bound-2.10", "bound-2.16",     "bound-2.17",
    "bound-2.18", "bound-2.19",  "bound-2.20", "bound-2.23",     "lemma-1",
};

inline std::string_view to_string(InequalityId id) { return inequality_names[static_cast<std::size_t>(id)]; }

inline std::optional<InequalityId> parse_inequality(std::string_view name) {
    for (std::size_t i = 0; i < inequality_names.size(); ++i)
        if (inequality_names[i] == name) return all_inequalities[i];
    return std::nullopt;
}

enum class SidesShape { chain, bound, identity };

struct SidesResult {
    double lhs = 0.0;
    std::optional<double> mid;
    double rhs = 0.0;
    double quad_error_budget = 0.0;
    SidesShape shape = SidesShape::bound;
    std::optional<BoundConstants> constants;

    double residual() const { return lhs - rhs; }

    /// Smallest pairwise slack. For the identity: allowance minus |residual|.
    double margin() const {
        switch (shape) {
        case SidesShape::chain: return std::min(*mid - lhs, rhs - *mid);
        case SidesShape::identity: return identity_allowance(lhs) - std::abs(residual());
        case SidesShape::bound: break;
        }
        return rhs - lhs;
    }

    bool holds() const { return margin() >= -quad_error_budget; }

    static double identity_allowance(double lhs) { return 1e-7 * (1.0 + std::abs(lhs)); }
};

/// A Fejér weight; empty means g ≡ 1, which is handled exactly (‖g‖ = 1).
using Weight = std::optional<Fn>;

struct EvalOptions {
    Tolerance tol;
    ConstantsMode mode = ConstantsMode::consistent;
    std::size_t sup_grid = 1001;
    double sup_safety = 1e-6;  // ‖g‖ is inflated by (1 + sup_safety)
};

/// max |g| on a harmonic grid of n points, then twice on a grid of n points
/// spanning the neighbours of the current argmax. A lower bound on the sup.
inline double sup_norm(const Fn& g, const Interval& iv, std::size_t n = 1001) {
    if (n < 3) throw InvalidArgument("sup_norm grid needs at least 3 points");
    double best = 0.0;
    double lo = iv.a();
    double hi = iv.b();
    for (int pass = 0; pass < 3; ++pass) {
        const auto xs = harmonic_grid(Interval(lo, hi), n);
        std::size_t arg = 0;
        double pass_best = -1.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double v = std::abs(g(xs[i]));
            if (v > pass_best) {
                pass_best = v;
                arg = i;
            }
        }
        best = std::max(best, pass_best);
        const double nlo = xs[arg == 0 ? 0 : arg - 1];
        const double nhi = xs[arg + 1 == xs.size() ? arg : arg + 1];
        if (!(nlo < nhi)) break;
        lo = nlo;
        hi = nhi;
    }
    return best;
}

namespace detail {

struct Pieces {
    const Expr& f;
    Interval iv;
    double a, b, H, d;

    Pieces(const Expr& fn, const Interval& i)
        : f(fn), iv(i), a(i.a()), b(i.b()), H(harmonic_mean(i)), d((i.b() - i.a()) / (i.a() * i.b())) {}

    // Point evaluations carry a rounding allowance so that equality cases
    // are not decided by the last bit.
    Estimate fH() const { return rounded(f(H)); }
    Estimate avg() const { return rounded(0.5 * (f(a) + f(b))); }
    Estimate dfa() const { return rounded(std::abs(f.dual(a).deriv)); }
    Estimate dfH() const { return rounded(std::abs(f.dual(H).deriv)); }
    Estimate dfb() const { return rounded(std::abs(f.dual(b).deriv)); }
    Estimate dfa_q(double q) const { return rounded(std::pow(std::abs(f.dual(a).deriv), q)); }
    Estimate dfH_q(double q) const { return rounded(std::pow(std::abs(f.dual(H).deriv), q)); }
    Estimate dfb_q(double q) const { return rounded(std::pow(std::abs(f.dual(b).deriv), q)); }
};

inline double weight_at(const Weight& g, double x) { return g ? (*g)(x) : 1.0; }

inline double weight_norm(const Weight& g, const Interval& iv, const EvalOptions& opt) {
    if (!g) return 1.0;
    return sup_norm(*g, iv, opt.sup_grid) * (1.0 + opt.sup_safety);
}

// ∫_a^b φ(x)/x² dx
template <class F>
Estimate reciprocal_mean(F&& phi, const Interval& iv, const Tolerance& tol) {
    return quad([&](double x) { return phi(x) / (x * x); }, iv.a(), iv.b(), tol);
}

// P(φ)
template <class F>
Estimate frac_pair(F&& phi, const Interval& iv, FracOrder order, const Tolerance& tol) {
    return frac_pair_on_reciprocal(phi, iv, order, tol).sum();
}

inline Estimate weighted_sum(const BoundConstants& k, Estimate wa, Estimate wH, Estimate wb) {
    return k.c[0] * wa + k.c[1] * wH + k.c[2] * wb;
}

inline void require_q(double q) {
    if (!(q > 1.0) || !std::isfinite(q)) throw InvalidArgument("q must be > 1");
}

inline SidesResult two_sided(Estimate lhs, Estimate rhs) {
    SidesResult r;
    r.lhs = lhs.value;
    r.rhs = rhs.value;
    r.quad_error_budget = lhs.error + rhs.error;
    r.shape = SidesShape::bound;
    return r;
}

inline SidesResult three_sided(Estimate lhs, Estimate mid, Estimate rhs) {
    SidesResult r;
    r.lhs = lhs.value;
    r.mid = mid.value;
    r.rhs = rhs.value;
    r.quad_error_budget = lhs.error + mid.error + rhs.error;
    r.shape = SidesShape::chain;
    return r;
}

// Left side of the integral identity:
// [h(b) - 2h(a)] f(a)/2 + h(b) f(b)/2 - ∫ f h'.
inline Estimate identity_left(const Expr& f, const Expr& h, const Interval& iv, const Tolerance& tol) {
    const double a = iv.a(), b = iv.b();
    const Estimate fh = quad([&](double x) { return f(x) * h.dual(x).deriv; }, a, b, tol);
    return rounded((h(b) - 2.0 * h(a)) * f(a) / 2.0) + rounded(h(b) * f(b) / 2.0) - fh;
}

// Left side of the fractional Fejér bounds: |avg P(g) - P(fg)|.
inline Estimate fejer_frac_gap(const Pieces& p, const Weight& g, FracOrder order, const Tolerance& tol) {
    const Estimate pg = frac_pair([&](double x) { return weight_at(g, x); }, p.iv, order, tol);
    const Estimate pfg = frac_pair([&](double x) { return p.f(x) * weight_at(g, x); }, p.iv, order, tol);
    return abs(pg * p.avg() - pfg);
}

// Left side of the unweighted α = 1 bounds: |avg - (1/d) ∫ f/x²|.
inline Estimate hh_gap(const Pieces& p, const Tolerance& tol) {
    return abs(p.avg() - reciprocal_mean(p.f, p.iv, tol) / p.d);
}

} // namespace detail

// ---------------------------------------------------------------- identity

inline SidesResult identity_2_1(const Expr& f, const Expr& h, const Interval& iv, const Tolerance& tol = {}) {
    const HarmonicFrame fr(iv);
    const double hb = h(iv.b());
    const double d = (iv.b() - iv.a()) / (iv.a() * iv.b());
    const Estimate lhs = detail::identity_left(f, h, iv, tol);
    auto path_term = [&](auto path) {
        return detail::quad(
            [&](double t) {
                const double p = path(t, fr);
                return (2.0 * h(p) - hb) * f.dual(p).deriv * p * p;
            },
            0.0, 1.0, tol);
    };
    const Estimate rhs =
        (path_term([](double t, const HarmonicFrame& w) { return map_L(t, w); }) +
         path_term([](double t, const HarmonicFrame& w) { return map_U(t, w); })) *
        (d / 4.0);
    SidesResult r = detail::two_sided(lhs, rhs);
    r.shape = SidesShape::identity;
    return r;
}

// ------------------------------------------------------------------ chains

inline SidesResult hh_chain(const Expr& f, const Interval& iv, const Tolerance& tol = {}) {
    const detail::Pieces p(f, iv);
    const Estimate mid = detail::reciprocal_mean(f, iv, tol) / p.d;
    return detail::three_sided(p.fH(), mid, p.avg());
}

inline SidesResult hh_frac_chain(const Expr& f, const Interval& iv, FracOrder order, const Tolerance& tol = {}) {
    const detail::Pieces p(f, iv);
    const double alpha = order.value();
    const double scale = gamma(alpha + 1.0) / 2.0 * std::pow(p.d, -alpha);
    const Estimate mid = detail::frac_pair(f, iv, order, tol) * scale;
    return detail::three_sided(p.fH(), mid, p.avg());
}

inline SidesResult fejer_chain(const Expr& f, const Weight& g, const Interval& iv, const Tolerance& tol = {}) {
    const detail::Pieces p(f, iv);
    const Estimate gm = detail::reciprocal_mean([&](double x) { return detail::weight_at(g, x); }, iv, tol);
    const Estimate fgm = detail::reciprocal_mean([&](double x) { return f(x) * detail::weight_at(g, x); }, iv, tol);
    return detail::three_sided(gm * p.fH(), fgm, gm * p.avg());
}

inline SidesResult fejer_frac_chain(const Expr& f, const Weight& g, const Interval& iv, FracOrder order,
                                    const Tolerance& tol = {}) {
    const detail::Pieces p(f, iv);
    const Estimate pg = detail::frac_pair([&](double x) { return detail::weight_at(g, x); }, iv, order, tol);
    const Estimate pfg =
        detail::frac_pair([&](double x) { return f(x) * detail::weight_at(g, x); }, iv, order, tol);
    return detail::three_sided(pg * p.fH(), pfg, pg * p.avg());
}

// ------------------------------------------------------------------ bounds

/// |identity left side| <= d/4 (ζ1|f'(a)| + ζ2|f'(H)| + ζ3|f'(b)|).
inline SidesResult bound_zeta(const Expr& f, const Expr& h, const Interval& iv, const EvalOptions& opt = {}) {
    const detail::Pieces p(f, iv);
    const Estimate lhs = abs(detail::identity_left(f, h, iv, opt.tol));
    const BoundConstants k = zeta_constants(h, iv, opt.mode, opt.tol);
    const Estimate rhs = detail::weighted_sum(k, p.dfa(), p.dfH(), p.dfb()) * (p.d / 4.0);
    SidesResult r = detail::two_sided(lhs, rhs);
    r.constants = k;
    return r;
}

/// |avg P(g) - P(fg)| <= prefactor ‖g‖ (C1|f'(a)| + C2|f'(H)| + C3|f'(b)|) with
/// prefactor d^(α+1)/(2^(α+1) Γ(α+1)) (exact) or d^(α+1)/(2 Γ(α+1)) (small α).
inline SidesResult bound_frac_weighted(const Expr& f, const Weight& g, const Interval& iv, FracOrder order,
                                       CAlphaVariant variant, const EvalOptions& opt = {}) {
    const detail::Pieces p(f, iv);
    const double alpha = order.value();
    const BoundConstants k = c_alpha_constants(iv, order, variant, opt.mode, opt.tol);
    const Estimate lhs = detail::fejer_frac_gap(p, g, order, opt.tol);
    const double denom = variant == CAlphaVariant::exact ? std::pow(2.0, alpha + 1.0) : 2.0;
    const double pre = std::pow(p.d, alpha + 1.0) * detail::weight_norm(g, iv, opt) / (denom * gamma(alpha + 1.0));
    const Estimate rhs = detail::weighted_sum(k, p.dfa(), p.dfH(), p.dfb()) * pre;
    SidesResult r = detail::two_sided(lhs, rhs);
    r.constants = k;
    return r;
}

enum class RemainderCase { weighted_unit, single_alpha, classical };

/// weighted_unit: |avg ∫g/x² - ∫fg/x²| <= d²‖g‖/4 ΣC(1)|f'|
/// single_alpha: |avg - Γ(α+1)/(2d^α) P(f)| <= (b-a)/(2^(α+2)ab) ΣC(α)|f'|
/// classical: |avg - (1/d)∫f/x²| <= d/4 ΣC(1)|f'|
/// C(1) is the small-α family at α = 1; single_alpha uses the exact family.
inline SidesResult bound_remainder(const Expr& f, const Weight& g, const Interval& iv, RemainderCase c,
                                   std::optional<FracOrder> order, const EvalOptions& opt = {}) {
    const detail::Pieces p(f, iv);
    const Estimate wa = p.dfa(), wH = p.dfH(), wb = p.dfb();
    if (c == RemainderCase::single_alpha) {
        if (!order) throw InvalidArgument("the single-alpha remainder requires alpha");
        const double alpha = order->value();
        const BoundConstants k = c_alpha_constants(iv, *order, CAlphaVariant::exact, opt.mode, opt.tol);
        const double scale = gamma(alpha + 1.0) / 2.0 * std::pow(p.d, -alpha);
        const Estimate lhs = abs(p.avg() - detail::frac_pair(f, iv, *order, opt.tol) * scale);
        const Estimate rhs = detail::weighted_sum(k, wa, wH, wb) * (p.d / std::pow(2.0, alpha + 2.0));
        SidesResult r = detail::two_sided(lhs, rhs);
        r.constants = k;
        return r;
    }
    const BoundConstants k = c_alpha_constants(iv, FracOrder(1.0), CAlphaVariant::small_alpha, opt.mode, opt.tol);
    const Estimate sum = detail::weighted_sum(k, wa, wH, wb);
    SidesResult r;
    if (c == RemainderCase::weighted_unit) {
        const Estimate gm =
            detail::reciprocal_mean([&](double x) { return detail::weight_at(g, x); }, iv, opt.tol);
        const Estimate fgm =
            detail::reciprocal_mean([&](double x) { return f(x) * detail::weight_at(g, x); }, iv, opt.tol);
        const Estimate lhs = abs(gm * p.avg() - fgm);
        r = detail::two_sided(lhs, sum * (p.d * p.d * detail::weight_norm(g, iv, opt) / 4.0));
    } else {
        r = detail::two_sided(detail::hh_gap(p, opt.tol), sum * (p.d / 4.0));
    }
    r.constants = k;
    return r;
}

/// |identity left side| <= d/4 { (∫|K_L|)^(1-1/q) (∫|K_L| L^2q (w_a|f'(a)|^q + w_H|f'(H)|^q))^(1/q)
///                            + (∫|K_U|)^(1-1/q) (∫|K_U| U^2q (w_b|f'(b)|^q + w_H|f'(H)|^q))^(1/q) }
/// with K_P(t) = 2h(P(t)) - h(b). The endpoint weight w_a = w_b is the
/// convexity weight of the path's starting point.
inline SidesResult bound_holder(const Expr& f, const Expr& h, const Interval& iv, double q,
                                const EvalOptions& opt = {}) {
    detail::require_q(q);
    const detail::Pieces p(f, iv);
    const HarmonicFrame fr(iv);
    const PathConvention pc = path_convention(opt.mode);
    const bool strict = opt.mode == ConstantsMode::strict_paper;
    const double hb = h(iv.b());
    const double fa = p.dfa_q(q).value, fH = p.dfH_q(q).value, fb = p.dfb_q(q).value;

    auto half = [&](auto path, double f_end) {
        auto kern = [&](double t) { return std::abs(2.0 * h(path(t)) - hb); };
        const Estimate mass = detail::quad(kern, 0.0, 1.0, opt.tol);
        const Estimate weighted = detail::quad(
            [&](double t) {
                const double w_end = strict ? t : 1.0 - t;
                return kern(t) * std::pow(path(t), 2.0 * q) * (w_end * f_end + (1.0 - w_end) * fH);
            },
            0.0, 1.0, opt.tol);
        return pow(mass, 1.0 - 1.0 / q) * pow(weighted, 1.0 / q);
    };
    const Estimate lower = half([&](double t) { return map_L(t, fr, pc); }, fa);
    const Estimate upper = half([&](double t) { return map_U(t, fr, pc); }, fb);
    const Estimate lhs = abs(detail::identity_left(f, h, iv, opt.tol));
    return detail::two_sided(lhs, (lower + upper) * (p.d / 4.0));
}

/// |avg P(g) - P(fg)| <= d^(α+1)‖g‖/(2^(α+1)Γ(α+1)) (4(2^α-1)/(α+1))^(1-1/q)
///                       [C1(α,q)|f'(a)|^q + C2(α,q)|f'(H)|^q + C3(α,q)|f'(b)|^q]^(1/q)
inline SidesResult bound_power_weighted(const Expr& f, const Weight& g, const Interval& iv, FracOrder order, double q,
                                        const EvalOptions& opt = {}) {
    detail::require_q(q);
    const detail::Pieces p(f, iv);
    const double alpha = order.value();
    const BoundConstants k = c_alpha_q_constants(iv, order, q, opt.mode, opt.tol);
    const Estimate lhs = detail::fejer_frac_gap(p, g, order, opt.tol);
    const double pre = std::pow(p.d, alpha + 1.0) * detail::weight_norm(g, iv, opt) /
                       (std::pow(2.0, alpha + 1.0) * gamma(alpha + 1.0)) *
                       std::pow(4.0 * (std::pow(2.0, alpha) - 1.0) / (alpha + 1.0), 1.0 - 1.0 / q);
    const Estimate sum =
        detail::weighted_sum(k, p.dfa_q(q), p.dfH_q(q), p.dfb_q(q));
    SidesResult r = detail::two_sided(lhs, pow(sum, 1.0 / q) * pre);
    r.constants = k;
    return r;
}

/// |avg - (1/d)∫f/x²| <= (b-a)/(2^(2+1/q)ab) [ΣC(1,q)|f'|^q]^(1/q)
inline SidesResult bound_power(const Expr& f, const Interval& iv, double q, const EvalOptions& opt = {}) {
    detail::require_q(q);
    const detail::Pieces p(f, iv);
    const BoundConstants k = c_alpha_q_constants(iv, FracOrder(1.0), q, opt.mode, opt.tol);
    const Estimate sum =
        detail::weighted_sum(k, p.dfa_q(q), p.dfH_q(q), p.dfb_q(q));
    SidesResult r =
        detail::two_sided(detail::hh_gap(p, opt.tol), pow(sum, 1.0 / q) * (p.d / std::pow(2.0, 2.0 + 1.0 / q)));
    r.constants = k;
    return r;
}

/// |a^θ - b^θ| <= (b-a)^θ.
inline SidesResult lemma_1(double a, double b, double theta) {
    const auto [l, r] = lemma1_sides(a, b, theta);
    return detail::two_sided(l, r);
}

} // namespace hhf

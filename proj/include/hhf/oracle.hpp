#pragma once

/**
 * @file oracle.hpp
 * @brief Deliberately naive integration used to cross-check the adaptive
 *        engine: composite trapezoid, midpoint Riemann sums and seeded Monte
 *        Carlo. No code is shared with fracquad.hpp or constants.hpp; the
 *        constant integrands are re-stated here from their definitions.
 *
 * Monte Carlo uses std::mt19937_64 (the 64-bit Mersenne Twister, whose output
 * sequence is fixed by the C++ standard). Uniforms take the top 53 bits, so
 * results are bit-reproducible on any conforming implementation.
 */

#include "hhf/constants.hpp"
#include "hhf/errors.hpp"
#include "hhf/harmonic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace hhf::oracle {

struct OracleEstimate {
    double value = 0.0;
    std::string method;  // "trapezoid(n)", "riemann-midpoint(n)" or "monte-carlo(n, seed)"
    std::optional<double> stderr_;
};

inline constexpr const char* rng_name = "mt19937_64";

namespace detail {

// Fixed-shape pairwise reduction: the result depends only on the input order.
template <class Term>
double pairwise(std::size_t lo, std::size_t hi, const Term& term) {
    if (hi - lo <= 16) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += term(i);
        return s;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    return pairwise(lo, mid, term) + pairwise(mid, hi, term);
}

inline double finite(double y, double x) {
    if (!std::isfinite(y)) throw DomainError("oracle integrand is not finite at x=" + std::to_string(x));
    return y;
}

inline std::string label(const char* name, std::size_t n) { return std::string(name) + "(" + std::to_string(n) + ")"; }

} // namespace detail

/// Composite midpoint rule with n panels.
inline OracleEstimate midpoint(const Fn& f, double lo, double hi, std::size_t n) {
    if (n < 1) throw InvalidArgument("midpoint needs n >= 1");
    const double h = (hi - lo) / static_cast<double>(n);
    const double s = detail::pairwise(0, n, [&](std::size_t i) {
        const double x = lo + (static_cast<double>(i) + 0.5) * h;
        return detail::finite(f(x), x);
    });
    return {s * h, detail::label("riemann-midpoint", n), std::nullopt};
}

/// Composite trapezoid rule with n panels. If either endpoint cannot be
/// evaluated the whole estimate falls back to the midpoint rule.
inline OracleEstimate trapz(const Fn& f, double lo, double hi, std::size_t n) {
    if (n < 2) throw InvalidArgument("trapz needs n >= 2");
    double flo = 0.0, fhi = 0.0;
    try {
        flo = f(lo);
        fhi = f(hi);
    } catch (const DomainError&) {
        return midpoint(f, lo, hi, n);
    }
    if (!std::isfinite(flo) || !std::isfinite(fhi)) return midpoint(f, lo, hi, n);
    const double h = (hi - lo) / static_cast<double>(n);
    const double inner = detail::pairwise(1, n, [&](std::size_t i) {
        const double x = lo + static_cast<double>(i) * h;
        return detail::finite(f(x), x);
    });
    return {h * (0.5 * (flo + fhi) + inner), detail::label("trapezoid", n), std::nullopt};
}

/// (hi-lo) times the sample mean at n uniform points; stderr from the sample
/// standard deviation.
inline OracleEstimate mc(const Fn& f, double lo, double hi, std::size_t n, std::uint64_t seed) {
    if (n < 100) throw InvalidArgument("mc needs n >= 100");
    std::mt19937_64 gen(seed);
    std::vector<double> ys(n);
    for (auto& y : ys) {
        const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        const double x = lo + (hi - lo) * u;
        y = detail::finite(f(x), x);
    }
    const double mean = detail::pairwise(0, n, [&](std::size_t i) { return ys[i]; }) / static_cast<double>(n);
    const double ss = detail::pairwise(0, n, [&](std::size_t i) { return (ys[i] - mean) * (ys[i] - mean); });
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    const double w = hi - lo;
    return {w * mean, "monte-carlo(" + std::to_string(n) + ", " + std::to_string(seed) + ")",
            w * sd / std::sqrt(static_cast<double>(n))};
}

/// Which constant family to recompute.
struct ConstantsSpec {
    ConstantFamily family = ConstantFamily::zeta;
    double alpha = 1.0;
    double q = 2.0;
    Fn h;  // zeta only
    ConstantsMode mode = ConstantsMode::consistent;
};

/// Each constant as a midpoint Riemann sum over t at n nodes.
inline BoundConstants oracle_constants(const Interval& iv, const ConstantsSpec& spec, std::size_t n = 1'000'000) {
    if (n < 1000) throw InvalidArgument("oracle_constants needs n >= 1000");
    const double a = iv.a(), b = iv.b();
    const double H = 2.0 * a * b / (a + b);
    const bool strict = spec.mode == ConstantsMode::strict_paper;
    // Forward paths: 1/L(t) = (1-t)/a + t/H, 1/U(t) = (1-t)/b + t/H. The literal
    // reading runs them backwards.
    auto L = [&](double t) {
        const double s = strict ? 1.0 - t : t;
        return 1.0 / ((1.0 - s) / a + s / H);
    };
    auto U = [&](double t) {
        const double s = strict ? 1.0 - t : t;
        return 1.0 / ((1.0 - s) / b + s / H);
    };
    const double al = spec.alpha;
    auto kernel = [&](double t) {
        return strict ? std::pow(1.0 + t, al) - std::pow(1.0 - t, al) : std::pow(2.0 - t, al) - std::pow(t, al);
    };

    std::array<std::function<double(double)>, 3> g;
    switch (spec.family) {
    case ConstantFamily::zeta: {
        if (!spec.h) throw InvalidArgument("zeta constants need h");
        const double hb = spec.h(b);
        auto kl = [&, hb](double t) { const double l = L(t); return std::abs(2.0 * spec.h(l) - hb) * l * l; };
        auto ku = [&, hb](double t) { const double u = U(t); return std::abs(2.0 * spec.h(u) - hb) * u * u; };
        g = {[=](double t) { return (1.0 - t) * kl(t); }, [=](double t) { return t * (kl(t) + ku(t)); },
             [=](double t) { return (1.0 - t) * ku(t); }};
        break;
    }
    case ConstantFamily::c_alpha_exact:
        g = {[=](double t) { return (1.0 - t) * kernel(t) * L(t) * L(t); },
             [=](double t) { return t * kernel(t) * (L(t) * L(t) + U(t) * U(t)); },
             [=](double t) {
                 const double p = strict ? L(t) : U(t);
                 return (1.0 - t) * kernel(t) * p * p;
             }};
        break;
    case ConstantFamily::c_alpha_small:
        if (strict)
            g = {[=](double t) { return (1.0 - t) * std::pow(t, al) * L(t) * L(t); },
                 [=](double t) { return std::pow(t, al + 1.0) * (L(t) * L(t) + U(t) * U(t)); },
                 [=](double t) { return (1.0 - t) * std::pow(t, al) * U(t) * U(t); }};
        else
            g = {[=](double t) { return std::pow(1.0 - t, al + 1.0) * L(t) * L(t); },
                 [=](double t) { return t * std::pow(1.0 - t, al) * (L(t) * L(t) + U(t) * U(t)); },
                 [=](double t) { return std::pow(1.0 - t, al + 1.0) * U(t) * U(t); }};
        break;
    case ConstantFamily::c_alpha_q: {
        const double e = 2.0 * spec.q;
        auto end = [strict](double t) { return strict ? t : 1.0 - t; };
        g = {[=](double t) { return kernel(t) * end(t) * std::pow(L(t), e); },
             [=](double t) { return kernel(t) * (1.0 - end(t)) * (std::pow(L(t), e) + std::pow(U(t), e)); },
             [=](double t) { return kernel(t) * end(t) * std::pow(U(t), e); }};
        break;
    }
    }

    BoundConstants k;
    k.family = spec.family;
    k.mode = spec.mode;
    k.alpha = spec.family == ConstantFamily::zeta ? 0.0 : spec.alpha;
    k.q = spec.family == ConstantFamily::c_alpha_q ? spec.q : 0.0;
    for (std::size_t i = 0; i < 3; ++i) k.c[i] = Estimate(midpoint(g[i], 0.0, 1.0, n).value, 0.0);
    return k;
}

/// |engine - oracle| / max(|oracle|, floor).
inline double relative_gap(double engine, double reference, double floor = 1e-300) {
    return std::abs(engine - reference) / std::max(std::abs(reference), floor);
}

} // namespace hhf::oracle

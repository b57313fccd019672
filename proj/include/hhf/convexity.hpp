#pragma once

/**
 * @file convexity.hpp
 * @brief Finite-grid certification of ordinary, harmonic and harmonic
 *        s-convexity, and the monotonicity rules that connect them.
 *
 * A grid check certifies nothing off the grid: a clean report means "no
 * violation found at this resolution", never "convex".
 */

#include "hhf/errors.hpp"
#include "hhf/harmonic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace hhf {

/// Grid resolution over x, y (harmonic-uniform on [a,b]) and t (uniform on [0,1]).
struct Grid3 {
    std::size_t nx = 41;
    std::size_t ny = 41;
    std::size_t nt = 21;

    /// Halves every spacing; the refined grid contains the original one.
    Grid3 refined() const { return {2 * nx - 1, 2 * ny - 1, 2 * nt - 1}; }

    friend bool operator==(const Grid3&, const Grid3&) = default;
};

enum class ConvexityClass { convex, harmonically_convex, harmonically_s_convex };

inline const char* to_string(ConvexityClass c) {
    switch (c) {
    case ConvexityClass::convex: return "convex";
    case ConvexityClass::harmonically_convex: return "harmonically-convex";
    case ConvexityClass::harmonically_s_convex: return "harmonically-s-convex";
    }
    return "?";
}

struct ConvexityReport {
    ConvexityClass class_tested = ConvexityClass::harmonically_convex;
    double s = 1.0;
    Grid3 grid;
    double max_violation = 0.0;
    std::optional<std::array<double, 3>> witness;  // (x, y, t)
    double tolerance = 1e-12;
    bool concave = false;

    bool passed() const noexcept { return max_violation <= tolerance; }

    std::string verdict() const {
        const std::string res = "(" + std::to_string(grid.nx) + "," + std::to_string(grid.ny) + "," +
                                std::to_string(grid.nt) + ")";
        if (passed()) return "no violation found at resolution " + res;
        return "violation found at resolution " + res;
    }
};

inline constexpr double default_convexity_tolerance = 1e-12;

namespace detail {

inline std::vector<double> unit_grid(std::size_t n) {
    std::vector<double> ts(n);
    for (std::size_t k = 0; k < n; ++k) ts[k] = static_cast<double>(k) / static_cast<double>(n - 1);
    ts.back() = 1.0;
    return ts;
}

inline void require_grid(const Grid3& g) {
    if (g.nx < 3 || g.ny < 3 || g.nt < 3) throw InvalidArgument("grid dimensions must be at least 3");
}

// Scans (x, y, t) in lexicographic order; only a strictly larger violation
// replaces the witness, so ties resolve to the smallest (x, y, t).
template <class Point, class Rhs>
ConvexityReport scan(const Fn& f, const Interval& iv, const Grid3& grid, Point point, Rhs rhs_of,
                     bool concave, double tolerance) {
    require_grid(grid);
    const auto xs = harmonic_grid(iv, grid.nx);
    const auto ys = harmonic_grid(iv, grid.ny);
    const auto ts = unit_grid(grid.nt);
    std::vector<double> fx(xs.size()), fy(ys.size());
    for (std::size_t i = 0; i < xs.size(); ++i) fx[i] = f(xs[i]);
    for (std::size_t j = 0; j < ys.size(); ++j) fy[j] = f(ys[j]);

    ConvexityReport rep;
    rep.grid = grid;
    rep.tolerance = tolerance;
    rep.concave = concave;
    double worst = 0.0;
    std::array<double, 3> where{};
    for (std::size_t i = 0; i < xs.size(); ++i) {
        for (std::size_t j = 0; j < ys.size(); ++j) {
            for (std::size_t k = 0; k < ts.size(); ++k) {
                const double t = ts[k];
                double p;
                if (k == 0) p = xs[i];
                else if (k + 1 == ts.size()) p = ys[j];
                else p = point(xs[i], ys[j], t);
                const double lhs = f(p);
                const double rhs = rhs_of(fx[i], fy[j], t);
                const double gap = concave ? rhs - lhs : lhs - rhs;
                const double v = gap / std::max(1.0, std::abs(rhs));
                if (v > worst) {
                    worst = v;
                    where = {xs[i], ys[j], t};
                }
            }
        }
    }
    rep.max_violation = worst;
    if (worst > tolerance) rep.witness = where;
    return rep;
}

} // namespace detail

/// f(xy/(tx+(1-t)y)) <= t^s f(y) + (1-t)^s f(x) on the grid; s = 1 is plain
/// harmonic convexity. Violations are measured relative to max(1, |rhs|).
inline ConvexityReport check_harmonically_convex(const Fn& f, const Interval& iv, const Grid3& grid = {},
                                                 double s = 1.0,
                                                 double tolerance = default_convexity_tolerance,
                                                 bool concave = false) {
    if (!(s > 0.0 && s <= 1.0)) throw InvalidArgument("s must lie in (0,1]");
    auto point = [](double x, double y, double t) { return x * y / (t * x + (1.0 - t) * y); };
    ConvexityReport rep;
    if (s == 1.0) {
        rep = detail::scan(f, iv, grid, point,
                           [](double fx, double fy, double t) { return t * fy + (1.0 - t) * fx; }, concave,
                           tolerance);
        rep.class_tested = ConvexityClass::harmonically_convex;
    } else {
        rep = detail::scan(
            f, iv, grid, point,
            [s](double fx, double fy, double t) { return std::pow(t, s) * fy + std::pow(1.0 - t, s) * fx; },
            concave, tolerance);
        rep.class_tested = ConvexityClass::harmonically_s_convex;
    }
    rep.s = s;
    return rep;
}

/// The reversed inequality (harmonic s-concavity).
inline ConvexityReport check_harmonically_concave(const Fn& f, const Interval& iv, const Grid3& grid = {},
                                                  double s = 1.0,
                                                  double tolerance = default_convexity_tolerance) {
    return check_harmonically_convex(f, iv, grid, s, tolerance, true);
}

/// f(tx+(1-t)y) <= t f(x) + (1-t) f(y) on the grid.
inline ConvexityReport check_convex(const Fn& f, const Interval& iv, const Grid3& grid = {},
                                    double tolerance = default_convexity_tolerance) {
    auto rep = detail::scan(
        f, iv, grid, [](double x, double y, double t) { return t * y + (1.0 - t) * x; },
        [](double fx, double fy, double t) { return t * fy + (1.0 - t) * fx; }, false, tolerance);
    rep.class_tested = ConvexityClass::convex;
    return rep;
}

struct Monotonicity {
    bool nondecreasing = true;
    bool nonincreasing = true;
};

inline Monotonicity check_monotone(const Fn& f, const Interval& iv, std::size_t n,
                                   double tolerance = default_convexity_tolerance) {
    const auto xs = harmonic_grid(iv, n);
    Monotonicity m;
    double prev = f(xs.front());
    for (std::size_t i = 1; i < xs.size(); ++i) {
        const double cur = f(xs[i]);
        const double scale = std::max({1.0, std::abs(prev), std::abs(cur)});
        if ((cur - prev) / scale < -tolerance) m.nondecreasing = false;
        if ((cur - prev) / scale > tolerance) m.nonincreasing = false;
        prev = cur;
    }
    return m;
}

/// One of the four monotonicity implications between convexity and harmonic
/// convexity. Rules 3 and 4 concern negative intervals and are never
/// applicable here.
struct RuleOutcome {
    int rule = 0;
    std::string statement;
    bool applicable = false;
    bool fires = false;
    std::optional<bool> agrees_with_direct;  // set when the rule fires
};

struct PropositionReport {
    ConvexityReport convex;
    ConvexityReport harmonic;
    Monotonicity monotone;
    std::array<RuleOutcome, 4> rules;
};

inline PropositionReport classify_via_proposition(const Fn& f, const Interval& iv, const Grid3& grid = {}) {
    PropositionReport rep;
    rep.convex = check_convex(f, iv, grid);
    rep.harmonic = check_harmonically_convex(f, iv, grid);
    rep.monotone = check_monotone(f, iv, grid.nx);

    auto& r1 = rep.rules[0];
    r1.rule = 1;
    r1.statement = "I in (0,inf), f convex and nondecreasing => f harmonically convex";
    r1.applicable = true;
    r1.fires = rep.convex.passed() && rep.monotone.nondecreasing;
    if (r1.fires) r1.agrees_with_direct = rep.harmonic.passed();

    auto& r2 = rep.rules[1];
    r2.rule = 2;
    r2.statement = "I in (0,inf), f harmonically convex and nonincreasing => f convex";
    r2.applicable = true;
    r2.fires = rep.harmonic.passed() && rep.monotone.nonincreasing;
    if (r2.fires) r2.agrees_with_direct = rep.convex.passed();

    rep.rules[2] = {3, "I in (-inf,0), f harmonically convex and nondecreasing => f convex", false, false, {}};
    rep.rules[3] = {4, "I in (-inf,0), f convex and nonincreasing => f harmonically convex", false, false, {}};
    return rep;
}

/// Reference functions with their known classification on positive intervals.
/// f is harmonically convex exactly when u -> f(1/u) is convex.
struct CorpusFunction {
    const char* text;
    bool harmonically_convex;
    bool convex;
};

inline constexpr std::array<CorpusFunction, 9> convexity_corpus = {{
    {"x", true, true},
    {"x^2", true, true},
    {"exp(x)", true, true},
    {"1/x", true, true},
    {"-ln(x)", false, true},
    {"ln(x)", true, false},
    {"sqrt(x)", true, false},
    {"-x^2", false, false},
    {"3", true, true},
}};

} // namespace hhf

#pragma once

/**
 * @file verify.hpp
 * @brief One verification case: certify the hypotheses of a catalog entry,
 *        evaluate its sides, and classify the outcome.
 */

#include "hhf/catalog.hpp"
#include "hhf/config.hpp"
#include "hhf/convexity.hpp"
#include "hhf/errors.hpp"
#include "hhf/expr.hpp"
#include "hhf/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hhf {

enum class Status { pass, fail, hypothesis_rejected, numerical_failure };

inline const char* to_string(Status s) {
    switch (s) {
    case Status::pass: return "PASS";
    case Status::fail: return "FAIL";
    case Status::hypothesis_rejected: return "HYPOTHESIS-REJECTED";
    case Status::numerical_failure: return "NUMERICAL-FAILURE";
    }
    return "?";
}

inline int exit_code(Status s) {
    switch (s) {
    case Status::pass: return 0;
    case Status::fail: return 1;
    case Status::numerical_failure: return 3;
    case Status::hypothesis_rejected: return 4;
    }
    return 3;
}

/// Everything needed to reproduce one case. Expressions are kept as text.
struct CaseParams {
    InequalityId id = InequalityId::hh_1_3;
    double a = 1.0;
    double b = 2.0;
    std::optional<double> alpha;
    std::optional<double> q;
    std::optional<double> theta;
    std::string f;
    std::string g;               // empty means g ≡ 1
    bool g_symmetrized = false;  // g is replaced by its harmonic symmetrization
    std::string h;
    std::optional<CAlphaVariant> variant;
    std::optional<std::size_t> case_index;
    std::optional<std::uint64_t> seed;
};

struct HypothesisCheck {
    std::string name;
    bool passed = true;
    double max_violation = 0.0;
};

struct OracleGap {
    std::string quantity;
    double engine = 0.0;
    double oracle = 0.0;
    double relative_gap = 0.0;
};

struct OracleCrosscheck {
    std::string method;
    std::vector<OracleGap> gaps;
    std::optional<std::string> rng;
    std::optional<std::uint64_t> seed;
    std::optional<double> mc_sigmas;  // |engine - mc| / stderr
};

struct VerificationReport {
    CaseParams params;
    bool strict_paper = false;
    bool force = false;
    std::optional<SidesResult> sides;
    std::vector<HypothesisCheck> hypothesis_checks;
    Status status = Status::pass;
    std::optional<OracleCrosscheck> oracle_crosscheck;
    std::string diagnostic;

    std::optional<double> margin() const {
        if (!sides) return std::nullopt;
        return sides->margin();
    }
    double quad_error_budget() const { return sides ? sides->quad_error_budget : 0.0; }
};

/// Which hypotheses each entry rests on.
struct Requirements {
    bool f = true;
    bool h = false;
    bool alpha = false;
    bool q = false;
    bool theta = false;
    bool weight = false;   // uses g
    bool f_hconvex = false;
    bool df_hconvex = false;
    bool dfq_hconvex = false;
};

inline Requirements requirements(InequalityId id) {
    using I = InequalityId;
    Requirements r;
    switch (id) {
    case I::hh_1_3: r.f_hconvex = true; break;
    case I::hh_frac_1_4: r.f_hconvex = r.alpha = true; break;
    case I::fejer_1_6: r.f_hconvex = r.weight = true; break;
    case I::fejer_frac_1_7: r.f_hconvex = r.weight = r.alpha = true; break;
    case I::identity_2_1: r.h = true; break;
    case I::bound_2_6: r.h = r.df_hconvex = true; break;
    case I::bound_2_9:
    case I::bound_2_10: r.weight = r.alpha = r.df_hconvex = true; break;
    case I::bound_2_16: r.weight = r.df_hconvex = true; break;
    case I::bound_2_17: r.alpha = r.df_hconvex = true; break;
    case I::bound_2_18: r.df_hconvex = true; break;
    case I::bound_2_19: r.h = r.q = r.dfq_hconvex = true; break;
    case I::bound_2_20: r.weight = r.alpha = r.q = r.dfq_hconvex = true; break;
    case I::bound_2_23: r.q = r.dfq_hconvex = true; break;
    case I::lemma_1: r.f = false; r.theta = true; break;
    }
    return r;
}

inline CAlphaVariant default_variant(InequalityId id) {
    return id == InequalityId::bound_2_10 ? CAlphaVariant::small_alpha : CAlphaVariant::exact;
}

inline bool has_variant(InequalityId id) { return id == InequalityId::bound_2_9 || id == InequalityId::bound_2_10; }

namespace detail {

/// Parsed inputs of a case. Throws ParseError / InvalidArgument on bad input.
struct CaseInputs {
    Interval iv;
    std::optional<Expr> f;
    std::optional<Expr> h;
    std::optional<Expr> g_base;
    Weight g;

    explicit CaseInputs(const CaseParams& p) : iv(p.a, p.b) {
        const Requirements req = requirements(p.id);
        if (req.f) {
            if (p.f.empty()) throw InvalidArgument(std::string(to_string(p.id)) + " requires --f");
            f = Expr::parse(p.f);
        }
        if (req.h) {
            if (p.h.empty()) throw InvalidArgument(std::string(to_string(p.id)) + " requires --h");
            h = Expr::parse(p.h);
        }
        if (req.alpha) {
            if (!p.alpha) throw InvalidArgument(std::string(to_string(p.id)) + " requires --alpha");
            FracOrder check(*p.alpha);
            (void)check;
            const auto v = p.variant.value_or(default_variant(p.id));
            if (has_variant(p.id) && v == CAlphaVariant::small_alpha && *p.alpha > 1.0)
                throw InvalidArgument("the small-alpha variant requires 0 < alpha <= 1");
        }
        if (req.q) {
            if (!p.q) throw InvalidArgument(std::string(to_string(p.id)) + " requires --q");
            if (!(*p.q > 1.0) || !std::isfinite(*p.q)) throw InvalidArgument("q must be > 1");
        }
        if (req.theta) {
            if (!p.theta) throw InvalidArgument("lemma-1 requires --theta");
            if (!(*p.theta > 0.0 && *p.theta <= 1.0)) throw InvalidArgument("theta must lie in (0,1]");
        }
        if (req.weight && !p.g.empty()) {
            g_base = Expr::parse(p.g);
            Fn base = [e = *g_base](double x) { return e(x); };
            g = p.g_symmetrized ? symmetrize(std::move(base), iv) : base;
        }
    }
};

inline HypothesisCheck from_report(std::string name, const ConvexityReport& r) {
    return {std::move(name), r.passed(), r.max_violation};
}

} // namespace detail

inline std::vector<HypothesisCheck> certify(const CaseParams& p, const detail::CaseInputs& in, const RunConfig& cfg) {
    const Requirements req = requirements(p.id);
    std::vector<HypothesisCheck> out;
    if (req.f_hconvex) {
        const Expr f = *in.f;
        out.push_back(detail::from_report("f harmonically convex",
                                          check_harmonically_convex([&](double x) { return f(x); }, in.iv, cfg.grid)));
    }
    if (req.df_hconvex) {
        const Expr f = *in.f;
        out.push_back(detail::from_report(
            "|f'| harmonically convex",
            check_harmonically_convex([&](double x) { return std::abs(f.dual(x).deriv); }, in.iv, cfg.grid)));
    }
    if (req.dfq_hconvex) {
        const Expr f = *in.f;
        const double q = *p.q;
        out.push_back(detail::from_report(
            "|f'|^q harmonically convex",
            check_harmonically_convex([&](double x) { return std::pow(std::abs(f.dual(x).deriv), q); }, in.iv,
                                      cfg.grid)));
    }
    if (req.weight && in.g) {
        const Fn& g = *in.g;
        double worst = 0.0;
        for (double x : harmonic_grid(in.iv, cfg.symmetry_grid)) worst = std::max(worst, -g(x));
        out.push_back({"g nonnegative", worst <= cfg.symmetry_tol, worst});
        const SymmetryReport sym = check_harmonic_symmetry(g, in.iv, cfg.symmetry_grid, cfg.symmetry_tol);
        out.push_back({"g harmonically symmetric", sym.passed(), sym.max_deviation});
    }
    return out;
}

/// Sides of the entry named by p.id.
inline SidesResult evaluate(const CaseParams& p, const detail::CaseInputs& in, const EvalOptions& o) {
    using I = InequalityId;
    const Interval& iv = in.iv;
    switch (p.id) {
    case I::hh_1_3: return hh_chain(*in.f, iv, o.tol);
    case I::hh_frac_1_4: return hh_frac_chain(*in.f, iv, FracOrder(*p.alpha), o.tol);
    case I::fejer_1_6: return fejer_chain(*in.f, in.g, iv, o.tol);
    case I::fejer_frac_1_7: return fejer_frac_chain(*in.f, in.g, iv, FracOrder(*p.alpha), o.tol);
    case I::identity_2_1: return identity_2_1(*in.f, *in.h, iv, o.tol);
    case I::bound_2_6: return bound_zeta(*in.f, *in.h, iv, o);
    case I::bound_2_9:
    case I::bound_2_10:
        return bound_frac_weighted(*in.f, in.g, iv, FracOrder(*p.alpha), p.variant.value_or(default_variant(p.id)), o);
    case I::bound_2_16: return bound_remainder(*in.f, in.g, iv, RemainderCase::weighted_unit, std::nullopt, o);
    case I::bound_2_17: return bound_remainder(*in.f, {}, iv, RemainderCase::single_alpha, FracOrder(*p.alpha), o);
    case I::bound_2_18: return bound_remainder(*in.f, {}, iv, RemainderCase::classical, std::nullopt, o);
    case I::bound_2_19: return bound_holder(*in.f, *in.h, iv, *p.q, o);
    case I::bound_2_20: return bound_power_weighted(*in.f, in.g, iv, FracOrder(*p.alpha), *p.q, o);
    case I::bound_2_23: return bound_power(*in.f, iv, *p.q, o);
    case I::lemma_1: return lemma_1(p.a, p.b, *p.theta);
    }
    throw InvalidArgument("unknown inequality");
}

namespace detail {

inline void add_gap(OracleCrosscheck& x, std::string what, double engine, double ref) {
    x.gaps.push_back({std::move(what), engine, ref, oracle::relative_gap(engine, ref, 1e-300)});
}

inline OracleCrosscheck crosscheck(const CaseParams& p, const CaseInputs& in, const SidesResult& s,
                                   const RunConfig& cfg) {
    OracleCrosscheck x;
    x.method = "riemann-midpoint(" + std::to_string(cfg.oracle_n) + ")";
    if (s.constants) {
        oracle::ConstantsSpec spec;
        spec.family = s.constants->family;
        spec.alpha = s.constants->alpha > 0.0 ? s.constants->alpha : 1.0;
        spec.q = s.constants->q > 0.0 ? s.constants->q : 2.0;
        spec.mode = s.constants->mode;
        if (in.h) spec.h = [h = *in.h](double v) { return h(v); };
        const BoundConstants ref = oracle::oracle_constants(in.iv, spec, cfg.oracle_n);
        static constexpr const char* names[] = {"c1", "c2", "c3"};
        for (std::size_t i = 0; i < 3; ++i) add_gap(x, names[i], s.constants->c[i].value, ref.c[i].value);
    }
    // The unweighted reciprocal mean ∫ f/x² appears in several entries.
    if (in.f && p.id != InequalityId::lemma_1) {
        const Expr f = *in.f;
        Fn integrand = [f](double v) { return f(v) / (v * v); };
        const double engine = integrate(integrand, in.iv.a(), in.iv.b(), cfg.tol).value;
        add_gap(x, "integral f/x^2", engine, oracle::midpoint(integrand, in.iv.a(), in.iv.b(), cfg.oracle_n).value);
        const auto m = oracle::mc(integrand, in.iv.a(), in.iv.b(), std::max<std::size_t>(cfg.oracle_n / 10, 100),
                                  cfg.seed);
        x.rng = oracle::rng_name;
        x.seed = cfg.seed;
        x.mc_sigmas = *m.stderr_ > 0.0 ? std::abs(engine - m.value) / *m.stderr_ : 0.0;
    }
    return x;
}

} // namespace detail

/// Runs one case. ParseError and InvalidArgument propagate (usage errors);
/// evaluation failures become NUMERICAL-FAILURE reports.
inline VerificationReport verify(const CaseParams& p, const RunConfig& cfg) {
    VerificationReport rep;
    rep.params = p;
    rep.strict_paper = cfg.strict_paper;
    rep.force = cfg.force;
    if (has_variant(p.id) && !rep.params.variant) rep.params.variant = default_variant(p.id);
    if (!has_variant(p.id)) rep.params.variant.reset();

    const detail::CaseInputs in(rep.params);
    try {
        rep.hypothesis_checks = certify(rep.params, in, cfg);
        const bool certified = std::all_of(rep.hypothesis_checks.begin(), rep.hypothesis_checks.end(),
                                           [](const HypothesisCheck& c) { return c.passed; });
        if (!certified) {
            rep.status = Status::hypothesis_rejected;
            if (!cfg.force) {
                rep.diagnostic = "hypothesis check failed; rerun with --force to evaluate anyway";
                return rep;
            }
            rep.diagnostic = "hypothesis check failed; sides evaluated under --force are not counterexamples";
        }
        rep.sides = evaluate(rep.params, in, cfg.eval_options());
        if (certified) rep.status = rep.sides->holds() ? Status::pass : Status::fail;
        if (cfg.oracle) rep.oracle_crosscheck = detail::crosscheck(rep.params, in, *rep.sides, cfg);
    } catch (const NumericalFailure& e) {
        rep.sides.reset();
        rep.status = Status::numerical_failure;
        rep.diagnostic = e.what();
    } catch (const DomainError& e) {
        rep.sides.reset();
        rep.status = Status::numerical_failure;
        rep.diagnostic = e.what();
    }
    return rep;
}

} // namespace hhf

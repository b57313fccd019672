#pragma once

/**
 * @file cli.hpp
 * @brief The hhfcheck command line: verify, sweep, constants, classify.
 *
 * Exit codes: 0 PASS, 1 FAIL, 2 usage error, 3 NUMERICAL-FAILURE,
 * 4 HYPOTHESIS-REJECTED. A sweep reports the most severe status present,
 * in the order 1, 3, 4.
 *
 * --config names a key=value file whose keys are long flag names; flags
 * given on the command line take precedence.
 */

#include "hhf/catalog.hpp"
#include "hhf/config.hpp"
#include "hhf/constants.hpp"
#include "hhf/convexity.hpp"
#include "hhf/errors.hpp"
#include "hhf/oracle.hpp"
#include "hhf/report.hpp"
#include "hhf/sweep.hpp"
#include "hhf/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace hhf::cli {

inline constexpr int exit_usage = 2;
inline constexpr int exit_numerical = 3;

namespace detail {

// Flags that take no value; a config entry "flag = true" becomes "--flag".
inline bool is_switch(const std::string& key) {
    return key == "strict-paper" || key == "force" || key == "oracle";
}

inline bool given(const std::vector<std::string>& args, const std::string& key) {
    const std::string flag = "--" + key;
    for (const auto& a : args)
        if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
    return false;
}

/// Appends config-file entries for every flag absent from the command line.
inline std::vector<std::string> merge_config(std::vector<std::string> args) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
    }
    if (path.empty()) return args;
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot read config file '" + path + "'");
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::vector<std::string> extra;
    for (const auto& [k, v] : parse_key_values(text)) {
        if (k == "config" || given(args, k)) continue;
        if (is_switch(k)) {
            if (hhf::detail::to_bool(k, v)) extra.push_back("--" + k);
        } else {
            extra.push_back("--" + k);
            extra.push_back(v);
        }
    }
    args.insert(args.end(), extra.begin(), extra.end());
    return args;
}

struct Shared {
    RunConfig cfg;
    std::string grid_text;
    std::string out_text = "json";
    std::string config_path;
};

inline void add_run_options(CLI::App& app, Shared& s, bool with_grid) {
    app.add_option("--config", s.config_path, "key=value configuration file");
    app.add_option("--out", s.out_text, "output format")->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--tol-abs", s.cfg.tol.abs, "absolute quadrature tolerance");
    app.add_option("--tol-rel", s.cfg.tol.rel, "relative quadrature tolerance");
    app.add_option("--max-evals", s.cfg.tol.max_evaluations, "integrand evaluations per quadrature");
    app.add_option("--oracle-n", s.cfg.oracle_n, "oracle resolution");
    app.add_option("--seed", s.cfg.seed, "random seed");
    app.add_flag("--oracle", s.cfg.oracle, "cross-check against the oracle");
    app.add_flag("--strict-paper", s.cfg.strict_paper, "evaluate the constants exactly as printed");
    if (with_grid) {
        app.add_flag("--force", s.cfg.force, "evaluate even when a hypothesis check fails");
        app.add_option("--grid", s.grid_text, "convexity grid nx,ny,nt");
        app.add_option("--symmetry-grid", s.cfg.symmetry_grid, "symmetry check grid size");
        app.add_option("--symmetry-tol", s.cfg.symmetry_tol, "symmetry tolerance");
        app.add_option("--sup-grid", s.cfg.sup_grid, "grid size for the sup norm");
        app.add_option("--sup-safety", s.cfg.sup_safety, "relative inflation of the sup norm");
    }
}

inline void finish(Shared& s) {
    if (!s.grid_text.empty()) s.cfg.grid = RunConfig::parse_grid(s.grid_text);
    s.cfg.out = parse_output_format(s.out_text);
    s.cfg.validate();
}

struct CaseFlags {
    std::string ineq;
    std::string f, g, g_sym, h, variant;
    double a = 0.0, b = 0.0;
    std::optional<double> alpha, q, theta;
};

inline CaseParams to_params(const CaseFlags& c) {
    CaseParams p;
    const auto id = parse_inequality(c.ineq);
    if (!id) throw InvalidArgument("unknown inequality '" + c.ineq + "'");
    p.id = *id;
    p.a = c.a;
    p.b = c.b;
    p.alpha = c.alpha;
    p.q = c.q;
    p.theta = c.theta;
    p.f = c.f;
    p.h = c.h;
    if (!c.g.empty() && !c.g_sym.empty()) throw InvalidArgument("--g and --g-symmetrize are exclusive");
    p.g = c.g.empty() ? c.g_sym : c.g;
    p.g_symmetrized = !c.g_sym.empty();
    if (!c.variant.empty()) {
        if (!has_variant(p.id)) throw InvalidArgument("--variant applies to bound-2.9 and bound-2.10 only");
        p.variant = c.variant == "exact" ? CAlphaVariant::exact : CAlphaVariant::small_alpha;
    }
    return p;
}

inline void emit(std::ostream& out, const VerificationReport& r, OutputFormat f) {
    switch (f) {
    case OutputFormat::json: out << to_json(r) << '\n'; break;
    case OutputFormat::csv: out << to_csv_row(r) << '\n'; break;
    case OutputFormat::text: out << to_text(r); break;
    }
}

inline std::vector<double> parse_list(const std::string& text, const char* what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(hhf::detail::to_double(what, std::string(hhf::detail::trim(item))));
    }
    if (out.empty()) throw InvalidArgument(std::string(what) + " must not be empty");
    return out;
}

inline ConstantFamily family_of(const std::string& name, const std::string& variant) {
    if (name == "zeta") return ConstantFamily::zeta;
    if (name == "c-alpha") return variant == "small-alpha" ? ConstantFamily::c_alpha_small : ConstantFamily::c_alpha_exact;
    return ConstantFamily::c_alpha_q;
}

} // namespace detail

/// Runs the tool on args (without the program name).
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Numerical verification of Hermite-Hadamard-Fejer inequalities for harmonically convex functions",
                 "hhfcheck"};
    app.set_help_flag("--help", "print this help and exit");
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    detail::Shared shared;
    detail::CaseFlags cf;

    auto* verify_cmd = app.add_subcommand("verify", "evaluate one catalog entry");
    detail::add_run_options(*verify_cmd, shared, true);
    verify_cmd->add_option("--ineq", cf.ineq, "catalog entry")->required();
    verify_cmd->add_option("--f", cf.f, "f(x)");
    verify_cmd->add_option("--g", cf.g, "weight g(x)");
    verify_cmd->add_option("--g-symmetrize", cf.g_sym, "weight given as the symmetrization of g(x)");
    verify_cmd->add_option("--h", cf.h, "h(x)");
    verify_cmd->add_option("--a", cf.a, "left endpoint")->required();
    verify_cmd->add_option("--b", cf.b, "right endpoint")->required();
    verify_cmd->add_option("--alpha", cf.alpha, "fractional order");
    verify_cmd->add_option("--q", cf.q, "Holder exponent");
    verify_cmd->add_option("--theta", cf.theta, "exponent for lemma-1");
    verify_cmd->add_option("--variant", cf.variant, "constant variant for bound-2.9/2.10")
        ->check(CLI::IsMember({"exact", "small-alpha"}));

    std::size_t count = 500;
    std::string alpha_list = "0.3,0.5,1,1.5,2.5";
    std::string q_list = "1.2,2,3";
    auto* sweep_cmd = app.add_subcommand("sweep", "randomized campaign over the whole catalog");
    detail::add_run_options(*sweep_cmd, shared, true);
    sweep_cmd->add_option("--count", count, "number of random draws");
    sweep_cmd->add_option("--alpha-list", alpha_list, "comma-separated fractional orders");
    sweep_cmd->add_option("--q-list", q_list, "comma-separated Holder exponents");
    sweep_cmd->add_option("--jobs", shared.cfg.jobs, "worker threads");

    std::string family;
    auto* constants_cmd = app.add_subcommand("constants", "print a bound-constant family");
    detail::add_run_options(*constants_cmd, shared, false);
    constants_cmd->add_option("--family", family, "zeta | c-alpha | c-alpha-q")
        ->required()
        ->check(CLI::IsMember({"zeta", "c-alpha", "c-alpha-q"}));
    constants_cmd->add_option("--h", cf.h, "h(x) for zeta");
    constants_cmd->add_option("--a", cf.a, "left endpoint")->required();
    constants_cmd->add_option("--b", cf.b, "right endpoint")->required();
    constants_cmd->add_option("--alpha", cf.alpha, "fractional order");
    constants_cmd->add_option("--q", cf.q, "Holder exponent");
    constants_cmd->add_option("--variant", cf.variant, "exact | small-alpha")
        ->check(CLI::IsMember({"exact", "small-alpha"}));

    double s_exp = 1.0;
    auto* classify_cmd = app.add_subcommand("classify", "grid-check convexity classes of f");
    classify_cmd->add_option("--config", shared.config_path, "key=value configuration file");
    classify_cmd->add_option("--out", shared.out_text, "output format")->check(CLI::IsMember({"json", "csv", "text"}));
    classify_cmd->add_option("--f", cf.f, "f(x)")->required();
    classify_cmd->add_option("--a", cf.a, "left endpoint")->required();
    classify_cmd->add_option("--b", cf.b, "right endpoint")->required();
    classify_cmd->add_option("--s", s_exp, "harmonic s-convexity exponent in (0,1]");
    classify_cmd->add_option("--grid", shared.grid_text, "grid nx,ny,nt");

    try {
        args = detail::merge_config(std::move(args));
        std::reverse(args.begin(), args.end());
        app.parse(args);
        detail::finish(shared);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? 0 : exit_usage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }

    const RunConfig& cfg = shared.cfg;
    try {
        if (*verify_cmd) {
            const VerificationReport r = verify(detail::to_params(cf), cfg);
            if (cfg.out == OutputFormat::csv) out << csv_header << '\n';
            detail::emit(out, r, cfg.out);
            return exit_code(r.status);
        }
        if (*sweep_cmd) {
            SweepOptions opt;
            opt.count = count;
            opt.alphas = detail::parse_list(alpha_list, "alpha-list");
            opt.qs = detail::parse_list(q_list, "q-list");
            for (double a : opt.alphas) FracOrder check(a);
            for (double q : opt.qs)
                if (!(q > 1.0)) throw InvalidArgument("q-list entries must be > 1");
            const auto reports = run_sweep(opt, cfg);
            const SweepSummary sum = summarize(reports, opt.count);
            if (cfg.out == OutputFormat::csv) out << csv_header << '\n';
            for (const auto& r : reports) detail::emit(out, r, cfg.out);
            switch (cfg.out) {
            case OutputFormat::json: out << to_json(sum) << '\n'; break;
            case OutputFormat::text: out << to_text(sum) << '\n'; break;
            case OutputFormat::csv: err << to_text(sum) << '\n'; break;
            }
            return sum.exit_code();
        }
        if (*constants_cmd) {
            const Interval iv(cf.a, cf.b);
            const ConstantsMode mode = cfg.strict_paper ? ConstantsMode::strict_paper : ConstantsMode::consistent;
            BoundConstants k;
            oracle::ConstantsSpec spec;
            spec.mode = mode;
            spec.family = detail::family_of(family, cf.variant);
            std::optional<Expr> h;
            if (family == "zeta") {
                if (cf.h.empty()) throw InvalidArgument("--family zeta requires --h");
                h = Expr::parse(cf.h);
                k = zeta_constants(*h, iv, mode, cfg.tol);
                spec.h = [e = *h](double x) { return e(x); };
            } else {
                if (!cf.alpha) throw InvalidArgument("--family " + family + " requires --alpha");
                const FracOrder order(*cf.alpha);
                spec.alpha = *cf.alpha;
                if (family == "c-alpha") {
                    k = c_alpha_constants(iv, order,
                                          cf.variant == "small-alpha" ? CAlphaVariant::small_alpha
                                                                      : CAlphaVariant::exact,
                                          mode, cfg.tol);
                } else {
                    if (!cf.q) throw InvalidArgument("--family c-alpha-q requires --q");
                    if (!(*cf.q > 1.0)) throw InvalidArgument("q must be > 1");
                    spec.q = *cf.q;
                    k = c_alpha_q_constants(iv, order, *cf.q, mode, cfg.tol);
                }
            }
            std::optional<BoundConstants> ref;
            if (cfg.oracle) ref = oracle::oracle_constants(iv, spec, cfg.oracle_n);
            out << constants_table(k, ref, cf.a, cf.b, cfg);
            return 0;
        }
        if (*classify_cmd) {
            const Interval iv(cf.a, cf.b);
            const Expr f = Expr::parse(cf.f);
            const Fn fn = [f](double x) { return f(x); };
            const ConvexityReport hc = check_harmonically_convex(fn, iv, cfg.grid, s_exp);
            const PropositionReport prop = classify_via_proposition(fn, iv, cfg.grid);
            out << classification(cf.f, cf.a, cf.b, hc, prop, cfg.out);
            return hc.passed() ? 0 : 1;
        }
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const NumericalFailure& e) {
        err << "numerical failure: " << e.what() << '\n';
        return exit_numerical;
    } catch (const DomainError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return exit_numerical;
    }
    return exit_usage;
}

inline int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(std::move(args), out, err);
}

} // namespace hhf::cli

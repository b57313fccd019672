#pragma once

/**
 * @file report.hpp
 * @brief JSON, CSV and text renderings of verification reports.
 *
 * Numbers are written with %.17g so every double round-trips; non-finite
 * values become null. JSON reports are single lines (JSON Lines).
 */

#include "hhf/config.hpp"
#include "hhf/convexity.hpp"
#include "hhf/oracle.hpp"
#include "hhf/sweep.hpp"
#include "hhf/verify.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>

namespace hhf {

/// Minimal streaming JSON emitter; the caller is responsible for structure.
class JsonWriter {
public:
    explicit JsonWriter(std::string& out) : out_(out) {}

    JsonWriter& begin_object() { return open('{'); }
    JsonWriter& end_object() { return close('}'); }
    JsonWriter& begin_array() { return open('['); }
    JsonWriter& end_array() { return close(']'); }

    JsonWriter& key(std::string_view k) {
        separate();
        string_literal(k);
        out_ += ':';
        after_key_ = true;
        return *this;
    }

    JsonWriter& value(double v) {
        separate();
        if (!std::isfinite(v)) {
            out_ += "null";
        } else {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", v);
            out_ += buf;
        }
        return *this;
    }
    JsonWriter& value(std::uint64_t v) {
        separate();
        out_ += std::to_string(v);
        return *this;
    }
    JsonWriter& value(bool v) {
        separate();
        out_ += v ? "true" : "false";
        return *this;
    }
    JsonWriter& value(std::string_view s) {
        separate();
        string_literal(s);
        return *this;
    }
    JsonWriter& value(const char* s) { return value(std::string_view(s)); }
    JsonWriter& null() {
        separate();
        out_ += "null";
        return *this;
    }

    template <class T>
    JsonWriter& field(std::string_view k, const T& v) {
        key(k);
        return value(v);
    }

    template <class T>
    JsonWriter& optional_field(std::string_view k, const std::optional<T>& v) {
        if (v) field(k, *v);
        return *this;
    }

private:
    JsonWriter& open(char c) {
        separate();
        out_ += c;
        first_ = true;
        return *this;
    }
    JsonWriter& close(char c) {
        out_ += c;
        first_ = false;
        return *this;
    }
    void separate() {
        if (after_key_) {
            after_key_ = false;
            return;
        }
        if (!first_) out_ += ',';
        first_ = false;
    }
    void string_literal(std::string_view s) {
        out_ += '"';
        for (const char c : s) {
            switch (c) {
            case '"': out_ += "\\\""; break;
            case '\\': out_ += "\\\\"; break;
            case '\n': out_ += "\\n"; break;
            case '\r': out_ += "\\r"; break;
            case '\t': out_ += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", static_cast<unsigned>(c));
                    out_ += buf;
                } else {
                    out_ += c;
                }
            }
        }
        out_ += '"';
    }

    std::string& out_;
    bool first_ = true;
    bool after_key_ = false;
};

namespace detail {

inline void write_text_or_null(JsonWriter& w, std::string_view k, const std::string& s) {
    w.key(k);
    if (s.empty()) w.null();
    else w.value(std::string_view(s));
}

inline void write_constants(JsonWriter& w, const BoundConstants& k) {
    w.key("constants").begin_object();
    w.field("family", to_string(k.family));
    w.field("mode", k.mode == ConstantsMode::consistent ? "consistent" : "strict-paper");
    if (k.alpha > 0.0) w.field("alpha", k.alpha);
    if (k.q > 0.0) w.field("q", k.q);
    w.field("c1", k.c1()).field("c2", k.c2()).field("c3", k.c3());
    w.end_object();
}

} // namespace detail

inline std::string to_json(const VerificationReport& r) {
    std::string out;
    JsonWriter w(out);
    const CaseParams& p = r.params;
    w.begin_object();
    w.field("inequality", to_string(p.id));

    w.key("params").begin_object();
    w.field("a", p.a).field("b", p.b);
    w.optional_field("alpha", p.alpha);
    w.optional_field("q", p.q);
    w.optional_field("theta", p.theta);
    detail::write_text_or_null(w, "f", p.f);
    detail::write_text_or_null(w, "g", p.g);
    w.field("g_symmetrized", p.g_symmetrized);
    detail::write_text_or_null(w, "h", p.h);
    if (p.variant) w.field("variant", to_string(*p.variant));
    if (p.case_index) w.field("case", static_cast<std::uint64_t>(*p.case_index));
    w.optional_field("seed", p.seed);
    w.key("flags").begin_object().field("strict_paper", r.strict_paper).field("force", r.force).end_object();
    w.end_object();

    w.key("sides");
    if (r.sides) {
        w.begin_object().field("lhs", r.sides->lhs);
        w.optional_field("mid", r.sides->mid);
        w.field("rhs", r.sides->rhs).end_object();
    } else {
        w.null();
    }
    w.key("margin");
    if (const auto m = r.margin()) w.value(*m);
    else w.null();
    w.field("quad_error_budget", r.quad_error_budget());

    w.key("hypothesis_checks").begin_array();
    for (const auto& c : r.hypothesis_checks) {
        w.begin_object()
            .field("name", std::string_view(c.name))
            .field("status", c.passed ? "pass" : "fail")
            .field("max_violation", c.max_violation)
            .end_object();
    }
    w.end_array();
    w.field("status", to_string(r.status));
    if (r.sides && r.sides->constants) detail::write_constants(w, *r.sides->constants);
    if (r.oracle_crosscheck) {
        const auto& x = *r.oracle_crosscheck;
        w.key("oracle_crosscheck").begin_object();
        w.field("method", std::string_view(x.method));
        w.key("gaps").begin_array();
        for (const auto& g : x.gaps)
            w.begin_object()
                .field("quantity", std::string_view(g.quantity))
                .field("engine", g.engine)
                .field("oracle", g.oracle)
                .field("relative_gap", g.relative_gap)
                .end_object();
        w.end_array();
        if (x.rng) w.field("rng", std::string_view(*x.rng));
        w.optional_field("seed", x.seed);
        w.optional_field("mc_sigmas", x.mc_sigmas);
        w.end_object();
    }
    if (!r.diagnostic.empty()) w.field("diagnostic", std::string_view(r.diagnostic));
    w.end_object();
    return out;
}

inline std::string to_json(const SweepSummary& s) {
    std::string out;
    JsonWriter w(out);
    w.begin_object().key("summary").begin_object();
    w.field("cases", static_cast<std::uint64_t>(s.cases));
    w.field("reports", static_cast<std::uint64_t>(s.reports));
    w.field("pass", static_cast<std::uint64_t>(s.pass));
    w.field("fail", static_cast<std::uint64_t>(s.fail));
    w.field("hypothesis_rejected", static_cast<std::uint64_t>(s.hypothesis_rejected));
    w.field("numerical_failure", static_cast<std::uint64_t>(s.numerical_failure));
    w.key("worst_margin");
    if (s.worst_margin) w.value(*s.worst_margin);
    else w.null();
    w.key("worst_inequality");
    if (s.worst_inequality) w.value(std::string_view(*s.worst_inequality));
    else w.null();
    w.end_object().end_object();
    return out;
}

// ---------------------------------------------------------------------- CSV

inline constexpr const char* csv_header =
    "case,inequality,a,b,alpha,q,theta,f,g,g_symmetrized,h,variant,strict_paper,force,lhs,mid,rhs,margin,"
    "quad_error_budget,status";

namespace detail {

inline std::string csv_quote(std::string_view s) {
    if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

inline std::string csv_num(std::optional<double> v) { return v ? fmt17(*v) : std::string(); }

} // namespace detail

inline std::string to_csv_row(const VerificationReport& r) {
    const CaseParams& p = r.params;
    std::ostringstream os;
    os << (p.case_index ? std::to_string(*p.case_index) : std::string()) << ',' << to_string(p.id) << ','
       << detail::fmt17(p.a) << ',' << detail::fmt17(p.b) << ',' << detail::csv_num(p.alpha) << ','
       << detail::csv_num(p.q) << ',' << detail::csv_num(p.theta) << ',' << detail::csv_quote(p.f) << ','
       << detail::csv_quote(p.g) << ',' << (p.g_symmetrized ? "true" : "false") << ',' << detail::csv_quote(p.h)
       << ',' << (p.variant ? to_string(*p.variant) : "") << ',' << (r.strict_paper ? "true" : "false") << ','
       << (r.force ? "true" : "false") << ',';
    if (r.sides)
        os << detail::fmt17(r.sides->lhs) << ',' << detail::csv_num(r.sides->mid) << ','
           << detail::fmt17(r.sides->rhs) << ',' << detail::fmt17(r.sides->margin()) << ',';
    else
        os << ",,,,";
    os << detail::fmt17(r.quad_error_budget()) << ',' << to_string(r.status);
    return os.str();
}

// --------------------------------------------------------------------- text

inline std::string to_text(const VerificationReport& r) {
    using detail::fmt17;
    const CaseParams& p = r.params;
    std::ostringstream os;
    os << to_string(p.id) << ": " << to_string(r.status) << '\n';
    os << "  interval     [" << fmt17(p.a) << ", " << fmt17(p.b) << "]\n";
    if (!p.f.empty()) os << "  f            " << p.f << '\n';
    if (!p.g.empty()) os << "  g            " << (p.g_symmetrized ? "symmetrize(" + p.g + ")" : p.g) << '\n';
    if (!p.h.empty()) os << "  h            " << p.h << '\n';
    if (p.alpha) os << "  alpha        " << fmt17(*p.alpha) << '\n';
    if (p.q) os << "  q            " << fmt17(*p.q) << '\n';
    if (p.theta) os << "  theta        " << fmt17(*p.theta) << '\n';
    if (p.variant) os << "  variant      " << to_string(*p.variant) << '\n';
    if (r.strict_paper) os << "  mode         strict-paper\n";
    for (const auto& c : r.hypothesis_checks)
        os << "  check        " << c.name << ": " << (c.passed ? "pass" : "fail")
           << " (max violation " << fmt17(c.max_violation) << ")\n";
    if (r.sides) {
        os << "  lhs          " << fmt17(r.sides->lhs) << '\n';
        if (r.sides->mid) os << "  mid          " << fmt17(*r.sides->mid) << '\n';
        os << "  rhs          " << fmt17(r.sides->rhs) << '\n';
        os << "  margin       " << fmt17(r.sides->margin()) << '\n';
        os << "  error budget " << fmt17(r.sides->quad_error_budget) << '\n';
        if (const auto& k = r.sides->constants)
            os << "  constants    " << to_string(k->family) << " (" << fmt17(k->c1()) << ", " << fmt17(k->c2())
               << ", " << fmt17(k->c3()) << ")\n";
    }
    if (r.oracle_crosscheck) {
        os << "  oracle       " << r.oracle_crosscheck->method << '\n';
        for (const auto& g : r.oracle_crosscheck->gaps)
            os << "    " << g.quantity << ": relative gap " << fmt17(g.relative_gap) << '\n';
        if (r.oracle_crosscheck->mc_sigmas)
            os << "    monte carlo (" << *r.oracle_crosscheck->rng << ", seed " << *r.oracle_crosscheck->seed
               << "): " << fmt17(*r.oracle_crosscheck->mc_sigmas) << " stderr\n";
    }
    if (!r.diagnostic.empty()) os << "  note         " << r.diagnostic << '\n';
    return os.str();
}

inline std::string to_text(const SweepSummary& s) {
    std::ostringstream os;
    os << "summary: " << s.cases << " cases, " << s.reports << " reports, " << s.pass << " PASS, " << s.fail
       << " FAIL, " << s.hypothesis_rejected << " HYPOTHESIS-REJECTED, " << s.numerical_failure
       << " NUMERICAL-FAILURE";
    if (s.worst_margin)
        os << ", worst margin " << detail::fmt17(*s.worst_margin) << " (" << *s.worst_inequality << ")";
    return os.str();
}

// ---------------------------------------------------------------- constants

inline std::string constants_table(const BoundConstants& k, const std::optional<BoundConstants>& ref, double a,
                                   double b, const RunConfig& cfg) {
    using detail::fmt17;
    static constexpr const char* names[] = {"c1", "c2", "c3"};
    const char* mode = k.mode == ConstantsMode::consistent ? "consistent" : "strict-paper";
    std::ostringstream os;
    if (cfg.out == OutputFormat::json) {
        std::string out;
        JsonWriter w(out);
        w.begin_object().field("family", to_string(k.family)).field("mode", mode).field("a", a).field("b", b);
        if (k.alpha > 0.0) w.field("alpha", k.alpha);
        if (k.q > 0.0) w.field("q", k.q);
        w.key("engine").begin_object();
        for (std::size_t i = 0; i < 3; ++i) w.field(names[i], k.c[i].value);
        w.end_object();
        w.key("engine_error").begin_object();
        for (std::size_t i = 0; i < 3; ++i) w.field(names[i], k.c[i].error);
        w.end_object();
        if (ref) {
            w.key("oracle").begin_object().field("method", "riemann-midpoint(" + std::to_string(cfg.oracle_n) + ")");
            for (std::size_t i = 0; i < 3; ++i) w.field(names[i], ref->c[i].value);
            w.end_object();
            w.key("relative_gap").begin_object();
            for (std::size_t i = 0; i < 3; ++i)
                w.field(names[i], oracle::relative_gap(k.c[i].value, ref->c[i].value));
            w.end_object();
        }
        w.end_object();
        os << out << '\n';
    } else if (cfg.out == OutputFormat::csv) {
        os << "constant,engine,engine_error" << (ref ? ",oracle,relative_gap" : "") << '\n';
        for (std::size_t i = 0; i < 3; ++i) {
            os << names[i] << ',' << fmt17(k.c[i].value) << ',' << fmt17(k.c[i].error);
            if (ref) os << ',' << fmt17(ref->c[i].value) << ',' << fmt17(oracle::relative_gap(k.c[i].value, ref->c[i].value));
            os << '\n';
        }
    } else {
        os << to_string(k.family) << " on [" << fmt17(a) << ", " << fmt17(b) << "], " << mode;
        if (k.alpha > 0.0) os << ", alpha " << fmt17(k.alpha);
        if (k.q > 0.0) os << ", q " << fmt17(k.q);
        os << '\n';
        for (std::size_t i = 0; i < 3; ++i) {
            os << "  " << names[i] << "  engine " << fmt17(k.c[i].value);
            if (ref)
                os << "  oracle " << fmt17(ref->c[i].value) << "  relative gap "
                   << fmt17(oracle::relative_gap(k.c[i].value, ref->c[i].value));
            os << '\n';
        }
    }
    return os.str();
}

// ----------------------------------------------------------------- classify

namespace detail {

inline void write_convexity(JsonWriter& w, const ConvexityReport& r) {
    w.begin_object();
    w.field("class_tested", to_string(r.class_tested)).field("s", r.s);
    w.key("grid").begin_array();
    w.value(static_cast<std::uint64_t>(r.grid.nx)).value(static_cast<std::uint64_t>(r.grid.ny));
    w.value(static_cast<std::uint64_t>(r.grid.nt));
    w.end_array();
    w.field("max_violation", r.max_violation).field("tolerance", r.tolerance);
    w.key("witness");
    if (r.witness) w.begin_object().field("x", (*r.witness)[0]).field("y", (*r.witness)[1]).field("t", (*r.witness)[2]).end_object();
    else w.null();
    w.field("passed", r.passed()).field("verdict", std::string_view(r.verdict()));
    w.end_object();
}

inline void text_convexity(std::ostream& os, const char* label, const ConvexityReport& r) {
    os << "  " << label << ": " << to_string(r.class_tested);
    if (r.class_tested == ConvexityClass::harmonically_s_convex) os << " (s = " << fmt17(r.s) << ")";
    os << ", max violation " << fmt17(r.max_violation) << ", " << r.verdict();
    if (r.witness)
        os << ", witness x=" << fmt17((*r.witness)[0]) << " y=" << fmt17((*r.witness)[1])
           << " t=" << fmt17((*r.witness)[2]);
    os << '\n';
}

} // namespace detail

inline std::string classification(const std::string& f, double a, double b, const ConvexityReport& tested,
                                  const PropositionReport& prop, OutputFormat fmt) {
    using detail::fmt17;
    std::ostringstream os;
    if (fmt == OutputFormat::json) {
        std::string out;
        JsonWriter w(out);
        w.begin_object().field("f", std::string_view(f)).field("a", a).field("b", b);
        w.key("report");
        detail::write_convexity(w, tested);
        w.key("convex");
        detail::write_convexity(w, prop.convex);
        w.key("harmonically_convex");
        detail::write_convexity(w, prop.harmonic);
        w.key("monotone").begin_object().field("nondecreasing", prop.monotone.nondecreasing)
            .field("nonincreasing", prop.monotone.nonincreasing).end_object();
        w.key("rules").begin_array();
        for (const auto& r : prop.rules) {
            w.begin_object().field("rule", static_cast<std::uint64_t>(r.rule)).field("statement", std::string_view(r.statement))
                .field("applicable", r.applicable).field("fires", r.fires);
            w.key("agrees_with_direct");
            if (r.agrees_with_direct) w.value(*r.agrees_with_direct);
            else w.null();
            w.end_object();
        }
        w.end_array().end_object();
        os << out << '\n';
    } else if (fmt == OutputFormat::csv) {
        os << "check,class,s,max_violation,passed,witness_x,witness_y,witness_t\n";
        auto row = [&](const char* name, const ConvexityReport& r) {
            os << name << ',' << to_string(r.class_tested) << ',' << fmt17(r.s) << ',' << fmt17(r.max_violation) << ','
               << (r.passed() ? "true" : "false");
            if (r.witness) os << ',' << fmt17((*r.witness)[0]) << ',' << fmt17((*r.witness)[1]) << ',' << fmt17((*r.witness)[2]);
            else os << ",,,";
            os << '\n';
        };
        row("report", tested);
        row("convex", prop.convex);
        row("harmonically_convex", prop.harmonic);
    } else {
        os << "f(x) = " << f << " on [" << fmt17(a) << ", " << fmt17(b) << "]\n";
        detail::text_convexity(os, "tested", tested);
        detail::text_convexity(os, "convex", prop.convex);
        detail::text_convexity(os, "harmonic", prop.harmonic);
        os << "  monotone: " << (prop.monotone.nondecreasing ? "nondecreasing" : "")
           << (prop.monotone.nondecreasing && prop.monotone.nonincreasing ? " and " : "")
           << (prop.monotone.nonincreasing ? "nonincreasing" : "")
           << (!prop.monotone.nondecreasing && !prop.monotone.nonincreasing ? "neither" : "") << '\n';
        for (const auto& r : prop.rules) {
            os << "  rule " << r.rule << ": " << r.statement << " -- ";
            if (!r.applicable) os << "not applicable";
            else if (!r.fires) os << "does not fire";
            else os << "fires, direct check " << (*r.agrees_with_direct ? "agrees" : "DISAGREES");
            os << '\n';
        }
    }
    return os.str();
}

} // namespace hhf

#pragma once

/**
 * @file config.hpp
 * @brief Run configuration and its flat key=value file format.
 *
 * Keys mirror the long CLI flag names. Lines are `key = value`; `#` starts a
 * comment; blank lines are ignored. Booleans are true/false.
 */

#include "hhf/catalog.hpp"
#include "hhf/convexity.hpp"
#include "hhf/errors.hpp"
#include "hhf/fracquad.hpp"

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hhf {

enum class OutputFormat { json, csv, text };

inline const char* to_string(OutputFormat f) {
    switch (f) {
    case OutputFormat::json: return "json";
    case OutputFormat::csv: return "csv";
    case OutputFormat::text: return "text";
    }
    return "?";
}

inline OutputFormat parse_output_format(std::string_view s) {
    if (s == "json") return OutputFormat::json;
    if (s == "csv") return OutputFormat::csv;
    if (s == "text") return OutputFormat::text;
    throw InvalidArgument("unknown output format '" + std::string(s) + "'");
}

using KeyValues = std::vector<std::pair<std::string, std::string>>;

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

inline double to_double(const std::string& key, const std::string& v) {
    double out = 0.0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size()) throw InvalidArgument(key + ": not a number: " + v);
    return out;
}

template <class U>
U to_unsigned(const std::string& key, const std::string& v) {
    U out = 0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size()) throw InvalidArgument(key + ": not a count: " + v);
    return out;
}

inline bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw InvalidArgument(key + ": expected true or false, got " + v);
}

inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace detail

/// Parses the key=value format. Values keep inner whitespace.
inline KeyValues parse_key_values(std::string_view text) {
    KeyValues out;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw InvalidArgument("config line " + std::to_string(line_no) + ": expected key=value");
        const auto key = detail::trim(line.substr(0, eq));
        if (key.empty()) throw InvalidArgument("config line " + std::to_string(line_no) + ": empty key");
        out.emplace_back(std::string(key), std::string(detail::trim(line.substr(eq + 1))));
    }
    return out;
}

struct RunConfig {
    Tolerance tol;
    Grid3 grid;
    std::size_t symmetry_grid = 201;
    double symmetry_tol = 1e-10;
    std::size_t sup_grid = 1001;
    double sup_safety = 1e-6;
    std::size_t oracle_n = 1'000'000;
    std::uint64_t seed = 7;
    bool oracle = false;
    bool strict_paper = false;
    bool force = false;
    OutputFormat out = OutputFormat::json;
    unsigned jobs = 1;

    EvalOptions eval_options() const {
        EvalOptions o;
        o.tol = tol;
        o.mode = strict_paper ? ConstantsMode::strict_paper : ConstantsMode::consistent;
        o.sup_grid = sup_grid;
        o.sup_safety = sup_safety;
        return o;
    }

    void validate() const {
        if (!(tol.abs > 0.0) || !(tol.rel > 0.0)) throw InvalidArgument("tolerances must be > 0");
        if (tol.max_evaluations < 42) throw InvalidArgument("max-evals must be at least 42");
        if (grid.nx < 3 || grid.ny < 3 || grid.nt < 3) throw InvalidArgument("grid dimensions must be >= 3");
        if (symmetry_grid < 3 || sup_grid < 3) throw InvalidArgument("grid sizes must be >= 3");
        if (!(symmetry_tol > 0.0) || !(sup_safety >= 0.0)) throw InvalidArgument("invalid symmetry or sup setting");
        if (oracle_n < 1000) throw InvalidArgument("oracle-n must be >= 1000");
        if (jobs < 1) throw InvalidArgument("jobs must be >= 1");
    }

    /// Applies one key; returns false when the key is not a RunConfig key.
    bool apply(const std::string& key, const std::string& v) {
        if (key == "tol-abs") tol.abs = detail::to_double(key, v);
        else if (key == "tol-rel") tol.rel = detail::to_double(key, v);
        else if (key == "max-evals") tol.max_evaluations = detail::to_unsigned<std::size_t>(key, v);
        else if (key == "grid") grid = parse_grid(v);
        else if (key == "symmetry-grid") symmetry_grid = detail::to_unsigned<std::size_t>(key, v);
        else if (key == "symmetry-tol") symmetry_tol = detail::to_double(key, v);
        else if (key == "sup-grid") sup_grid = detail::to_unsigned<std::size_t>(key, v);
        else if (key == "sup-safety") sup_safety = detail::to_double(key, v);
        else if (key == "oracle-n") oracle_n = detail::to_unsigned<std::size_t>(key, v);
        else if (key == "seed") seed = detail::to_unsigned<std::uint64_t>(key, v);
        else if (key == "oracle") oracle = detail::to_bool(key, v);
        else if (key == "strict-paper") strict_paper = detail::to_bool(key, v);
        else if (key == "force") force = detail::to_bool(key, v);
        else if (key == "out") out = parse_output_format(v);
        else if (key == "jobs") jobs = detail::to_unsigned<unsigned>(key, v);
        else return false;
        return true;
    }

    static Grid3 parse_grid(const std::string& v) {
        Grid3 g;
        std::size_t* dims[] = {&g.nx, &g.ny, &g.nt};
        std::size_t pos = 0;
        for (int i = 0; i < 3; ++i) {
            const auto comma = v.find(',', pos);
            if ((i < 2) == (comma == std::string::npos)) throw InvalidArgument("grid must be nx,ny,nt");
            *dims[i] = detail::to_unsigned<std::size_t>("grid", v.substr(pos, comma - pos));
            pos = comma + 1;
        }
        return g;
    }

    static RunConfig from_text(std::string_view text) {
        RunConfig c;
        for (const auto& [k, v] : parse_key_values(text))
            if (!c.apply(k, v)) throw InvalidArgument("unknown config key '" + k + "'");
        c.validate();
        return c;
    }

    std::string to_text() const {
        std::ostringstream os;
        os << "tol-abs = " << detail::fmt17(tol.abs) << '\n'
           << "tol-rel = " << detail::fmt17(tol.rel) << '\n'
           << "max-evals = " << tol.max_evaluations << '\n'
           << "grid = " << grid.nx << ',' << grid.ny << ',' << grid.nt << '\n'
           << "symmetry-grid = " << symmetry_grid << '\n'
           << "symmetry-tol = " << detail::fmt17(symmetry_tol) << '\n'
           << "sup-grid = " << sup_grid << '\n'
           << "sup-safety = " << detail::fmt17(sup_safety) << '\n'
           << "oracle-n = " << oracle_n << '\n'
           << "seed = " << seed << '\n'
           << "oracle = " << (oracle ? "true" : "false") << '\n'
           << "strict-paper = " << (strict_paper ? "true" : "false") << '\n'
           << "force = " << (force ? "true" : "false") << '\n'
           << "out = " << to_string(out) << '\n'
           << "jobs = " << jobs << '\n';
        return os.str();
    }

    friend bool operator==(const RunConfig& x, const RunConfig& y) {
        return x.tol.abs == y.tol.abs && x.tol.rel == y.tol.rel && x.tol.max_evaluations == y.tol.max_evaluations &&
               x.grid == y.grid && x.symmetry_grid == y.symmetry_grid && x.symmetry_tol == y.symmetry_tol &&
               x.sup_grid == y.sup_grid && x.sup_safety == y.sup_safety && x.oracle_n == y.oracle_n &&
               x.seed == y.seed && x.oracle == y.oracle && x.strict_paper == y.strict_paper &&
               x.force == y.force && x.out == y.out && x.jobs == y.jobs;
    }
};

} // namespace hhf

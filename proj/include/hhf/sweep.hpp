#pragma once

/**
 * @file sweep.hpp
 * @brief Randomized verification campaign.
 *
 * Each case draws an interval and a function family whose hypotheses hold by
 * construction, then runs every catalog entry on it:
 *
 *     A: c0 + c1 x + c2 x^p + c3 exp(k x)   increasing and convex, so f, |f'|
 *                                           and |f'|^q are harmonically convex
 *     B: c0 + c x^(-m), 1 <= m <= 2          f(1/u) = c0 + c u^m is convex
 *     C: c0 + c ln(x)                        |f'| = c/x is affine in 1/x
 *
 * Weights are symmetrizations of positive bases; h ranges over positive
 * differentiable functions. Case i is generated from its own mt19937_64
 * stream seeded with splitmix64(seed + i), so cases are independent of each
 * other and of the thread count.
 */

#include "hhf/catalog.hpp"
#include "hhf/config.hpp"
#include "hhf/errors.hpp"
#include "hhf/verify.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <limits>
#include <random>
#include <string>
#include <thread>
#include <vector>

namespace hhf {

struct SweepOptions {
    std::size_t count = 500;
    std::vector<double> alphas = {0.3, 0.5, 1.0, 1.5, 2.5};
    std::vector<double> qs = {1.2, 2.0, 3.0};
};

struct SweepSummary {
    std::size_t cases = 0;
    std::size_t reports = 0;
    std::size_t pass = 0;
    std::size_t fail = 0;
    std::size_t hypothesis_rejected = 0;
    std::size_t numerical_failure = 0;
    std::optional<double> worst_margin;
    std::optional<std::string> worst_inequality;

    int exit_code() const {
        if (fail > 0) return 1;
        if (numerical_failure > 0) return 3;
        if (hypothesis_rejected > 0) return 4;
        return 0;
    }
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

class CaseRng {
public:
    explicit CaseRng(std::uint64_t seed) : gen_(seed) {}

    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(gen_() % n); }
    bool coin(double p) { return uniform() < p; }

    /// Rounded to 4 significant digits so expression texts stay readable.
    double coefficient(double lo, double hi) {
        const double v = uniform(lo, hi);
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.4g", v);
        return std::strtod(buf, nullptr);
    }

private:
    std::mt19937_64 gen_;
};

inline std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string join_terms(const std::vector<std::string>& terms) {
    std::string out;
    for (const auto& t : terms) {
        if (!out.empty()) out += " + ";
        out += t;
    }
    return out;
}

inline std::string random_f(CaseRng& rng) {
    const std::size_t family = rng.index(10);
    std::vector<std::string> terms;
    if (rng.coin(0.5)) terms.push_back(num(rng.coefficient(0.0, 2.0)));
    if (family < 6) {
        static constexpr double powers[] = {2.0, 2.5, 3.0, 4.0};
        if (rng.coin(0.6)) terms.push_back(num(rng.coefficient(0.01, 2.0)) + "*x");
        if (rng.coin(0.7)) terms.push_back(num(rng.coefficient(0.01, 1.0)) + "*x^" + num(powers[rng.index(4)]));
        if (rng.coin(0.5) || terms.size() < 2)
            terms.push_back(num(rng.coefficient(0.01, 1.0)) + "*exp(" + num(rng.coefficient(0.05, 1.0)) + "*x)");
    } else if (family < 8) {
        terms.push_back(num(rng.coefficient(0.01, 2.0)) + "/x^" + num(rng.coefficient(1.0, 2.0)));
    } else {
        terms.push_back(num(rng.coefficient(0.01, 2.0)) + "*ln(x)");
    }
    return join_terms(terms);
}

inline constexpr std::array<const char*, 6> weight_bases = {"1", "x", "x^2", "exp(-x)", "1/x", "2 + sin(x)"};
inline constexpr std::array<const char*, 6> h_corpus = {"x", "x^2", "exp(-x)", "1/x", "ln(1 + x)", "sqrt(x)"};

} // namespace detail

/// The fifteen catalog cases built from draw number `index`.
inline std::vector<CaseParams> sweep_cases(std::uint64_t seed, std::size_t index, const SweepOptions& opt) {
    if (opt.alphas.empty() || opt.qs.empty()) throw InvalidArgument("alpha and q lists must be nonempty");
    detail::CaseRng rng(detail::splitmix64(seed + index));

    const double a = rng.coefficient(0.1, 10.0 / 1.01);
    const double max_ratio = std::min(100.0, 10.0 / a);
    double b = a * std::exp(rng.uniform(std::log(1.01), std::log(max_ratio)));
    b = std::min(b, 10.0);
    if (!(b > a)) b = std::nextafter(a, 10.0);

    CaseParams base;
    base.a = a;
    base.b = b;
    base.f = detail::random_f(rng);
    base.g = detail::weight_bases[rng.index(detail::weight_bases.size())];
    base.g_symmetrized = true;
    base.h = detail::h_corpus[rng.index(detail::h_corpus.size())];
    const double alpha = opt.alphas[rng.index(opt.alphas.size())];
    const double q = opt.qs[rng.index(opt.qs.size())];
    base.case_index = index;
    base.seed = seed;

    std::vector<CaseParams> out;
    for (InequalityId id : all_inequalities) {
        CaseParams c = base;
        c.id = id;
        const Requirements req = requirements(id);
        if (req.alpha) c.alpha = alpha;
        // The small-alpha bound only exists for alpha <= 1.
        if (id == InequalityId::bound_2_10 && alpha > 1.0) c.alpha = 1.0 / alpha;
        if (req.q) c.q = q;
        if (req.theta) c.theta = std::min(alpha, 1.0 / alpha);
        if (!req.weight) {
            c.g.clear();
            c.g_symmetrized = false;
        }
        if (!req.h) c.h.clear();
        if (!req.f) c.f.clear();
        out.push_back(std::move(c));
    }
    return out;
}

/// Runs the campaign; reports are returned in case order whatever `jobs` is.
inline std::vector<VerificationReport> run_sweep(const SweepOptions& opt, const RunConfig& cfg) {
    if (opt.count == 0) throw InvalidArgument("sweep count must be positive");
    std::vector<std::vector<VerificationReport>> slots(opt.count);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= opt.count || failed.load()) return;
            try {
                for (const auto& c : sweep_cases(cfg.seed, i, opt)) slots[i].push_back(verify(c, cfg));
            } catch (...) {
                if (!failed.exchange(true)) failure = std::current_exception();
                return;
            }
        }
    };
    const unsigned jobs = std::max(1u, std::min<unsigned>(cfg.jobs, static_cast<unsigned>(opt.count)));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    std::vector<VerificationReport> out;
    out.reserve(opt.count * all_inequalities.size());
    for (auto& s : slots)
        for (auto& r : s) out.push_back(std::move(r));
    return out;
}

inline SweepSummary summarize(const std::vector<VerificationReport>& reports, std::size_t cases) {
    SweepSummary s;
    s.cases = cases;
    s.reports = reports.size();
    for (const auto& r : reports) {
        switch (r.status) {
        case Status::pass: ++s.pass; break;
        case Status::fail: ++s.fail; break;
        case Status::hypothesis_rejected: ++s.hypothesis_rejected; break;
        case Status::numerical_failure: ++s.numerical_failure; break;
        }
        if (const auto m = r.margin()) {
            if (!s.worst_margin || *m < *s.worst_margin) {
                s.worst_margin = *m;
                s.worst_inequality = std::string(to_string(r.params.id));
            }
        }
    }
    return s;
}

} // namespace hhf

#include "hhf/report.hpp"
#include "hhf/sweep.hpp"

#include <catch_amalgamated.hpp>

#include <set>
#include <string>

using namespace hhf;

namespace {

std::string stream(const std::vector<VerificationReport>& rs) {
    std::string out;
    for (const auto& r : rs) out += to_json(r) + '\n';
    return out;
}

} // namespace

TEST_CASE("case generation is a pure function of seed and index", "[sweep]") {
    const SweepOptions opt;
    const auto x = sweep_cases(7, 12, opt);
    const auto y = sweep_cases(7, 12, opt);
    REQUIRE(x.size() == all_inequalities.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        CHECK(x[i].f == y[i].f);
        CHECK(x[i].a == y[i].a);
        CHECK(x[i].b == y[i].b);
        CHECK(x[i].id == all_inequalities[i]);
    }
    CHECK(sweep_cases(7, 13, opt)[0].f != x[0].f);
    CHECK(sweep_cases(8, 12, opt)[0].a != x[0].a);
}

TEST_CASE("generated cases respect the sampling contract", "[sweep][property]") {
    SweepOptions opt;
    std::set<std::string> seen_alpha;
    for (std::size_t i = 0; i < 300; ++i) {
        for (const auto& c : sweep_cases(7, i, opt)) {
            CHECK(c.a > 0.1 - 1e-12);
            CHECK(c.b <= 10.0);
            CHECK(c.b > c.a);
            CHECK(c.b / c.a <= 100.0 * (1.0 + 1e-12));
            const Requirements req = requirements(c.id);
            CHECK(c.alpha.has_value() == req.alpha);
            CHECK(c.q.has_value() == req.q);
            if (c.id == InequalityId::bound_2_10) CHECK(*c.alpha <= 1.0);
            if (c.theta) CHECK((*c.theta > 0.0 && *c.theta <= 1.0));
            if (req.weight) CHECK(c.g_symmetrized);
            if (c.alpha && c.id != InequalityId::bound_2_10) seen_alpha.insert(std::to_string(*c.alpha));
        }
    }
    CHECK(seen_alpha.size() == opt.alphas.size());
}

TEST_CASE("small sweep passes and is independent of the worker count", "[sweep]") {
    SweepOptions opt;
    opt.count = 6;
    RunConfig one;
    RunConfig three = one;
    three.jobs = 3;
    const auto a = run_sweep(opt, one);
    const auto b = run_sweep(opt, three);
    REQUIRE(a.size() == 6 * all_inequalities.size());
    CHECK(stream(a) == stream(b));
    const auto s = summarize(a, opt.count);
    CHECK(s.fail == 0);
    CHECK(s.numerical_failure == 0);
    CHECK(s.hypothesis_rejected == 0);
    CHECK(s.pass == a.size());
    CHECK(s.exit_code() == 0);
}

TEST_CASE("sweep rejects empty input", "[sweep]") {
    SweepOptions opt;
    opt.count = 0;
    CHECK_THROWS_AS(run_sweep(opt, RunConfig{}), InvalidArgument);
    opt.count = 1;
    opt.alphas.clear();
    CHECK_THROWS_AS(sweep_cases(1, 0, opt), InvalidArgument);
}

TEST_CASE("summary precedence of exit codes", "[sweep]") {
    SweepSummary s;
    CHECK(s.exit_code() == 0);
    s.hypothesis_rejected = 1;
    CHECK(s.exit_code() == 4);
    s.numerical_failure = 1;
    CHECK(s.exit_code() == 3);
    s.fail = 1;
    CHECK(s.exit_code() == 1);
}

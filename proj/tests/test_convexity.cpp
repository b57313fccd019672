#include "hhf/convexity.hpp"
#include "hhf/expr.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <vector>

using namespace hhf;

namespace {

// f is harmonically convex on [a,b] iff u -> f(1/u) is convex on [1/b, 1/a];
// checked here by second differences on a uniform u-grid.
bool reciprocal_convex(const Fn& f, const Interval& iv, std::size_t n = 2001) {
    const double lo = 1.0 / iv.b(), hi = 1.0 / iv.a();
    const double h = (hi - lo) / static_cast<double>(n - 1);
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = f(1.0 / (lo + static_cast<double>(i) * h));
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double scale = std::max({1.0, std::abs(v[i - 1]), std::abs(v[i + 1])});
        if ((v[i - 1] - 2.0 * v[i] + v[i + 1]) / scale < -1e-12) return false;
    }
    return true;
}

bool plain_convex(const Fn& f, const Interval& iv, std::size_t n = 2001) {
    const double h = (iv.b() - iv.a()) / static_cast<double>(n - 1);
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = f(iv.a() + static_cast<double>(i) * h);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double scale = std::max({1.0, std::abs(v[i - 1]), std::abs(v[i + 1])});
        if ((v[i - 1] - 2.0 * v[i] + v[i + 1]) / scale < -1e-12) return false;
    }
    return true;
}

Fn fn(const char* text) {
    return [e = Expr::parse(text)](double x) { return e(x); };
}

} // namespace

TEST_CASE("corpus classification agrees with the reciprocal-variable oracle", "[convexity]") {
    for (const auto& c : convexity_corpus) {
        for (const auto& iv : {Interval(1.0, 2.0), Interval(0.2, 5.0), Interval(3.0, 3.5)}) {
            INFO(c.text << " on [" << iv.a() << ", " << iv.b() << "]");
            const Fn f = fn(c.text);
            const auto rep = check_harmonically_convex(f, iv);
            CHECK(rep.passed() == c.harmonically_convex);
            CHECK(reciprocal_convex(f, iv) == c.harmonically_convex);
            CHECK(check_convex(f, iv).passed() == c.convex);
            CHECK(plain_convex(f, iv) == c.convex);
        }
    }
}

TEST_CASE("a violation carries a reproducible witness", "[convexity]") {
    const Interval iv(1.0, 2.0);
    const Fn f = fn("-x^2");
    const auto rep = check_harmonically_convex(f, iv);
    REQUIRE_FALSE(rep.passed());
    REQUIRE(rep.witness);
    const auto [x, y, t] = *rep.witness;
    const double p = x * y / (t * x + (1.0 - t) * y);
    const double gap = f(p) - (t * f(y) + (1.0 - t) * f(x));
    CHECK(gap > 0.0);
    CHECK(gap / std::max(1.0, std::abs(t * f(y) + (1.0 - t) * f(x))) == Catch::Approx(rep.max_violation));
    CHECK(rep.verdict().rfind("violation found", 0) == 0);
}

TEST_CASE("concavity is the reversed check", "[convexity]") {
    const Interval iv(1.0, 2.0);
    CHECK(check_harmonically_concave(fn("-ln(x)"), iv).passed());
    CHECK_FALSE(check_harmonically_concave(fn("x^2"), iv).passed());
    CHECK(check_harmonically_concave(fn("3"), iv).passed());
}

TEST_CASE("s-convexity for s < 1", "[convexity]") {
    const Interval iv(1.0, 2.0);
    const auto rep = check_harmonically_convex(fn("x"), iv, {}, 0.5);
    CHECK(rep.passed());
    CHECK(rep.class_tested == ConvexityClass::harmonically_s_convex);
    CHECK(rep.s == 0.5);
    // A negative constant is harmonically convex but not s-convex for s < 1:
    // t^s + (1-t)^s > 1 makes the right side more negative.
    CHECK(check_harmonically_convex(fn("-1"), iv).passed());
    CHECK_FALSE(check_harmonically_convex(fn("-1"), iv, {}, 0.5).passed());
    CHECK_THROWS_AS(check_harmonically_convex(fn("x"), iv, {}, 0.0), InvalidArgument);
    CHECK_THROWS_AS(check_harmonically_convex(fn("x"), iv, {}, 1.5), InvalidArgument);
}

TEST_CASE("refining the grid never hides a violation", "[convexity][property]") {
    const Interval iv(0.5, 3.0);
    for (const char* text : {"-x^2", "-ln(x)", "sin(x)", "x^2", "1/x"}) {
        const Grid3 g{9, 9, 5};
        const auto coarse = check_harmonically_convex(fn(text), iv, g);
        const auto fine = check_harmonically_convex(fn(text), iv, g.refined());
        INFO(text);
        CHECK(fine.max_violation >= coarse.max_violation);
        CHECK(fine.grid == Grid3{17, 17, 9});
    }
    CHECK_THROWS_AS(check_harmonically_convex(fn("x"), iv, Grid3{2, 9, 9}), InvalidArgument);
}

TEST_CASE("proposition rules", "[convexity]") {
    const Interval iv(1.0, 2.0);
    const auto sq = classify_via_proposition(fn("x^2"), iv);
    CHECK(sq.rules[0].fires);
    CHECK(sq.rules[0].agrees_with_direct == true);
    CHECK_FALSE(sq.rules[1].fires);
    CHECK_FALSE(sq.rules[2].applicable);
    CHECK_FALSE(sq.rules[3].applicable);

    const auto inv = classify_via_proposition(fn("1/x"), iv);
    CHECK(inv.rules[1].fires);
    CHECK(inv.rules[1].agrees_with_direct == true);

    const auto neg = classify_via_proposition(fn("-x^2"), iv);
    CHECK_FALSE(neg.rules[0].fires);
    CHECK_FALSE(neg.harmonic.passed());
}

TEST_CASE("monotonicity scan", "[convexity]") {
    const Interval iv(1.0, 2.0);
    const auto up = check_monotone(fn("x"), iv, 41);
    CHECK(up.nondecreasing);
    CHECK_FALSE(up.nonincreasing);
    const auto flat = check_monotone(fn("2"), iv, 41);
    CHECK(flat.nondecreasing);
    CHECK(flat.nonincreasing);
}

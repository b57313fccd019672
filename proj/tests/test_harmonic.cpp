#include "hhf/harmonic.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

using namespace hhf;
using Catch::Matchers::WithinRel;
using Catch::Matchers::WithinAbs;

TEST_CASE("interval preconditions", "[harmonic]") {
    CHECK_THROWS_AS(Interval(0.0, 2.0), InvalidArgument);
    CHECK_THROWS_AS(Interval(-1.0, 2.0), InvalidArgument);
    CHECK_THROWS_AS(Interval(2.0, 2.0), InvalidArgument);
    CHECK_THROWS_AS(Interval(3.0, 2.0), InvalidArgument);
    CHECK_THROWS_AS(Interval(1.0, INFINITY), InvalidArgument);
    CHECK_NOTHROW(Interval(0.5, 0.500001));
}

TEST_CASE("harmonic mean", "[harmonic]") {
    CHECK(harmonic_mean(1.0, 2.0) == 4.0 / 3.0);
    CHECK(harmonic_mean(Interval(2.0, 6.0)) == 3.0);
    CHECK(harmonic_mean(5.0, 5.0) == 5.0);
}

TEST_CASE("paths start at the endpoints and meet at H", "[harmonic]") {
    const HarmonicFrame fr(Interval(1.0, 3.0));
    CHECK(map_L(0.0, fr) == 1.0);
    CHECK(map_U(0.0, fr) == 3.0);
    CHECK_THAT(map_L(1.0, fr), WithinRel(1.5, 1e-15));
    CHECK_THAT(map_U(1.0, fr), WithinRel(1.5, 1e-15));
    CHECK_THAT(map_L(0.0, fr, PathConvention::printed), WithinRel(1.5, 1e-15));
    CHECK(map_U(1.0, fr, PathConvention::printed) == 3.0);
    CHECK_THROWS_AS(map_L(1.5, fr), InvalidArgument);
    CHECK_THROWS_AS(map_U(-0.1, fr), InvalidArgument);
}

TEST_CASE("reciprocal paths are affine in t", "[harmonic][property]") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const double a = 0.1 + 5.0 * u(gen);
        const double b = a * (1.01 + 10.0 * u(gen));
        const HarmonicFrame fr(Interval(a, b));
        const double t = u(gen);
        CHECK_THAT(1.0 / map_L(t, fr), WithinRel((1.0 - t) / a + t / fr.H, 1e-13));
        CHECK_THAT(1.0 / map_U(t, fr), WithinRel((1.0 - t) / b + t / fr.H, 1e-13));
        // L and U are reflections of each other.
        CHECK_THAT(harmonic_reflect(map_L(t, fr), fr.interval), WithinRel(map_U(t, fr), 1e-12));
    }
}

TEST_CASE("harmonic grid is symmetric under reflection", "[harmonic]") {
    const Interval iv(0.7, 4.2);
    const auto xs = harmonic_grid(iv, 51);
    REQUIRE(xs.size() == 51);
    CHECK(xs.front() == 0.7);
    CHECK(xs.back() == 4.2);
    for (std::size_t i = 0; i < xs.size(); ++i)
        CHECK_THAT(harmonic_reflect(xs[i], iv), WithinRel(xs[xs.size() - 1 - i], 1e-13));
    CHECK_THAT(xs[25], WithinRel(harmonic_mean(iv), 1e-14));
    CHECK_THROWS_AS(harmonic_grid(iv, 1), InvalidArgument);
}

TEST_CASE("symmetrization and symmetry check", "[harmonic]") {
    const Interval iv(1.0, 2.0);
    const Fn x = [](double v) { return v; };
    const auto asym = check_harmonic_symmetry(x, iv);
    CHECK_FALSE(asym.passed());
    CHECK(asym.witness == 1.0);
    CHECK_THAT(asym.max_deviation, WithinRel(1.0, 1e-12));

    const Fn gs = symmetrize(x, iv);
    CHECK(check_harmonic_symmetry(gs, iv).passed());
    CHECK(check_harmonic_symmetry([](double v) { return 2.0 + std::sin(v); }, iv).passed() == false);
    CHECK(check_harmonic_symmetry(symmetrize([](double v) { return std::exp(-v); }, iv), iv, 1001).passed());
    // symmetrize(g)(a) is the endpoint average.
    CHECK_THAT(gs(1.0), WithinRel(1.5, 1e-15));
    CHECK_THROWS_AS(harmonic_reflect(2.5, iv), InvalidArgument);
}

TEST_CASE("the scalar power inequality", "[harmonic]") {
    auto [l, r] = lemma1_sides(1.0, 4.0, 0.5);
    CHECK(l == 1.0);
    CHECK_THAT(r, WithinRel(std::sqrt(3.0), 1e-15));
    std::tie(l, r) = lemma1_sides(2.0, 5.0, 1.0);
    CHECK(l == 3.0);
    CHECK(r == 3.0);
    std::tie(l, r) = lemma1_sides(3.0, 3.0, 0.5);
    CHECK(l == 0.0);
    CHECK(r == 0.0);
    CHECK_THROWS_AS(lemma1_sides(1.0, 2.0, 1.5), InvalidArgument);
    CHECK_THROWS_AS(lemma1_sides(1.0, 2.0, 0.0), InvalidArgument);
    CHECK_THROWS_AS(lemma1_sides(2.0, 1.0, 0.5), InvalidArgument);
}

TEST_CASE("power inequality fuzz", "[harmonic][property]") {
    std::mt19937_64 gen(8);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int violations = 0;
    for (int i = 0; i < 100000; ++i) {
        const double a = 1e-3 + 100.0 * u(gen);
        const double b = a + 100.0 * u(gen);
        const double theta = std::max(1e-6, u(gen));
        const auto [l, r] = lemma1_sides(a, b, theta);
        if (l > r * (1.0 + 4e-16) + 1e-300) ++violations;
    }
    CHECK(violations == 0);
}

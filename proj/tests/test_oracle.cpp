#include "hhf/catalog.hpp"
#include "hhf/oracle.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

using namespace hhf;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("midpoint and trapezoid rules", "[oracle]") {
    const auto m = oracle::midpoint([](double x) { return x * x; }, 0.0, 1.0, 1000);
    // Midpoint error for x² is exactly -h²/12 · (b-a) · f''/2 = -1/(12 n²).
    CHECK_THAT(m.value, WithinAbs(1.0 / 3.0 - 1.0 / (12.0 * 1e6), 1e-15));
    CHECK(m.method == "riemann-midpoint(1000)");

    const auto t = oracle::trapz([](double x) { return x * x; }, 0.0, 1.0, 1000);
    CHECK_THAT(t.value, WithinAbs(1.0 / 3.0 + 1.0 / (6.0 * 1e6), 1e-15));
    CHECK(t.method == "trapezoid(1000)");
    CHECK_FALSE(t.stderr_);

    CHECK_THROWS_AS(oracle::midpoint([](double x) { return x; }, 0.0, 1.0, 0), InvalidArgument);
    CHECK_THROWS_AS(oracle::trapz([](double x) { return x; }, 0.0, 1.0, 1), InvalidArgument);
}

TEST_CASE("trapezoid falls back to midpoint when an endpoint is singular", "[oracle]") {
    const Expr inv = Expr::parse("1/x");
    const auto t = oracle::trapz([&](double x) { return inv(x); }, 0.0, 1.0, 100);
    CHECK(t.method == "riemann-midpoint(100)");
}

TEST_CASE("Monte Carlo estimate is seeded and within a few standard errors", "[oracle]") {
    const Fn f = [](double x) { return std::exp(x); };
    const auto a = oracle::mc(f, 0.0, 1.0, 100'000, 42);
    const auto b = oracle::mc(f, 0.0, 1.0, 100'000, 42);
    const auto c = oracle::mc(f, 0.0, 1.0, 100'000, 43);
    CHECK(a.value == b.value);
    CHECK(a.value != c.value);
    REQUIRE(a.stderr_);
    CHECK(std::abs(a.value - (std::numbers::e - 1.0)) <= 5.0 * *a.stderr_);
    CHECK(*a.stderr_ < 2e-3);
    CHECK(std::string(oracle::rng_name) == "mt19937_64");
    CHECK_THROWS_AS(oracle::mc(f, 0.0, 1.0, 10, 1), InvalidArgument);
}

TEST_CASE("oracle rejects non-finite samples", "[oracle]") {
    CHECK_THROWS(oracle::midpoint([](double) { return NAN; }, 0.0, 1.0, 10));
}

TEST_CASE("oracle constants need a fine grid", "[oracle]") {
    CHECK_THROWS_AS(oracle::oracle_constants(Interval(1.0, 2.0), {}, 10), InvalidArgument);
    CHECK_THROWS_AS(oracle::oracle_constants(Interval(1.0, 2.0), {ConstantFamily::zeta, 1.0, 2.0, {}}, 1000),
                    InvalidArgument);
}

TEST_CASE("sup norm on a harmonic grid", "[oracle]") {
    const Interval iv(1.0, 2.0);
    CHECK(sup_norm([](double) { return -3.5; }, iv) == 3.5);
    CHECK(sup_norm([](double x) { return x; }, iv) == 2.0);
    // Interior maximum: refinement lands within grid resolution of the peak.
    const double peak = 1.37;
    const double s = sup_norm([peak](double x) { return 1.0 - (x - peak) * (x - peak); }, iv);
    CHECK(s <= 1.0);
    CHECK(s >= 1.0 - 1e-12);

    // Symmetrized x² against a dense oracle grid.
    const Fn g = symmetrize([](double x) { return x * x; }, iv);
    double dense = 0.0;
    for (std::size_t i = 0; i <= 100'000; ++i) dense = std::max(dense, std::abs(g(1.0 + static_cast<double>(i) * 1e-5)));
    CHECK_THAT(sup_norm(g, iv), WithinRel(dense, 1e-9));
    CHECK_THROWS_AS(sup_norm(g, iv, 2), InvalidArgument);
}

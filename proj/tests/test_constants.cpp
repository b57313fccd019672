#include "hhf/constants.hpp"
#include "hhf/expr.hpp"
#include "hhf/oracle.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

using namespace hhf;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

void check_against_oracle(const BoundConstants& k, const Interval& iv, const oracle::ConstantsSpec& spec,
                          double rel = 1e-6) {
    const BoundConstants ref = oracle::oracle_constants(iv, spec, 1'000'000);
    for (std::size_t i = 0; i < 3; ++i) {
        INFO(to_string(k.family) << " c" << i + 1 << " engine=" << k.c[i].value << " oracle=" << ref.c[i].value);
        CHECK(k.c[i].value >= 0.0);
        CHECK(oracle::relative_gap(k.c[i].value, ref.c[i].value, 1e-12) <= rel);
    }
}

const Tolerance tight{1e-13, 1e-11, 2'000'000};

} // namespace

TEST_CASE("zeta constants of trivial kernels", "[constants]") {
    const Interval iv(1.0, 2.0);
    const auto zero = zeta_constants(Expr::parse("0"), iv);
    CHECK(zero.c1() == 0.0);
    CHECK(zero.c2() == 0.0);
    CHECK(zero.c3() == 0.0);

    // h ≡ c: kernel is c, so ζ1 = c ∫(1-t)L², and ∫(1-t)L² has a closed form via 1/L affine.
    const auto k = zeta_constants(Expr::parse("2.5"), iv);
    const auto unit = zeta_constants(Expr::parse("1"), iv);
    CHECK_THAT(k.c1(), WithinRel(2.5 * unit.c1(), 1e-12));
    check_against_oracle(k, iv, {ConstantFamily::zeta, 1.0, 2.0, [](double) { return 2.5; }});
}

TEST_CASE("zeta constants against the Riemann-sum oracle", "[constants]") {
    const Interval iv(1.0, 2.0);
    for (const char* h : {"x", "x^2", "exp(-x)", "ln(1 + x)"}) {
        INFO(h);
        const Expr e = Expr::parse(h);
        check_against_oracle(zeta_constants(e, iv), iv, {ConstantFamily::zeta, 1.0, 2.0, [e](double x) { return e(x); }});
        check_against_oracle(zeta_constants(e, iv, ConstantsMode::strict_paper), iv,
                             {ConstantFamily::zeta, 1.0, 2.0, [e](double x) { return e(x); }, ConstantsMode::strict_paper});
    }
}

TEST_CASE("C(alpha) constants against the oracle", "[constants]") {
    const Interval iv(1.0, 2.0);
    for (auto mode : {ConstantsMode::consistent, ConstantsMode::strict_paper}) {
        check_against_oracle(c_alpha_constants(iv, FracOrder(0.5), CAlphaVariant::exact, mode), iv,
                             {ConstantFamily::c_alpha_exact, 0.5, 2.0, {}, mode});
        check_against_oracle(c_alpha_constants(iv, FracOrder(0.5), CAlphaVariant::small_alpha, mode), iv,
                             {ConstantFamily::c_alpha_small, 0.5, 2.0, {}, mode});
        check_against_oracle(c_alpha_q_constants(iv, FracOrder(1.0), 2.0, mode), iv,
                             {ConstantFamily::c_alpha_q, 1.0, 2.0, {}, mode});
    }
}

TEST_CASE("randomized constants against the oracle", "[constants]") {
    std::mt19937_64 gen(606);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 4; ++i) {
        const double a = 0.1 + 5.0 * u(gen);
        const Interval iv(a, a * (1.01 + 20.0 * u(gen)));
        const double alpha = 0.1 + 2.9 * u(gen);
        const double small = std::min(alpha, 1.0 / alpha);
        const double q = 1.05 + 3.0 * u(gen);
        const Expr h = Expr::parse("sqrt(x)");
        INFO("a=" << iv.a() << " b=" << iv.b() << " alpha=" << alpha << " q=" << q);
        check_against_oracle(zeta_constants(h, iv), iv, {ConstantFamily::zeta, 1.0, 2.0, [h](double x) { return h(x); }});
        check_against_oracle(c_alpha_constants(iv, FracOrder(alpha), CAlphaVariant::exact), iv,
                             {ConstantFamily::c_alpha_exact, alpha, 2.0, {}});
        check_against_oracle(c_alpha_constants(iv, FracOrder(small), CAlphaVariant::small_alpha), iv,
                             {ConstantFamily::c_alpha_small, small, 2.0, {}});
        check_against_oracle(c_alpha_q_constants(iv, FracOrder(alpha), q), iv,
                             {ConstantFamily::c_alpha_q, alpha, q, {}});
    }
}

TEST_CASE("q = 1 collapses the q-family onto the exact family", "[constants]") {
    std::mt19937_64 gen(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 20; ++i) {
        const double a = 0.1 + 5.0 * u(gen);
        const Interval iv(a, a * (1.01 + 9.0 * u(gen)));
        const FracOrder order(0.1 + 2.9 * u(gen));
        const auto exact = c_alpha_constants(iv, order, CAlphaVariant::exact, ConstantsMode::consistent, tight);
        const auto q1 = c_alpha_q_constants(iv, order, 1.0, ConstantsMode::consistent, tight);
        // The literal q-family runs backwards in t; substituting t -> 1-t lands on the same integrals.
        const auto q1_strict = c_alpha_q_constants(iv, order, 1.0, ConstantsMode::strict_paper, tight);
        for (std::size_t j = 0; j < 3; ++j) {
            CHECK_THAT(q1.c[j].value, WithinRel(exact.c[j].value, 1e-9));
            CHECK_THAT(q1_strict.c[j].value, WithinRel(exact.c[j].value, 1e-9));
        }
    }
}

TEST_CASE("C(1) small-alpha family is half the exact family at alpha = 1", "[constants]") {
    const Interval iv(0.5, 4.0);
    const auto exact = c_alpha_constants(iv, FracOrder(1.0), CAlphaVariant::exact);
    const auto small = c_alpha_constants(iv, FracOrder(1.0), CAlphaVariant::small_alpha);
    for (std::size_t j = 0; j < 3; ++j) CHECK_THAT(exact.c[j].value, WithinRel(2.0 * small.c[j].value, 1e-10));
}

TEST_CASE("strict reading duplicates C1 into C3", "[constants]") {
    const Interval iv(1.0, 3.0);
    const auto k = c_alpha_constants(iv, FracOrder(0.7), CAlphaVariant::exact, ConstantsMode::strict_paper);
    CHECK(k.c3() == k.c1());
    const auto d = c_alpha_constants(iv, FracOrder(0.7), CAlphaVariant::exact);
    CHECK(d.c3() > d.c1());
}

TEST_CASE("window kernel vanishes at the degenerate end", "[constants]") {
    for (double alpha : {0.3, 1.0, 2.5}) {
        CHECK(detail::window_kernel(0.0, alpha, ConstantsMode::strict_paper) == 0.0);
        CHECK(detail::window_kernel(1.0, alpha, ConstantsMode::consistent) == 0.0);
        const auto mass = integrate([alpha](double t) { return detail::window_kernel(t, alpha, ConstantsMode::consistent); },
                                    0.0, 1.0, tight);
        CHECK_THAT(mass.value, WithinRel(window_kernel_mass(alpha), 1e-10));
        const auto mass_s = integrate(
            [alpha](double t) { return detail::window_kernel(t, alpha, ConstantsMode::strict_paper); }, 0.0, 1.0, tight);
        CHECK_THAT(mass_s.value, WithinRel(window_kernel_mass(alpha), 1e-10));
    }
}

TEST_CASE("kernel window integral has the closed form", "[constants][property]") {
    std::mt19937_64 gen(215);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const double a = 0.1 + 5.0 * u(gen);
        const double b = a * (1.01 + 20.0 * u(gen));
        const double alpha = std::max(1e-3, 3.0 * u(gen));
        const double t = std::max(1e-6, u(gen));
        const HarmonicFrame fr(Interval(a, b));
        const double lo = 1.0 / map_U(t, fr, PathConvention::printed);
        const double hi = 1.0 / map_L(t, fr, PathConvention::printed);
        auto integrand = [&](double x) {
            return std::pow(std::max(0.0, x - 1.0 / b), alpha - 1.0) + std::pow(std::max(0.0, 1.0 / a - x), alpha - 1.0);
        };
        const double engine = integrate(integrand, lo, hi, {1e-15, 1e-12, 5'000'000}).value;
        const double d = (b - a) / (a * b);
        const double closed = std::pow(2.0, 1.0 - alpha) / alpha * std::pow(d, alpha) *
                              (std::pow(1.0 + t, alpha) - std::pow(1.0 - t, alpha));
        INFO("a=" << a << " b=" << b << " alpha=" << alpha << " t=" << t);
        CHECK(oracle::relative_gap(engine, closed) <= 1e-8);
    }
}

TEST_CASE("constant family preconditions", "[constants]") {
    const Interval iv(1.0, 2.0);
    CHECK_THROWS_AS(c_alpha_constants(iv, FracOrder(1.5), CAlphaVariant::small_alpha), InvalidArgument);
    CHECK_THROWS_AS(c_alpha_q_constants(iv, FracOrder(1.0), 0.5), InvalidArgument);
    CHECK_NOTHROW(c_alpha_q_constants(iv, FracOrder(1.0), 1.0));
}

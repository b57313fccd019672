#include "hhf/config.hpp"

#include <catch_amalgamated.hpp>

using namespace hhf;

TEST_CASE("defaults validate and round-trip", "[config]") {
    const RunConfig def;
    CHECK_NOTHROW(def.validate());
    CHECK(RunConfig::from_text(def.to_text()) == def);
}

TEST_CASE("every key round-trips through the text format", "[config]") {
    RunConfig c;
    c.tol = {3.5e-12, 1.25e-9, 123456};
    c.grid = {11, 13, 7};
    c.symmetry_grid = 401;
    c.symmetry_tol = 1e-9;
    c.sup_grid = 2001;
    c.sup_safety = 0.0;
    c.oracle_n = 5000;
    c.seed = 18446744073709551615ULL;
    c.oracle = true;
    c.strict_paper = true;
    c.force = true;
    c.out = OutputFormat::csv;
    c.jobs = 4;
    const RunConfig back = RunConfig::from_text(c.to_text());
    CHECK(back == c);
    CHECK(back.to_text() == c.to_text());
}

TEST_CASE("comments, blanks and spacing", "[config]") {
    const auto c = RunConfig::from_text("# header\n\n  seed=11  \ntol-rel = 1e-9 # trailing\nout=text\n");
    CHECK(c.seed == 11);
    CHECK(c.tol.rel == 1e-9);
    CHECK(c.out == OutputFormat::text);
}

TEST_CASE("bad configuration is rejected", "[config]") {
    CHECK_THROWS_AS(RunConfig::from_text("nonsense = 1"), InvalidArgument);
    CHECK_THROWS_AS(RunConfig::from_text("tol-abs = 0"), InvalidArgument);
    CHECK_THROWS_AS(RunConfig::from_text("tol-rel = -1"), InvalidArgument);
    CHECK_THROWS_AS(RunConfig::from_text("seed = x"), InvalidArgument);
    CHECK_THROWS_AS(RunConfig::from_text("seed = -3"), InvalidArgument);
    CHECK_THROWS_AS(RunConfig::from_text("grid = 3,3"), InvalidArgument);
    CHECK_THROWS_AS(RunConfig::from_text("grid = 3,3,3,3"), InvalidArgument);
    CHECK_THROWS_AS(RunConfig::from_text("grid = 2,3,3"), InvalidArgument);
    CHECK_THROWS_AS(RunConfig::from_text("oracle = maybe"), InvalidArgument);
    CHECK_THROWS_AS(RunConfig::from_text("out = xml"), InvalidArgument);
    CHECK_THROWS_AS(RunConfig::from_text("oracle-n = 10"), InvalidArgument);
    CHECK_THROWS_AS(RunConfig::from_text("jobs = 0"), InvalidArgument);
    CHECK_THROWS_AS(RunConfig::from_text("missing-equals"), InvalidArgument);
}

TEST_CASE("evaluation options follow the flags", "[config]") {
    RunConfig c;
    CHECK(c.eval_options().mode == ConstantsMode::consistent);
    c.strict_paper = true;
    c.sup_grid = 77;
    const auto o = c.eval_options();
    CHECK(o.mode == ConstantsMode::strict_paper);
    CHECK(o.sup_grid == 77);
}

#include "doctest.h"

#include <stdexcept>

#include <cmath>

#include "tpo/config.hpp"
#include "tpo/expr.hpp"

using namespace tpo;

TEST_CASE("expression evaluation") {
    CHECK(Expr::parse("2 + 3 * 4").eval(0) == doctest::Approx(14.0));
    CHECK(Expr::parse("(2 + 3) * 4").eval(0) == doctest::Approx(20.0));
    CHECK(Expr::parse("16*x - 8").eval(0.75) == doctest::Approx(4.0));
    CHECK(Expr::parse("-x + y").eval(1.0, 3.0) == doctest::Approx(2.0));
    CHECK(Expr::parse("sin(x)").eval(0.5) == doctest::Approx(std::sin(0.5)));
    CHECK(Expr::parse("exp(-t)").eval(0.0, 0.0, 2.0) == doctest::Approx(std::exp(-2.0)));
    CHECK(Expr::parse("1/2 - 1/4").eval(0) == doctest::Approx(0.25));
    CHECK(Expr::parse("1e-3").eval(0) == doctest::Approx(0.001));
}

TEST_CASE("expression errors carry a position") {
    CHECK_THROWS_WITH_AS(Expr::parse("2 +"), doctest::Contains("position"),
                         std::invalid_argument);
    CHECK_THROWS_AS(Expr::parse("sin 0.5"), std::invalid_argument);
    CHECK_THROWS_AS(Expr::parse("foo(3)"), std::invalid_argument);
    CHECK_THROWS_AS(Expr::parse("(1 + 2"), std::invalid_argument);
    CHECK_THROWS_AS(Expr::parse(""), std::invalid_argument);
    CHECK_THROWS_AS(Expr::parse("2 ^ 3"), std::invalid_argument);
}

TEST_CASE("builtin config resolves to the named case") {
    auto rc = parse_run_config(R"({"problem": {"builtin": "fig2", "nodes_per_dim": 51}})");
    CHECK(rc.problem.grid.node_count() == 51);
    CHECK(rc.problem.lambda_plus[10] == doctest::Approx(0.7));
    CHECK(rc.problem.lambda_minus[10] == doctest::Approx(0.2));
    CHECK(rc.problem.time->steps == 250);
    // defaults fill in artifacts and the solver block
    CHECK(rc.output.artifacts.size() == 5);
    CHECK(rc.stepper.mode == SteppingMode::Explicit);
}

TEST_CASE("explicit problem block with expressions") {
    auto rc = parse_run_config(R"({
      "problem": {
        "dim": 1, "nodes_per_dim": 11, "T": 0.5, "steps": 10,
        "lambda_plus": "2 + x", "lambda_minus": "1",
        "g": "8*x - 4", "h": "8*x - 4"
      },
      "solver": {"mode": "implicit", "tol_residual": 1e-9},
      "output": {"dir": "run1", "artifacts": ["solution", "manifest"]}
    })");
    CHECK(rc.problem.lambda_plus[5] == doctest::Approx(2.5));
    CHECK(rc.problem.time->dt() == doctest::Approx(0.05));
    CHECK(rc.stepper.mode == SteppingMode::Implicit);
    CHECK(rc.elliptic.tol_residual == doctest::Approx(1e-9));
    CHECK(rc.output.dir == "run1");
    CHECK(rc.output.artifacts == std::vector<std::string>{"solution", "manifest"});
}

TEST_CASE("diagnostics name the offending field") {
    CHECK_THROWS_WITH_AS(
        parse_run_config(R"({"problem": {"builtin": "fig1", "nodse": 5}})"),
        doctest::Contains("nodse"), ConfigError);
    CHECK_THROWS_WITH_AS(
        parse_run_config(R"({"problem": {"dim": 1, "lambda_plus": "1",
            "lambda_minus": "1", "g": "x", "h": "x"}})"),
        doctest::Contains("nodes_per_dim"), ConfigError);
    CHECK_THROWS_WITH_AS(
        parse_run_config(R"({"problem": {"builtin": "fig1"}, "extra": 1})"),
        doctest::Contains("extra"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_run_config("{not json"), doctest::Contains("invalid JSON"),
                         ConfigError);
    CHECK_THROWS_AS(parse_run_config(R"({"solver": {}})"), ConfigError);
}

TEST_CASE("T and steps must travel together") {
    CHECK_THROWS_WITH_AS(
        parse_run_config(R"({"problem": {"dim": 1, "nodes_per_dim": 11, "T": 1.0,
            "lambda_plus": "1", "lambda_minus": "1", "g": "x", "h": "x"}})"),
        doctest::Contains("steps"), ConfigError);
}

TEST_CASE("bad expression in a config names the field") {
    CHECK_THROWS_WITH_AS(
        parse_run_config(R"({"problem": {"dim": 1, "nodes_per_dim": 11,
            "lambda_plus": "2 +", "lambda_minus": "1", "g": "x", "h": "x"}})"),
        doctest::Contains("lambda_plus"), ConfigError);
}

TEST_CASE("unknown artifact names are rejected") {
    CHECK_THROWS_WITH_AS(
        parse_run_config(R"({"problem": {"builtin": "fig1"},
            "output": {"artifacts": ["solution", "movies"]}})"),
        doctest::Contains("movies"), ConfigError);
}

TEST_CASE("resolved config echo is deterministic") {
    const std::string text = R"({
      "problem": {"builtin": "fig3", "nodes_per_dim": 31, "steps": 20, "T": 0.25},
      "solver": {"mode": "implicit"}
    })";
    auto a = parse_run_config(text);
    auto b = parse_run_config(text);
    CHECK(a.resolved_json == b.resolved_json);
    CHECK_FALSE(a.resolved_json.empty());
}

TEST_CASE("solver block parsing for the library API") {
    StepperConfig st;
    SolverConfig el;
    parse_solver_block("", st, el);
    CHECK(st.mode == SteppingMode::Explicit);
    parse_solver_block(R"({"mode": "implicit", "max_inner": 5000})", st, el);
    CHECK(st.mode == SteppingMode::Implicit);
    CHECK(st.max_inner == 5000);
    CHECK_THROWS_AS(parse_solver_block(R"({"mode": "magic"})", st, el), ConfigError);
    CHECK_THROWS_AS(parse_solver_block(R"({"cfl_safety": 1.5})", st, el), ConfigError);
    CHECK_THROWS_AS(parse_solver_block("[1,2]", st, el), ConfigError);
}

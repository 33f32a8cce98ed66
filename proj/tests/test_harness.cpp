#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hcount/harness.hpp"

using namespace hcount;

TEST_CASE("rational full ball matches the lattice count") {
  ExperimentConfig cfg;
  cfg.field_spec = "x - 1";
  cfg.n = 2;
  cfg.X_schedule = {Rat(5, 2), Rat(11, 2), Rat(21, 2)};
  ComparisonReport rep = run_experiment(cfg);
  REQUIRE(rep.rows.size() == 3);
  for (const auto& row : rep.rows) {
    long long fl = static_cast<long long>(to_double(row.X));
    CHECK(row.observed == (2 * fl + 1) * (2 * fl + 1));
    CHECK(row.main_term == doctest::Approx(4 * to_double(row.X * row.X)));
    CHECK(row.ratio == doctest::Approx(double(row.observed) / row.main_term));
  }
  // square grid inside a square: the error is boundary-sized
  CHECK(rep.c_hat < 10.0);
}

TEST_CASE("dominant-embedding ratios drift toward one") {
  ExperimentConfig cfg;
  cfg.field_spec = "x^2 - 2";
  cfg.n = 1;
  cfg.I_selection = {{0}};
  cfg.X_schedule = {Rat(2), Rat(4), Rat(8)};
  ComparisonReport rep = run_experiment(cfg);
  REQUIRE(rep.rows.size() == 3);
  CHECK(rep.trend_to_one);
  CHECK(std::abs(rep.rows.back().ratio - 1.0) < 0.25);
}

TEST_CASE("config validation") {
  ExperimentConfig cfg;
  cfg.field_spec = "x^2 - 2";
  CHECK_THROWS(run_experiment(cfg));  // empty schedule
  cfg.X_schedule = {Rat(2), Rat(2)};
  CHECK_THROWS(run_experiment(cfg));  // not strictly increasing
  cfg.X_schedule = {Rat(1, 2)};
  CHECK_THROWS(run_experiment(cfg));  // X < 1
  cfg.X_schedule = {Rat(2)};
  cfg.I_selection = {{1, 0}};
  CHECK_THROWS(run_experiment(cfg));  // unsorted signature
  cfg.I_selection = {{0, 5}};
  CHECK_THROWS(run_experiment(cfg));  // block index out of range
}

TEST_CASE("reports serialize deterministically") {
  ExperimentConfig cfg;
  cfg.field_spec = "x^2 - 2";
  cfg.n = 1;
  cfg.X_schedule = {Rat(2), Rat(4)};
  ComparisonReport a = run_experiment(cfg);
  ComparisonReport b = run_experiment(cfg);
  CHECK(a.to_json() == b.to_json());
  CHECK(a.to_csv() == b.to_csv());
  CHECK(a.to_json().find("\"schema\": 1") != std::string::npos);
  CHECK(a.to_csv().find("X,observed,main_term") == 0);
}

TEST_CASE("verify filter selects by substring") {
  auto res = verify_suite("condition");
  REQUIRE(res.size() == 1);
  CHECK(res[0].name == "condition-arithmetic");
  CHECK(res[0].pass);
  CHECK(verify_suite("no-such-check").empty());
}

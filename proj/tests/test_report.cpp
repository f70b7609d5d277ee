#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "intertwine/suites.hpp"

using namespace intertwine;

TEST_CASE("case bookkeeping") {
  Report r{"demo", 7, 0.0, {}};
  r.add("b", {{"x", 1}}, cplx(1.0, 0.5), cplx(1.0, 0.5 + 1e-9), 1e-8);
  r.add("a", {{"x", 2}}, 2.0, 2.1, 1e-8);
  r.add_check("c", nlohmann::json::object(), true);
  CHECK(r.cases[0].pass);
  CHECK(r.cases[0].abs_diff == doctest::Approx(1e-9).epsilon(1e-6));
  CHECK_FALSE(r.cases[1].pass);
  CHECK(r.cases[2].pass);
  CHECK(r.failures() == 1);
  CHECK_FALSE(r.passed());
}

TEST_CASE("JSON is sorted, stable and round-trips") {
  Report r{"demo", 3, 1.25, {}};
  r.add("z", nlohmann::json::object(), 0.1, 0.1 + 1e-17, 1e-12);
  r.add("m", nlohmann::json::object(), cplx(1.0 / 3.0, -2.0 / 7.0), cplx(1.0 / 3.0, -2.0 / 7.0), 1e-12);
  const auto j = r.to_json();
  CHECK(j["cases"][0]["key"] == "m");
  CHECK(j["cases"][1]["key"] == "z");
  CHECK_FALSE(j.contains("wall_time"));
  CHECK(r.to_json(true)["wall_time"] == 1.25);
  const auto back = Report::from_json(nlohmann::json::parse(r.dump(true)));
  CHECK(back.suite == "demo");
  CHECK(back.seed == 3);
  CHECK(back.wall_time == 1.25);
  REQUIRE(back.cases.size() == 2);
  CHECK(back.cases[0].closed_form == cplx(1.0 / 3.0, -2.0 / 7.0));
  CHECK(back.dump() == r.dump());
}

TEST_CASE("suites are deterministic per seed") {
  const auto tol = default_tolerances();
  const auto a = run_suite("classical", 9, tol), b = run_suite("classical", 9, tol), c = run_suite("classical", 10, tol);
  CHECK(a.dump() == b.dump());
  CHECK(a.dump() != c.dump());
  CHECK(a.passed());
  CHECK_THROWS_AS(run_suite("bogus", 1, tol), DomainError);
}

TEST_CASE("merged report prefixes keys") {
  Report all{"all", 1, 0.0, {}};
  Report part{"padic", 1, 0.0, {}};
  part.add("x", nlohmann::json::object(), 1.0, 1.0, 0.0);
  all.merge(part);
  CHECK(all.cases.at(0).key == "padic/x");
}

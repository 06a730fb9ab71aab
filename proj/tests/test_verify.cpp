#include <algorithm>

#include "doctest.h"
#include "landau/verify.hpp"

using namespace landau;
using namespace landau::verify;

TEST_CASE("the identity suite passes at default tolerances") {
  const auto r = run({});
  CHECK(r.passed());
  CHECK(r.checks.size() == check_names().size());
  for (const auto& c : r.checks) {
    INFO(c.name << ": " << c.detail);
    CHECK(c.passed);
    CHECK(c.residual <= c.tolerance);
  }
  CHECK(r.tuv_rows.size() >= 4);
}

TEST_CASE("a tolerance below rounding fails some check") {
  VerifyOptions o;
  o.tolerance = 1e-15;
  const auto r = run(o);
  CHECK(!r.passed());
  CHECK(std::any_of(r.checks.begin(), r.checks.end(), [](const CheckResult& c) { return !c.passed; }));
  for (const auto& c : r.checks) CHECK(c.tolerance == 1e-15);
}

TEST_CASE("single checks") {
  for (const auto& name : check_names()) {
    const auto r = run({}, name);
    REQUIRE(r.checks.size() == 1);
    CHECK(r.checks[0].name == name);
    CHECK(r.checks[0].passed);
  }
  CHECK_THROWS_AS(run({}, "no_such_check"), landau::Error);
}

TEST_CASE("the suite is deterministic") {
  const auto a = run({}, "curvature"), b = run({}, "curvature");
  CHECK(a.checks[0].residual == b.checks[0].residual);
}

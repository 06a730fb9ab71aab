#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

#include "doctest.h"
#include "landau/report.hpp"

using namespace landau;
using namespace landau::report;

namespace {

int count(const std::string& s, const std::string& needle) {
  int n = 0;
  for (auto p = s.find(needle); p != std::string::npos; p = s.find(needle, p + needle.size())) ++n;
  return n;
}

}  // namespace

TEST_CASE("csv numbers round trip") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, std::numeric_limits<double>::min(), 0.0}) {
    const std::string s = csv_number(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
  }
  CHECK(csv_number(0.5) == "0.5");
}

TEST_CASE("csv fields are quoted only when needed") {
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_field("two\nlines") == "\"two\nlines\"");
}

TEST_CASE("spectrum report for the Landau model") {
  ModelParams p;
  p.eps_B = 2.0;
  const auto rep = build_spectrum(models::Model::landau, p, 20, {0, 1, 3}, 0.05);
  REQUIRE(rep.rows.size() == 3);
  for (const auto& r : rep.rows) {
    REQUIRE(r.closed_form);
    REQUIRE(r.diagonalized);
    CHECK(*r.diagonalized == doctest::Approx(*r.closed_form).epsilon(1e-12));
    CHECK(r.multiplicity > 0);
  }
  CHECK(*rep.rows[2].closed_form == doctest::Approx(7.0));
  const std::string csv = spectrum_csv(rep);
  CHECK(csv.rfind("label,closed_form,diagonalized,multiplicity\r\n", 0) == 0);
  CHECK(count(csv, "\r\n") == 4);
  CHECK(count(csv, "\n") == 4);
  const auto js = to_json(rep);
  CHECK(js["model"] == "landau");
  CHECK(js["levels"].size() == 3);
  CHECK(js["levels"][1]["closed_form"].get<double>() == 3.0);
  CHECK(!js["gaps"].empty());
}

TEST_CASE("JC spectrum rows carry both branches") {
  ModelParams p;
  p.c_b = 0.5;
  const auto rep = build_spectrum(models::Model::jaynes_cummings, p, 30, {0, 2}, 0.05);
  REQUIRE(rep.rows.size() == 3);
  CHECK(rep.rows[0].label == "0");
  CHECK(rep.rows[1].label == "2-");
  CHECK(rep.rows[2].label == "2+");
  for (const auto& r : rep.rows) CHECK(r.diagonalized.has_value());
}

TEST_CASE("empty level list gives a header-only table") {
  const auto rep = build_spectrum(models::Model::landau, {}, 20, {}, 0.05);
  CHECK(spectrum_csv(rep) == "label,closed_form,diagonalized,multiplicity\r\n");
  CHECK(gaps_csv({}) == "lower,upper,width\r\n");
  CHECK_THROWS_AS(build_spectrum(models::Model::landau, {}, 20, {-1}, 0.05), landau::Error);
}

TEST_CASE("json keeps non-finite values as null") {
  singtrace::DixmierEstimate e;
  e.value = std::nan("");
  e.residual = std::numeric_limits<double>::infinity();
  const auto js = to_json(e);
  CHECK(js["value"].is_null());
  CHECK(js["residual"].is_null());
  CHECK(js.dump().find("nan") == std::string::npos);
}

TEST_CASE("verify output is deterministic") {
  const auto a = verify::run({}, "zeta_closed_forms"), b = verify::run({}, "zeta_closed_forms");
  CHECK(checks_csv(a) == checks_csv(b));
  CHECK(to_json(a).dump() == to_json(b).dump());
  CHECK(checks_csv(a).rfind("check,passed,residual,tolerance,detail\r\n", 0) == 0);
  const auto t = verify::run({}, "tuv_dixmier");
  const std::string tc = tuv_csv(t.tuv_rows);
  CHECK(count(tc, "\r\n") == static_cast<int>(t.tuv_rows.size()) + 1);
}

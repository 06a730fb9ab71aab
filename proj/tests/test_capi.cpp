#include <cstring>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "landau/landau.h"

using nlohmann::json;

namespace {

struct SessionGuard {
  landau_session* s = nullptr;
  SessionGuard() { REQUIRE(landau_session_create(&s) == LANDAU_OK); }
  ~SessionGuard() { landau_session_destroy(s); }
};

std::string json_of(const landau_result* r) {
  std::string out(landau_result_json(r, nullptr, 0), '\0');
  landau_result_json(r, out.data(), out.size() + 1);
  return out;
}

}  // namespace

TEST_CASE("session lifecycle and parameters") {
  CHECK(landau_session_create(nullptr) == LANDAU_INVALID_ARGUMENT);
  SessionGuard g;
  double v = 0.0;
  CHECK(landau_session_get_param(g.s, "nmax", &v) == LANDAU_OK);
  CHECK(v == 40.0);
  CHECK(landau_session_set_param(g.s, "c_b", 0.25) == LANDAU_OK);
  CHECK(landau_session_get_param(g.s, "c_b", &v) == LANDAU_OK);
  CHECK(v == 0.25);
  CHECK(landau_session_set_param(g.s, "nmax", 20.5) == LANDAU_INVALID_ARGUMENT);
  CHECK(landau_session_set_param(g.s, "bogus", 1.0) == LANDAU_INVALID_ARGUMENT);
  CHECK(std::string(landau_last_error(g.s)).find("bogus") != std::string::npos);
  CHECK(landau_session_set_model(g.s, "graphene") == LANDAU_INVALID_ARGUMENT);
  CHECK(landau_session_set_model(g.s, "jaynes_cummings") == LANDAU_OK);
  CHECK(landau_session_set_param(g.s, "nmax", 8) == LANDAU_OK);
  CHECK(landau_session_validate(g.s) != LANDAU_OK);
  CHECK(landau_session_set_param(g.s, "nmax", 20) == LANDAU_OK);
  CHECK(landau_session_validate(g.s) == LANDAU_OK);
  CHECK(std::string(landau_last_error(g.s)).empty());
  landau_session_destroy(nullptr);
  landau_result_destroy(nullptr);
}

TEST_CASE("null handles are rejected") {
  landau_result* r = nullptr;
  CHECK(landau_spectrum(nullptr, nullptr, 0, &r) == LANDAU_INVALID_ARGUMENT);
  CHECK(landau_verify(nullptr, nullptr, &r) == LANDAU_INVALID_ARGUMENT);
  CHECK(landau_result_json(nullptr, nullptr, 0) == 0);
  CHECK(landau_result_status(nullptr) == LANDAU_INVALID_ARGUMENT);
  CHECK(landau_result_ok(nullptr) == 0);
  CHECK(std::string(landau_status_name(LANDAU_NO_GAP)) == "no-gap");
}

TEST_CASE("spectrum result and buffer semantics") {
  SessionGuard g;
  landau_session_set_param(g.s, "nmax", 20);
  const int levels[] = {0, 1, 2};
  landau_result* r = nullptr;
  REQUIRE(landau_spectrum(g.s, levels, 3, &r) == LANDAU_OK);
  CHECK(landau_result_ok(r));
  const std::size_t n = landau_result_json(r, nullptr, 0);
  CHECK(n > 10);
  char small[8];
  CHECK(landau_result_json(r, small, sizeof small) == n);
  CHECK(std::strlen(small) == 7);
  const auto js = json::parse(json_of(r));
  CHECK(js["levels"].size() == 3);
  CHECK(js["levels"][2]["closed_form"].get<double>() == 2.5);
  REQUIRE(landau_result_csv_count(r) == 2);
  CHECK(std::string(landau_result_csv_name(r, 0)) == "spectrum.csv");
  CHECK(landau_result_csv_name(r, 5) == nullptr);
  CHECK(landau_result_csv(r, 5, small, sizeof small) == 0);
  landau_result_destroy(r);
  CHECK(landau_spectrum(g.s, nullptr, 2, &r) == LANDAU_INVALID_ARGUMENT);
}

TEST_CASE("invariants through the C interface") {
  SessionGuard g;
  landau_session_set_param(g.s, "nmax", 120);
  landau_result* r = nullptr;
  REQUIRE(landau_invariants_level(g.s, 1, 1, &r) == LANDAU_OK);
  CHECK(landau_result_status(r) == LANDAU_OK);
  const auto js = json::parse(json_of(r));
  CHECK(js["rank"] == 1);
  CHECK(js["chern"] == 1);
  landau_result_destroy(r);
  REQUIRE(landau_invariants_fermi(g.s, 2.0, &r) == LANDAU_OK);
  CHECK(json::parse(json_of(r))["chern"] == 2);
  landau_result_destroy(r);
  CHECK(landau_invariants_fermi(g.s, 1.5, &r) == LANDAU_NO_GAP);
  CHECK(landau_session_set_model(g.s, "quaternionic") == LANDAU_OK);
  CHECK(landau_invariants_level(g.s, 0, 1, &r) == LANDAU_INVALID_ARGUMENT);
}

TEST_CASE("verify through the C interface") {
  CHECK(landau_check_count() == 8);
  CHECK(landau_check_name(landau_check_count()) == nullptr);
  SessionGuard g;
  landau_result* r = nullptr;
  REQUIRE(landau_verify(g.s, "curvature", &r) == LANDAU_OK);
  CHECK(landau_result_ok(r));
  landau_result_destroy(r);
  landau_session_set_param(g.s, "verify_tolerance", 1e-15);
  REQUIRE(landau_verify(g.s, nullptr, &r) == LANDAU_OK);
  CHECK(landau_result_status(r) == LANDAU_ASSERTION);
  CHECK(landau_result_csv_count(r) == 2);
  landau_result_destroy(r);
  CHECK(landau_verify(g.s, "nope", &r) == LANDAU_INVALID_ARGUMENT);
}

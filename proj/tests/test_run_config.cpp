#include <cstdlib>
#include <string>

#include "doctest.h"
#include "run_config.hpp"

using namespace landau_cli;

namespace {

std::string error_of(const std::string& text) {
  RunConfig c;
  try {
    apply_text(c, text, "t.cfg");
    check_consistency(c);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("keys, sections and comments") {
  RunConfig c;
  apply_text(c,
             "# comment\n"
             "model = jc\n"
             "nmax = 64   # trailing\n"
             "levels = 0, 2-, 3+\n"
             "fermi_energy = 1.0, 2.5\n"
             "[model.params]\n"
             "c_b = 0.75\r\n"
             "[verify]\n"
             "tolerance = 1e-6\n"
             "check = curvature\n",
             "t.cfg");
  CHECK(c.model == "jaynes_cummings");
  CHECK(c.nmax == 64);
  REQUIRE(c.levels.size() == 3);
  CHECK(c.levels[1].j == 2);
  CHECK(c.levels[1].sign == -1);
  CHECK(c.levels[2].sign == 1);
  CHECK(c.levels[0].sign == 0);
  CHECK(c.fermi_energies.size() == 2);
  CHECK(c.params.at("c_b") == 0.75);
  CHECK(*c.verify_tolerance == 1e-6);
  CHECK(c.check == "curvature");
  CHECK(c.origin("nmax") == "t.cfg:3");
  CHECK(c.origin("model.params.c_b") == "t.cfg:7");
  CHECK(c.origin("tolerance") == "default");
}

TEST_CASE("jmax expands to a level range and empty lists are allowed") {
  RunConfig c;
  apply_text(c, "jmax = 3\n", "t.cfg");
  CHECK(c.levels.size() == 4);
  apply_text(c, "levels =\n", "t.cfg");
  CHECK(c.levels.empty());
}

TEST_CASE("errors name the line") {
  CHECK(error_of("model = landau\n\nnmax = 4\n").rfind("t.cfg:3: nmax", 0) == 0);
  CHECK(error_of("tolerance = abc\n").rfind("t.cfg:1:", 0) == 0);
  CHECK(error_of("x = 1\n").find("unknown key") != std::string::npos);
  CHECK(error_of("[model.params]\nwidth = 2\n").rfind("t.cfg:2:", 0) == 0);
  CHECK(error_of("no equals sign\n").find("expected key = value") != std::string::npos);
  CHECK(error_of("[open\n").find("unterminated") != std::string::npos);
  CHECK(error_of("levels = 1, -2\n").find("levels") != std::string::npos);
  CHECK(error_of("model.params.ell_B = 0\n").find("positive") != std::string::npos);
  CHECK(error_of("gap_threshold = 1e400\n").find("finite") != std::string::npos);
}

TEST_CASE("cross-key checks") {
  CHECK(error_of("levels = 2-\n").find("signed levels") != std::string::npos);
  CHECK(error_of("model = jc\nlevels = 2-\n").empty());
  CHECK(error_of("model = q\nmodel.params.r1 = 0.5\n").rfind("t.cfg:2:", 0) == 0);
  CHECK(error_of("model = q\n[model.params]\nr0 = 0.6\nr1 = 0.8\n").empty());
}

TEST_CASE("environment overrides") {
  CHECK(env_name("model.params.c_b") == "LANDAU_MODEL_PARAMS_C_B");
  CHECK(env_name("verify.tolerance") == "LANDAU_VERIFY_TOLERANCE");
  RunConfig c;
  apply_text(c, "nmax = 30\n", "t.cfg");
  setenv("LANDAU_NMAX", "50", 1);
  apply_environment(c);
  unsetenv("LANDAU_NMAX");
  CHECK(c.nmax == 50);
  CHECK(c.origin("nmax") == "LANDAU_NMAX");
  setenv("LANDAU_GAP_THRESHOLD", "-1", 1);
  std::string msg;
  try {
    apply_environment(c);
  } catch (const ConfigError& e) {
    msg = e.what();
  }
  unsetenv("LANDAU_GAP_THRESHOLD");
  CHECK(msg.rfind("LANDAU_GAP_THRESHOLD:", 0) == 0);
}

TEST_CASE("missing file") {
  RunConfig c;
  CHECK_THROWS_AS(apply_file(c, "/nonexistent/landau.cfg"), ConfigError);
}

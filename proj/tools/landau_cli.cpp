// Command-line front end. Talks to the library only through landau.h.
#include <fmt/format.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "landau/landau.h"
#include "run_config.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace landau_cli;

namespace {

enum Exit { kOk = 0, kInternal = 1, kConfig = 2, kNonConvergence = 3, kAssertion = 4 };

int exit_of(landau_status s) {
  switch (s) {
    case LANDAU_OK: return kOk;
    case LANDAU_INVALID_ARGUMENT:
    case LANDAU_CONFIG: return kConfig;
    case LANDAU_NONCONVERGENCE:
    case LANDAU_NO_GAP: return kNonConvergence;
    case LANDAU_ASSERTION: return kAssertion;
    case LANDAU_INTERNAL: return kInternal;
  }
  return kInternal;
}

// Worse exit codes win; config errors outrank everything computed.
int worse(int a, int b) {
  auto rank = [](int e) { return e == kConfig ? 4 : e == kInternal ? 3 : e == kAssertion ? 2 : e == kNonConvergence ? 1 : 0; };
  return rank(b) > rank(a) ? b : a;
}

struct SessionDel {
  void operator()(landau_session* s) const { landau_session_destroy(s); }
};
struct ResultDel {
  void operator()(landau_result* r) const { landau_result_destroy(r); }
};
using Session = std::unique_ptr<landau_session, SessionDel>;
using Result = std::unique_ptr<landau_result, ResultDel>;

std::string result_json(const landau_result* r) {
  std::string s(landau_result_json(r, nullptr, 0), '\0');
  landau_result_json(r, s.data(), s.size() + 1);
  return s;
}

std::string result_csv(const landau_result* r, std::size_t i) {
  std::string s(landau_result_csv(r, i, nullptr, 0), '\0');
  landau_result_csv(r, i, s.data(), s.size() + 1);
  return s;
}

void write_file(const fs::path& p, const std::string& content) {
  std::ofstream f(p, std::ios::binary | std::ios::trunc);
  if (!f) throw ConfigError(p.string() + ": cannot write");
  f << content;
}

// Loads the config into a fresh session. Parameter errors are reported
// against the line that set them.
Session make_session(const RunConfig& cfg) {
  landau_session* raw = nullptr;
  if (landau_session_create(&raw) != LANDAU_OK) throw std::runtime_error("cannot create session");
  Session s(raw);
  if (landau_session_set_model(s.get(), cfg.model.c_str()) != LANDAU_OK)
    throw ConfigError(cfg.origin("model") + ": " + landau_last_error(s.get()));
  auto set = [&](const std::string& key, double v, const std::string& cfg_key) {
    if (landau_session_set_param(s.get(), key.c_str(), v) != LANDAU_OK)
      throw ConfigError(cfg.origin(cfg_key) + ": " + landau_last_error(s.get()));
  };
  for (const auto& [k, v] : cfg.params) set(k, v, "model.params." + k);
  set("nmax", cfg.nmax, "nmax");
  if (cfg.tolerance) set("tolerance", *cfg.tolerance, "tolerance");
  if (cfg.gap_threshold) set("gap_threshold", *cfg.gap_threshold, "gap_threshold");
  if (cfg.verify_tolerance) set("verify_tolerance", *cfg.verify_tolerance, "verify.tolerance");
  if (landau_session_validate(s.get()) != LANDAU_OK) {
    const std::string msg = landau_last_error(s.get());
    std::string where = "config";
    for (const auto& [k, origin] : cfg.origins)
      if (k.rfind("model.params.", 0) == 0 && msg.rfind(k.substr(13), 0) == 0) where = origin;
    throw ConfigError(where + ": " + msg);
  }
  return s;
}

int cmd_spectrum(const RunConfig& cfg) {
  auto s = make_session(cfg);
  std::vector<int> levels;
  for (const auto& lv : cfg.levels) levels.push_back(lv.j);
  landau_result* raw = nullptr;
  const landau_status st = landau_spectrum(s.get(), levels.data(), levels.size(), &raw);
  if (st != LANDAU_OK) {
    std::cerr << "spectrum: " << landau_last_error(s.get()) << "\n";
    return exit_of(st);
  }
  Result r(raw);
  const fs::path dir = cfg.output_dir;
  fs::create_directories(dir);
  for (std::size_t i = 0; i < landau_result_csv_count(r.get()); ++i)
    write_file(dir / landau_result_csv_name(r.get(), i), result_csv(r.get(), i));
  write_file(dir / "spectrum.json", result_json(r.get()) + "\n");
  return exit_of(landau_result_status(r.get()));
}

int cmd_invariants(const RunConfig& cfg) {
  if (cfg.levels.empty() && cfg.fermi_energies.empty())
    throw ConfigError("config: invariants needs levels, jmax or fermi_energy");
  auto s = make_session(cfg);
  json reports = json::array();
  int code = kOk;

  auto record = [&](landau_status st, landau_result* raw, const std::string& label) {
    if (st != LANDAU_OK) {
      reports.push_back({{"label", label}, {"status", landau_status_name(st)}, {"error", landau_last_error(s.get())}});
      std::cerr << label << ": " << landau_last_error(s.get()) << "\n";
      code = worse(code, exit_of(st));
      return;
    }
    Result r(raw);
    json rep = json::parse(result_json(r.get()));
    rep["status"] = landau_status_name(landau_result_status(r.get()));
    reports.push_back(std::move(rep));
    code = worse(code, exit_of(landau_result_status(r.get())));
  };

  for (const auto& lv : cfg.levels) {
    std::vector<int> signs{lv.sign};
    if (cfg.model == "jaynes_cummings" && lv.sign == 0) signs = lv.j == 0 ? std::vector<int>{1} : std::vector<int>{-1, 1};
    for (int sign : signs) {
      landau_result* raw = nullptr;
      const auto st = landau_invariants_level(s.get(), lv.j, sign == 0 ? 1 : sign, &raw);
      record(st, raw, fmt::format("j={}{}", lv.j, sign > 0 ? "+" : sign < 0 ? "-" : ""));
    }
  }
  for (double e : cfg.fermi_energies) {
    landau_result* raw = nullptr;
    const auto st = landau_invariants_fermi(s.get(), e, &raw);
    record(st, raw, fmt::format("E={}", e));
  }
  const fs::path dir = cfg.output_dir;
  fs::create_directories(dir);
  write_file(dir / "invariants.json", reports.dump(2) + "\n");
  return code;
}

int cmd_verify(const RunConfig& cfg) {
  auto s = make_session(cfg);
  landau_result* raw = nullptr;
  const landau_status st = landau_verify(s.get(), cfg.check.empty() ? nullptr : cfg.check.c_str(), &raw);
  if (st != LANDAU_OK) {
    const std::string where = st == LANDAU_INVALID_ARGUMENT && !cfg.check.empty() ? cfg.origin("verify.check") + ": " : "";
    std::cerr << "verify: " << where << landau_last_error(s.get()) << "\n";
    return exit_of(st);
  }
  Result r(raw);
  const fs::path dir = cfg.output_dir;
  fs::create_directories(dir);
  for (std::size_t i = 0; i < landau_result_csv_count(r.get()); ++i)
    write_file(dir / landau_result_csv_name(r.get(), i), result_csv(r.get(), i));
  const std::string js = result_json(r.get());
  write_file(dir / "verify.json", js + "\n");

  const json parsed = json::parse(js);
  for (const auto& c : parsed["checks"])
    std::cout << fmt::format("{:<20} {:<4} residual {:.3e} tol {:.1e}\n", c["name"].get<std::string>(),
                             c["passed"].get<bool>() ? "ok" : "FAIL",
                             c["residual"].is_null() ? std::nan("") : c["residual"].get<double>(),
                             c["tolerance"].get<double>());
  return exit_of(landau_result_status(r.get()));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Landau level topology toolkit"};
  app.set_version_flag("--version", std::string(landau_version()));
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, out_dir, check, model;
  int nmax = 0;
  double tol = 0.0;
  app.add_option("--config", config_path, "key = value configuration file");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--nmax", nmax, "Fock truncation");
  app.add_option("--tol", tol, "estimator tolerance (verify: check tolerance)");
  app.add_option("--check", check, "run a single verify check");
  app.add_option("--model", model, "landau, jaynes_cummings or quaternionic");

  auto* spectrum = app.add_subcommand("spectrum", "closed-form and diagonalized levels, gaps");
  auto* invariants = app.add_subcommand("invariants", "rank and Chern number per level or Fermi energy");
  auto* verify = app.add_subcommand("verify", "identity suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }

  RunConfig cfg;
  try {
    if (!config_path.empty()) apply_file(cfg, config_path);
    apply_environment(cfg);
    if (!model.empty()) apply_key(cfg, "model", model, "--model");
    if (app.count("--nmax")) apply_key(cfg, "nmax", std::to_string(nmax), "--nmax");
    if (app.count("--tol"))
      apply_key(cfg, verify->parsed() ? "verify.tolerance" : "tolerance", fmt::format("{:.17g}", tol), "--tol");
    if (!check.empty()) apply_key(cfg, "verify.check", check, "--check");
    if (!out_dir.empty()) apply_key(cfg, "output.dir", out_dir, "--out");
    check_consistency(cfg);

    if (spectrum->parsed()) return cmd_spectrum(cfg);
    if (invariants->parsed()) return cmd_invariants(cfg);
    return cmd_verify(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInternal;
  }
}

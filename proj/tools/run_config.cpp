#include "run_config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace landau_cli {

namespace {

const std::vector<std::string> kParams = {"ell_B", "eps_B", "xi", "c_b", "r0", "r1", "r2"};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad(const std::string& where, const std::string& what) { throw ConfigError(where + ": " + what); }

double to_double(const std::string& v, const std::string& key, const std::string& where) {
  double out = 0.0;
  const auto* end = v.data() + v.size();
  const auto [p, ec] = std::from_chars(v.data(), end, out);
  if (v.empty() || ec != std::errc() || p != end || !std::isfinite(out))
    bad(where, key + " expects a finite number, got '" + v + "'");
  return out;
}

int to_int(const std::string& v, const std::string& key, const std::string& where) {
  int out = 0;
  const auto* end = v.data() + v.size();
  const auto [p, ec] = std::from_chars(v.data(), end, out);
  if (v.empty() || ec != std::errc() || p != end) bad(where, key + " expects an integer, got '" + v + "'");
  return out;
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(v);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double positive(const std::string& v, const std::string& key, const std::string& where) {
  const double x = to_double(v, key, where);
  if (!(x > 0.0)) bad(where, key + " must be positive");
  return x;
}

}  // namespace

std::string RunConfig::origin(const std::string& key) const {
  const auto it = origins.find(key);
  return it == origins.end() ? std::string("default") : it->second;
}

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k = {"model", "nmax", "levels", "jmax", "fermi_energy", "tolerance", "gap_threshold",
                                  "verify.tolerance", "verify.check", "output.dir"};
    for (const auto& p : kParams) k.push_back("model.params." + p);
    return k;
  }();
  return keys;
}

std::string env_name(const std::string& key) {
  std::string out = "LANDAU_";
  for (char c : key) out += c == '.' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

void apply_key(RunConfig& cfg, const std::string& key, const std::string& value, const std::string& where) {
  if (key == "model") {
    if (value != "landau" && value != "jaynes_cummings" && value != "jc" && value != "quaternionic" && value != "q")
      bad(where, "unknown model '" + value + "' (landau, jaynes_cummings, quaternionic)");
    cfg.model = value == "jc" ? "jaynes_cummings" : value == "q" ? "quaternionic" : value;
  } else if (key.rfind("model.params.", 0) == 0) {
    const std::string p = key.substr(13);
    if (std::find(kParams.begin(), kParams.end(), p) == kParams.end()) bad(where, "unknown parameter '" + p + "'");
    const double x = to_double(value, key, where);
    if ((p == "ell_B" || p == "eps_B") && !(x > 0.0)) bad(where, key + " must be positive");
    if ((p == "xi" || p == "c_b") && x < 0.0) bad(where, key + " must be nonnegative");
    cfg.params[p] = x;
  } else if (key == "nmax") {
    const int n = to_int(value, key, where);
    if (n < 16 || n > 400) bad(where, "nmax must lie in 16..400");
    cfg.nmax = n;
  } else if (key == "levels") {
    cfg.levels.clear();
    for (const auto& item : split_list(value)) {
      Level lv;
      std::string digits = item;
      if (item.back() == '+' || item.back() == '-') {
        lv.sign = item.back() == '+' ? 1 : -1;
        digits.pop_back();
      }
      lv.j = to_int(trim(digits), "levels", where);
      if (lv.j < 0) bad(where, "levels must be nonnegative");
      cfg.levels.push_back(lv);
    }
  } else if (key == "jmax") {
    const int jmax = to_int(value, key, where);
    if (jmax < 0) bad(where, "jmax must be nonnegative");
    cfg.levels.clear();
    for (int j = 0; j <= jmax; ++j) cfg.levels.push_back({j, 0});
  } else if (key == "fermi_energy") {
    cfg.fermi_energies.clear();
    for (const auto& item : split_list(value)) cfg.fermi_energies.push_back(to_double(item, key, where));
  } else if (key == "tolerance") {
    cfg.tolerance = positive(value, key, where);
  } else if (key == "gap_threshold") {
    cfg.gap_threshold = positive(value, key, where);
  } else if (key == "verify.tolerance") {
    cfg.verify_tolerance = positive(value, key, where);
  } else if (key == "verify.check") {
    cfg.check = value;
  } else if (key == "output.dir") {
    if (value.empty()) bad(where, "output.dir is empty");
    cfg.output_dir = value;
  } else {
    bad(where, "unknown key '" + key + "'");
  }
  cfg.origins[key == "jmax" ? "levels" : key] = where;
}

void apply_text(RunConfig& cfg, const std::string& text, const std::string& name) {
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = name + ":" + std::to_string(lineno);
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') bad(where, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) bad(where, "expected key = value");
    std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) bad(where, "missing key");
    if (!section.empty()) key = section + "." + key;
    apply_key(cfg, key, value, where);
  }
}

void apply_file(RunConfig& cfg, const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError(path + ": cannot open");
  std::ostringstream ss;
  ss << f.rdbuf();
  apply_text(cfg, ss.str(), path);
}

void apply_environment(RunConfig& cfg) {
  for (const auto& key : known_keys()) {
    const std::string name = env_name(key);
    if (const char* v = std::getenv(name.c_str())) apply_key(cfg, key, trim(v), name);
  }
}

void check_consistency(const RunConfig& cfg) {
  for (const auto& lv : cfg.levels)
    if (lv.sign != 0 && cfg.model != "jaynes_cummings")
      bad(cfg.origin("levels"), "signed levels apply only to the jaynes_cummings model");
  if (cfg.model == "quaternionic") {
    double n2 = 0.0;
    for (const char* r : {"r0", "r1", "r2"}) {
      const auto it = cfg.params.find(r);
      const double v = it != cfg.params.end() ? it->second : (std::string(r) == "r0" ? 1.0 : 0.0);
      n2 += v * v;
    }
    if (std::abs(n2 - 1.0) > 1e-12) {
      std::string where = cfg.origin("model.params.r0");
      for (const char* r : {"model.params.r1", "model.params.r2"})
        if (cfg.origins.count(r)) where = cfg.origin(r);
      bad(where, "r0^2 + r1^2 + r2^2 must equal 1 for the quaternionic model");
    }
  }
}

}  // namespace landau_cli

#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace landau_cli {

// Carries "where: what", where is "file:line" or the environment variable.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Level {
  int j = 0;
  int sign = 0;  // 0 when not given
};

struct RunConfig {
  std::string model = "landau";
  std::map<std::string, double> params;  // ell_B eps_B xi c_b r0 r1 r2
  int nmax = 40;
  std::vector<Level> levels;
  std::vector<double> fermi_energies;
  std::optional<double> tolerance;
  std::optional<double> gap_threshold;
  std::optional<double> verify_tolerance;
  std::string check;
  std::string output_dir = ".";

  // Origin of the value currently held for a key; empty when defaulted.
  std::map<std::string, std::string> origins;

  std::string origin(const std::string& key) const;
};

// Keys accepted in files and, upper-cased with dots as underscores and the
// prefix LANDAU_, in the environment.
const std::vector<std::string>& known_keys();

// Parses text; name is used in messages. Later assignments win.
void apply_text(RunConfig& cfg, const std::string& text, const std::string& name);
void apply_file(RunConfig& cfg, const std::string& path);
void apply_key(RunConfig& cfg, const std::string& key, const std::string& value, const std::string& where);
void apply_environment(RunConfig& cfg);

// Cross-key checks that need the whole file.
void check_consistency(const RunConfig& cfg);

std::string env_name(const std::string& key);

}  // namespace landau_cli

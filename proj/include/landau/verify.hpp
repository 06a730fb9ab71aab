#pragma once

#include <string>
#include <vector>

#include "landau/common.hpp"
#include "landau/tuv.hpp"

namespace landau::verify {

struct CheckResult {
  std::string name;
  bool passed = false;
  double residual = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct VerifyOptions {
  ModelParams params;       // c_b defaults to 0.3 for the coupled checks when zero
  int nmax = 40;
  double tolerance = -1.0;  // positive value overrides every default tolerance
};

struct VerifyRun {
  std::vector<CheckResult> checks;
  std::vector<tuv::TuvRow> tuv_rows;  // filled by the tuv_dixmier check
  bool passed() const;
};

const std::vector<std::string>& check_names();

// Throws invalid_argument for an unknown name.
VerifyRun run(const VerifyOptions& opts, const std::string& only = {});

}  // namespace landau::verify

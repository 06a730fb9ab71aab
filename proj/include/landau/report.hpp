#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "landau/models.hpp"
#include "landau/singtrace.hpp"
#include "landau/topo.hpp"
#include "landau/verify.hpp"

namespace landau::report {

using nlohmann::json;

// 17 significant digits.
std::string csv_number(double v);
// RFC 4180 quoting when needed.
std::string csv_field(const std::string& s);

json to_json(const singtrace::DixmierEstimate& e);
json to_json(const topo::TopologicalReport& r);
json to_json(const verify::VerifyRun& run);
json to_json(const models::GapRecord& g);

struct SpectrumRow {
  std::string label;
  std::optional<double> closed_form;
  std::optional<double> diagonalized;  // nearest interior cluster
  int multiplicity = 0;                // of that cluster within the truncation
};

struct SpectrumReport {
  models::Model model = models::Model::landau;
  int nmax = 0;
  std::vector<SpectrumRow> rows;
  std::vector<models::GapRecord> gaps;
};

// Closed-form levels for the requested j (both signs for j >= 1 in the
// Jaynes-Cummings model) next to the diagonalized truncation. The
// Quaternionic model has no closed form; its rows are the j-th interior
// clusters.
SpectrumReport build_spectrum(models::Model m, const ModelParams& params, int nmax, const std::vector<int>& levels,
                              double gap_threshold);

json to_json(const SpectrumReport& s);
std::string spectrum_csv(const SpectrumReport& s);
std::string gaps_csv(const std::vector<models::GapRecord>& gaps);
std::string checks_csv(const verify::VerifyRun& run);
std::string tuv_csv(const std::vector<tuv::TuvRow>& rows);

}  // namespace landau::report

#include "landau/report.hpp"

#include <fmt/format.h>

#include <cmath>
#include <limits>

namespace landau::report {

namespace {

constexpr const char* kEol = "\r\n";

std::string opt_number(const std::optional<double>& v) { return v ? csv_number(*v) : std::string{}; }

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

std::string csv_number(double v) { return fmt::format("{:.17g}", v); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

json to_json(const singtrace::DixmierEstimate& e) {
  json samples = json::array();
  for (const auto& s : e.samples) samples.push_back({s.at, number_or_null(s.estimate)});
  return {{"value", number_or_null(e.value)},
          {"imag", number_or_null(e.imag)},
          {"method", singtrace::method_name(e.method)},
          {"converged", e.converged},
          {"residual", number_or_null(e.residual)},
          {"samples", samples}};
}

json to_json(const topo::TopologicalReport& r) {
  json res = json::object();
  for (const auto& [k, v] : r.identity_residuals) res[k] = number_or_null(v);
  return {{"label", r.label},
          {"rank", r.rank_rounded},
          {"chern", r.chern_rounded},
          {"rank_certified", r.rank_certified},
          {"chern_certified", r.chern_certified},
          {"symmetry", topo::symmetry_name(r.symmetry)},
          {"parity_ok", r.parity_ok},
          {"rank_estimate", to_json(r.rank_estimate)},
          {"chern_estimate", to_json(r.chern_estimate)},
          {"identity_residuals", res}};
}

json to_json(const verify::VerifyRun& run) {
  json checks = json::array();
  for (const auto& c : run.checks)
    checks.push_back({{"name", c.name},
                      {"passed", c.passed},
                      {"residual", number_or_null(c.residual)},
                      {"tolerance", c.tolerance},
                      {"detail", c.detail}});
  return {{"passed", run.passed()}, {"checks", checks}};
}

json to_json(const models::GapRecord& g) { return {{"lower", g.lower}, {"upper", g.upper}, {"width", g.width}}; }

SpectrumReport build_spectrum(models::Model m, const ModelParams& params, int nmax, const std::vector<int>& levels,
                              double gap_threshold) {
  for (int j : levels)
    if (j < 0) fail(ErrorCode::invalid_argument, "spectrum: levels must be nonnegative");
  SpectrumReport rep;
  rep.model = m;
  rep.nmax = nmax;
  const auto basis = fock::build_basis(nmax);
  const auto diag = models::diagonalize_and_gaps(models::model_hamiltonian(basis, m, params), gap_threshold);
  rep.gaps = diag.gaps;
  const auto clusters = diag.table.clusters(1e-8);

  auto attach = [&](SpectrumRow& row) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& c : clusters)
      if (std::abs(c.value - *row.closed_form) < best) {
        best = std::abs(c.value - *row.closed_form);
        if (best <= 1e-6) {
          row.diagonalized = c.value;
          row.multiplicity = c.multiplicity;
        }
      }
  };
  for (int j : levels) {
    switch (m) {
      case models::Model::landau: {
        SpectrumRow row{std::to_string(j), params.eps_B * (j + 0.5), {}, 0};
        attach(row);
        rep.rows.push_back(row);
        break;
      }
      case models::Model::jaynes_cummings:
        for (int sign : j == 0 ? std::vector<int>{1} : std::vector<int>{-1, 1}) {
          SpectrumRow row{j == 0 ? "0" : std::to_string(j) + (sign > 0 ? "+" : "-"), models::jc_level(j, sign, params),
                          {}, 0};
          attach(row);
          rep.rows.push_back(row);
        }
        break;
      case models::Model::quaternionic: {
        SpectrumRow row{"cluster " + std::to_string(j), {}, {}, 0};
        if (static_cast<std::size_t>(j) < clusters.size()) {
          row.diagonalized = clusters[static_cast<std::size_t>(j)].value;
          row.multiplicity = clusters[static_cast<std::size_t>(j)].multiplicity;
        }
        rep.rows.push_back(row);
        break;
      }
    }
  }
  return rep;
}

json to_json(const SpectrumReport& s) {
  json rows = json::array();
  for (const auto& r : s.rows)
    rows.push_back({{"label", r.label},
                    {"closed_form", r.closed_form ? json(*r.closed_form) : json(nullptr)},
                    {"diagonalized", r.diagonalized ? json(*r.diagonalized) : json(nullptr)},
                    {"multiplicity", r.multiplicity}});
  json gaps = json::array();
  for (const auto& g : s.gaps) gaps.push_back(to_json(g));
  return {{"model", models::model_name(s.model)}, {"nmax", s.nmax}, {"levels", rows}, {"gaps", gaps}};
}

std::string spectrum_csv(const SpectrumReport& s) {
  std::string out = std::string("label,closed_form,diagonalized,multiplicity") + kEol;
  for (const auto& r : s.rows)
    out += fmt::format("{},{},{},{}{}", csv_field(r.label), opt_number(r.closed_form), opt_number(r.diagonalized),
                       r.multiplicity, kEol);
  return out;
}

std::string gaps_csv(const std::vector<models::GapRecord>& gaps) {
  std::string out = std::string("lower,upper,width") + kEol;
  for (const auto& g : gaps)
    out += fmt::format("{},{},{}{}", csv_number(g.lower), csv_number(g.upper), csv_number(g.width), kEol);
  return out;
}

std::string checks_csv(const verify::VerifyRun& run) {
  std::string out = std::string("check,passed,residual,tolerance,detail") + kEol;
  for (const auto& c : run.checks)
    out += fmt::format("{},{},{},{},{}{}", csv_field(c.name), c.passed ? "true" : "false", csv_number(c.residual),
                       csv_number(c.tolerance), csv_field(c.detail), kEol);
  return out;
}

std::string tuv_csv(const std::vector<tuv::TuvRow>& rows) {
  std::string out = std::string("shape,size,measure,raw,normalized") + kEol;
  for (const auto& r : rows)
    out += fmt::format("{},{},{},{},{}{}", r.region.shape == kernels::Region::Shape::square ? "square" : "disk",
                       csv_number(r.region.size), csv_number(r.region.measure()), csv_number(r.raw),
                       csv_number(r.normalized), kEol);
  return out;
}

}  // namespace landau::report

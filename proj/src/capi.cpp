#include "landau/landau.h"

#include <cstring>
#include <exception>
#include <string>
#include <utility>
#include <vector>

#include "landau/models.hpp"
#include "landau/report.hpp"
#include "landau/topo.hpp"
#include "landau/verify.hpp"

using namespace landau;

struct landau_session {
  models::Model model = models::Model::landau;
  ModelParams params;
  int nmax = 40;
  double tolerance = 1e-3;
  double gap_threshold = 0.05;
  double verify_tolerance = -1.0;
  std::string error;
};

struct landau_result {
  landau_status status = LANDAU_OK;
  std::string json;
  std::vector<std::pair<std::string, std::string>> csv;
};

namespace {

landau_status status_of(ErrorCode c) {
  switch (c) {
    case ErrorCode::invalid_argument:
    case ErrorCode::domain: return LANDAU_INVALID_ARGUMENT;
    case ErrorCode::non_convergence: return LANDAU_NONCONVERGENCE;
    case ErrorCode::no_gap: return LANDAU_NO_GAP;
    case ErrorCode::assertion: return LANDAU_ASSERTION;
  }
  return LANDAU_INTERNAL;
}

template <class F>
landau_status guarded(landau_session* s, F&& f) {
  if (!s) return LANDAU_INVALID_ARGUMENT;
  try {
    s->error.clear();
    return f();
  } catch (const Error& e) {
    s->error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    s->error = e.what();
    return LANDAU_INTERNAL;
  }
}

double* param_slot(landau_session* s, const std::string& key) {
  ModelParams& p = s->params;
  if (key == "ell_B") return &p.ell_B;
  if (key == "eps_B") return &p.eps_B;
  if (key == "xi") return &p.xi;
  if (key == "c_b") return &p.c_b;
  if (key == "r0") return &p.r0;
  if (key == "r1") return &p.r1;
  if (key == "r2") return &p.r2;
  if (key == "tolerance") return &s->tolerance;
  if (key == "gap_threshold") return &s->gap_threshold;
  if (key == "verify_tolerance") return &s->verify_tolerance;
  return nullptr;
}

void validate(const landau_session& s) {
  s.params.validate(s.model == models::Model::quaternionic);
  if (s.nmax < 16 || s.nmax > 400) fail(ErrorCode::invalid_argument, "nmax must lie in 16..400");
  if (!(s.tolerance > 0.0)) fail(ErrorCode::invalid_argument, "tolerance must be positive");
  if (!(s.gap_threshold > 0.0)) fail(ErrorCode::invalid_argument, "gap_threshold must be positive");
}

landau_status finish(landau_result* r, landau_result** out) {
  *out = r;
  return LANDAU_OK;
}

landau_result* from_report(const topo::TopologicalReport& rep) {
  auto* r = new landau_result;
  r->json = report::to_json(rep).dump(2);
  if (!rep.certified())
    r->status = LANDAU_NONCONVERGENCE;
  else if (!rep.parity_ok)
    r->status = LANDAU_ASSERTION;
  return r;
}

std::size_t copy_out(const std::string& s, char* buf, std::size_t cap) {
  if (buf && cap > 0) {
    const std::size_t n = std::min(cap - 1, s.size());
    std::memcpy(buf, s.data(), n);
    buf[n] = '\0';
  }
  return s.size();
}

}  // namespace

extern "C" {

const char* landau_version(void) { return "1.0.0"; }

const char* landau_status_name(landau_status s) {
  switch (s) {
    case LANDAU_OK: return "ok";
    case LANDAU_INVALID_ARGUMENT: return "invalid-argument";
    case LANDAU_CONFIG: return "config-error";
    case LANDAU_NONCONVERGENCE: return "non-convergence";
    case LANDAU_ASSERTION: return "assertion-failure";
    case LANDAU_NO_GAP: return "no-gap";
    case LANDAU_INTERNAL: return "internal-error";
  }
  return "unknown";
}

landau_status landau_session_create(landau_session** out) {
  if (!out) return LANDAU_INVALID_ARGUMENT;
  try {
    *out = new landau_session;
    return LANDAU_OK;
  } catch (...) {
    *out = nullptr;
    return LANDAU_INTERNAL;
  }
}

void landau_session_destroy(landau_session* s) { delete s; }

landau_status landau_session_set_model(landau_session* s, const char* name) {
  return guarded(s, [&] {
    if (!name) fail(ErrorCode::invalid_argument, "model name is null");
    s->model = models::parse_model(name);
    return LANDAU_OK;
  });
}

landau_status landau_session_set_param(landau_session* s, const char* key, double value) {
  return guarded(s, [&] {
    if (!key) fail(ErrorCode::invalid_argument, "parameter key is null");
    if (std::string(key) == "nmax") {
      if (value != static_cast<double>(static_cast<int>(value)))
        fail(ErrorCode::invalid_argument, "nmax must be an integer");
      s->nmax = static_cast<int>(value);
      return LANDAU_OK;
    }
    double* slot = param_slot(s, key);
    if (!slot) fail(ErrorCode::invalid_argument, std::string("unknown parameter '") + key + "'");
    *slot = value;
    return LANDAU_OK;
  });
}

landau_status landau_session_get_param(const landau_session* s, const char* key, double* value) {
  if (!s || !key || !value) return LANDAU_INVALID_ARGUMENT;
  if (std::string(key) == "nmax") {
    *value = s->nmax;
    return LANDAU_OK;
  }
  double* slot = param_slot(const_cast<landau_session*>(s), key);
  if (!slot) return LANDAU_INVALID_ARGUMENT;
  *value = *slot;
  return LANDAU_OK;
}

landau_status landau_session_validate(landau_session* s) {
  return guarded(s, [&] {
    validate(*s);
    return LANDAU_OK;
  });
}

const char* landau_last_error(const landau_session* s) { return s ? s->error.c_str() : "null session"; }

landau_status landau_spectrum(landau_session* s, const int* levels, size_t n_levels, landau_result** out) {
  return guarded(s, [&] {
    if (!out || (n_levels > 0 && !levels)) fail(ErrorCode::invalid_argument, "null output or level list");
    validate(*s);
    const std::vector<int> lv(levels, levels + n_levels);
    const auto rep = report::build_spectrum(s->model, s->params, s->nmax, lv, s->gap_threshold * s->params.eps_B);
    auto* r = new landau_result;
    r->json = report::to_json(rep).dump(2);
    r->csv.emplace_back("spectrum.csv", report::spectrum_csv(rep));
    r->csv.emplace_back("gaps.csv", report::gaps_csv(rep.gaps));
    return finish(r, out);
  });
}

landau_status landau_invariants_level(landau_session* s, int j, int sign, landau_result** out) {
  return guarded(s, [&] {
    if (!out) fail(ErrorCode::invalid_argument, "null output");
    validate(*s);
    const auto basis = fock::build_basis(s->nmax);
    switch (s->model) {
      case models::Model::landau: return finish(from_report(topo::invariants_landau(j, basis, s->params, s->tolerance)), out);
      case models::Model::jaynes_cummings:
        if (j == 0) {
          auto rep = topo::projection_invariants(models::jc_projection(basis, s->params, 0, 1), s->params,
                                                 {s->tolerance, s->nmax - 1});
          rep.label = "jaynes_cummings j=0";
          return finish(from_report(rep), out);
        }
        return finish(from_report(topo::invariants_jc(j, sign, basis, s->params, s->tolerance)), out);
      case models::Model::quaternionic:
        fail(ErrorCode::invalid_argument, "the quaternionic model has no closed-form levels; give a Fermi energy");
    }
    return LANDAU_INTERNAL;
  });
}

landau_status landau_invariants_fermi(landau_session* s, double energy, landau_result** out) {
  return guarded(s, [&] {
    if (!out) fail(ErrorCode::invalid_argument, "null output");
    validate(*s);
    const auto basis = fock::build_basis(s->nmax);
    if (s->model == models::Model::quaternionic)
      return finish(from_report(topo::invariants_quaternionic(energy, basis, s->params, s->gap_threshold, s->tolerance)),
                    out);
    const auto h = models::model_hamiltonian(basis, s->model, s->params);
    const auto fp = models::fermi_projection(h, energy, s->gap_threshold * s->params.eps_B);
    auto rep = topo::projection_invariants(fp.projection, s->params, {s->tolerance, fp.trusted_shell});
    rep.label = std::string(models::model_name(s->model)) + " E=" + std::to_string(energy);
    return finish(from_report(rep), out);
  });
}

landau_status landau_verify(landau_session* s, const char* check, landau_result** out) {
  return guarded(s, [&] {
    if (!out) fail(ErrorCode::invalid_argument, "null output");
    s->params.validate(false);
    verify::VerifyOptions opts;
    opts.params = s->params;
    opts.nmax = s->nmax;
    opts.tolerance = s->verify_tolerance;
    const auto run = verify::run(opts, check ? check : "");
    auto* r = new landau_result;
    r->json = report::to_json(run).dump(2);
    r->csv.emplace_back("checks.csv", report::checks_csv(run));
    if (!run.tuv_rows.empty()) r->csv.emplace_back("tuv.csv", report::tuv_csv(run.tuv_rows));
    if (!run.passed()) r->status = LANDAU_ASSERTION;
    return finish(r, out);
  });
}

size_t landau_check_count(void) { return verify::check_names().size(); }

const char* landau_check_name(size_t index) {
  const auto& n = verify::check_names();
  return index < n.size() ? n[index].c_str() : nullptr;
}

size_t landau_result_json(const landau_result* r, char* buf, size_t cap) { return r ? copy_out(r->json, buf, cap) : 0; }

size_t landau_result_csv_count(const landau_result* r) { return r ? r->csv.size() : 0; }

const char* landau_result_csv_name(const landau_result* r, size_t index) {
  return r && index < r->csv.size() ? r->csv[index].first.c_str() : nullptr;
}

size_t landau_result_csv(const landau_result* r, size_t index, char* buf, size_t cap) {
  return r && index < r->csv.size() ? copy_out(r->csv[index].second, buf, cap) : 0;
}

landau_status landau_result_status(const landau_result* r) { return r ? r->status : LANDAU_INVALID_ARGUMENT; }

int landau_result_ok(const landau_result* r) { return r && r->status == LANDAU_OK; }

void landau_result_destroy(landau_result* r) { delete r; }

}  // extern "C"

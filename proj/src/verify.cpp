#include "landau/verify.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "landau/kernels.hpp"
#include "landau/models.hpp"
#include "landau/singtrace.hpp"
#include "landau/topo.hpp"

namespace landau::verify {

namespace {

using fock::OperatorMatrix;
constexpr cplx kI{0.0, 1.0};

struct Context {
  const VerifyOptions& opts;
  VerifyRun& run;
  ModelParams coupled;  // params with a nonzero coupling

  double tol(double fallback) const { return opts.tolerance > 0.0 ? opts.tolerance : fallback; }
  void record(std::string name, double residual, double fallback, std::string detail = {}) {
    const double t = tol(fallback);
    run.checks.push_back({std::move(name), std::isfinite(residual) && residual <= t, residual, t, std::move(detail)});
  }
};

void check_commutation(Context& cx) {
  const auto basis = fock::build_basis(std::max(cx.opts.nmax, 4));
  using fock::Derived;
  auto op = [&](Derived d) { return fock::derived_operator(basis, d, cx.opts.params); };
  const OperatorMatrix id = fock::identity(basis);
  const OperatorMatrix am = fock::ladder(basis, fock::Ladder::a_minus), ap = fock::ladder(basis, fock::Ladder::a_plus);
  const OperatorMatrix bm = fock::ladder(basis, fock::Ladder::b_minus), bp = fock::ladder(basis, fock::Ladder::b_plus);
  const OperatorMatrix k1 = op(Derived::K1), k2 = op(Derived::K2), g1 = op(Derived::G1), g2 = op(Derived::G2);
  auto inner = [](const OperatorMatrix& m) { return fock::interior_block(m, 1).max_abs(); };
  double r = 0.0;
  r = std::max(r, inner(fock::commutator(am, ap) - id));
  r = std::max(r, inner(fock::commutator(bm, bp) - id));
  r = std::max(r, inner(fock::commutator(am, bp)));
  r = std::max(r, inner(fock::commutator(k1, k2) + kI * id));
  r = std::max(r, inner(fock::commutator(g1, g2) + kI * id));
  for (const auto* k : {&k1, &k2})
    for (const auto* g : {&g1, &g2}) r = std::max(r, inner(fock::commutator(*k, *g)));
  const auto fc = fock::flip_and_conjugation(basis);
  r = std::max(r, inner(fc.Theta.transform(k1) + k2));
  r = std::max(r, inner(fc.Theta.transform(k2) + k1));
  double field = 0.0;
  for (auto m : {models::Model::jaynes_cummings, models::Model::quaternionic}) {
    const auto f = models::nonabelian_field_check(cx.coupled, m, std::min(cx.opts.nmax, 16));
    field = std::max({field, f.field_residual, f.commutator_residual});
  }
  cx.record("commutation", std::max(r, field), 1e-10,
            fmt::format("canonical {:.3g}, non-Abelian {:.3g}", r, field));
}

void check_quaternionic_forms(Context& cx) {
  const auto basis = fock::build_basis(std::min(cx.opts.nmax, 30));
  ModelParams p = cx.coupled;
  p.r0 = 0.48;
  p.r1 = 0.6;
  p.r2 = 0.64;
  const OperatorMatrix h = models::quaternionic_hamiltonian(basis, p);
  const double w = fock::max_abs_diff(h, models::quaternionic_hamiltonian_w(basis, p));
  const double k = fock::max_abs_diff(h, models::quaternionic_hamiltonian_k(basis, p));
  cx.record("quaternionic_forms", std::max(w, k), 1e-10, fmt::format("ladder form {:.3g}, momentum form {:.3g}", w, k));
}

void check_curvature(Context& cx) {
  const auto basis = fock::build_basis(std::max(cx.opts.nmax, 9));
  double a = 0.0, b = 0.0, alt = 0.0;
  for (int j = 0; j <= 5; ++j) {
    const auto r = topo::verify_curvature_identity(j, basis, cx.opts.params);
    a = std::max(a, r.commutator);
    b = std::max(b, r.curvature);
    alt = std::max(alt, r.commutator_alt);
  }
  cx.record("curvature", std::max(a, b), 1e-10,
            fmt::format("j = 0..5: projected {:.3g}, commutator {:.3g}, (j-1)-coefficient form {:.3g}", b, a, alt));
}

void check_integral_identity(Context& cx) {
  const auto lit = kernels::verify_integral_identity(0, 6.0, cx.tol(1e-4), kernels::IdentityVariant::literal);
  const auto lad = kernels::verify_integral_identity(0, 6.0, cx.tol(1e-4), kernels::IdentityVariant::ladder_consistent);
  const double r = std::max(std::abs(lad.value - lad.expected), std::abs(lad.refined - lad.expected));
  cx.record("integral_identity", r, 1e-4,
            fmt::format("ladder-consistent {:.10g}{:+.10g}i; literal {:.10g}{:+.10g}i (|diff| {:.3g})", lad.refined.real(),
                        lad.refined.imag(), lit.refined.real(), lit.refined.imag(),
                        std::abs(lit.refined - lit.expected)));
}

void check_tuv_dixmier(Context& cx) {
  const tuv::LandauCombination t{{0.5, -0.25, 0.125, -0.0625}};
  double worst = 0.0;
  double sq_limit = 0.0;
  for (double xi : {0.0, 1.0}) {
    const auto sq = tuv::compare_tuv_dixmier(t, xi, cx.opts.params, tuv::FolnerFamily::default_squares(), cx.tol(1e-3));
    const auto dk = tuv::compare_tuv_dixmier(t, xi, cx.opts.params, tuv::FolnerFamily::default_disks(), cx.tol(1e-3));
    worst = std::max({worst, sq.difference, dk.difference, std::abs(sq.rhs - dk.rhs)});
    if (xi == 0.0) {
      cx.run.tuv_rows = sq.tuv.rows;
      cx.run.tuv_rows.insert(cx.run.tuv_rows.end(), dk.tuv.rows.begin(), dk.tuv.rows.end());
      sq_limit = sq.rhs;
    }
  }
  cx.record("tuv_dixmier", worst, 1e-3, fmt::format("t = (0.5, -0.25, 0.125, -0.0625), limit {:.12g}", sq_limit));
}

// Direct shell sums plus an Euler-Maclaurin tail, written independently of
// the Hurwitz route.
double shell_sum(const std::function<double(double)>& f, const std::function<double(double)>& tail_integral,
                 const std::function<double(double)>& d1, const std::function<double(double)>& d3, int n) {
  double s = 0.0;
  for (int k = n - 1; k >= 0; --k) s += f(k);
  return s + tail_integral(n) + 0.5 * f(n) - d1(n) / 12.0 + d3(n) / 720.0;
}

void check_zeta(Context& cx) {
  constexpr int kShells = 2000;
  double worst = 0.0;
  for (double s : {2.5, 3.0, 4.0})
    for (double xi : {0.0, 0.5, 1.0}) {
      const double a = 2.0 + 2.0 * xi;
      auto f = [=](double x) { return (x + 1.0) * std::pow(x + a, -s); };
      auto integral = [=](double x) {
        return std::pow(x + a, 2.0 - s) / (s - 2.0) - (a - 1.0) * std::pow(x + a, 1.0 - s) / (s - 1.0);
      };
      auto d1 = [=](double x) { return (1.0 - s) * std::pow(x + a, -s) + s * (a - 1.0) * std::pow(x + a, -s - 1.0); };
      auto d3 = [=](double x) {
        return (1.0 - s) * (-s) * (-s - 1.0) * std::pow(x + a, -s - 2.0) +
               s * (a - 1.0) * (-s - 1.0) * (-s - 2.0) * std::pow(x + a, -s - 3.0);
      };
      const double ref = shell_sum(f, integral, d1, d3, kShells);
      worst = std::max(worst, std::abs(singtrace::trace_Q_power(s, xi) - ref) / ref);
    }
  for (double s : {1.5, 2.0, 3.0})
    for (int j : {0, 3, 7}) {
      const double a = j + 2.0;
      auto f = [=](double x) { return std::pow(x + a, -s); };
      auto integral = [=](double x) { return std::pow(x + a, 1.0 - s) / (s - 1.0); };
      auto d1 = [=](double x) { return -s * std::pow(x + a, -s - 1.0); };
      auto d3 = [=](double x) { return -s * (s + 1.0) * (s + 2.0) * std::pow(x + a, -s - 3.0); };
      const double ref = shell_sum(f, integral, d1, d3, kShells);
      worst = std::max(worst, std::abs(singtrace::trace_Q_power_proj(s, 0.0, j) - ref) / ref);
    }
  double dix = 0.0;
  for (int j = 0; j <= 5; ++j) {
    const auto e = singtrace::dixmier_via_zeta_residue(
        [j](double s) { return singtrace::trace_Q_power_proj(s, 0.0, j); }, 1e-8);
    dix = std::max(dix, std::abs(e.value - 1.0));
  }
  const auto q2 = singtrace::dixmier_via_zeta_residue([](double s) { return singtrace::trace_Q_power(2.0 * s, 0.0); }, 1e-6);
  dix = std::max(dix, std::abs(q2.value - 0.5));
  cx.record("zeta_closed_forms", std::max(worst, dix), 1e-8,
            fmt::format("closed forms vs shell sums (rel) {:.3g}; Dixmier residues {:.3g}", worst, dix));
}

void check_symmetry(Context& cx) {
  const auto basis = fock::build_basis(std::min(cx.opts.nmax, 30));
  const auto fc = fock::flip_and_conjugation(basis);
  const std::vector<fock::AntiUnitaryRep> cands{fc.Theta, models::jc_trs(basis), models::quaternionic_trs(basis)};
  ModelParams q = cx.coupled;
  q.r0 = 0.0;
  q.r1 = 1.0;
  q.r2 = 0.0;
  const auto hb = topo::classify_symmetry(fock::derived_operator(basis, fock::Derived::H_B, cx.opts.params), cands);
  const auto hjc = topo::classify_symmetry(models::jc_hamiltonian(basis, cx.coupled), cands);
  const auto hq = topo::classify_symmetry(models::quaternionic_hamiltonian(basis, q), {cands[2]});
  const bool labels = hb.symmetry == topo::Symmetry::real && hjc.symmetry == topo::Symmetry::real &&
                      hq.symmetry == topo::Symmetry::quaternionic;
  const double r = labels ? std::max({hb.residual, hjc.residual, hq.residual}) : std::numeric_limits<double>::infinity();
  cx.record("symmetry", r, 1e-8,
            fmt::format("H_B {}, H_JC {}, H_Q {}", topo::symmetry_name(hb.symmetry), topo::symmetry_name(hjc.symmetry),
                        topo::symmetry_name(hq.symmetry)));
}

void check_jc_spectrum(Context& cx) {
  const auto basis = fock::build_basis(std::max(cx.opts.nmax, 6));
  const auto d = models::diagonalize_and_gaps(models::jc_hamiltonian(basis, cx.coupled), 0.05);
  const auto closed = models::jc_spectrum(cx.coupled, basis->nmax());
  double worst = 0.0;
  int count = 0;
  for (std::size_t k = 0; k < d.table.eigenvalues.size(); ++k) {
    if (!d.table.interior[k]) continue;
    const double v = d.table.eigenvalues[k];
    double best = std::numeric_limits<double>::infinity();
    for (double e : closed.eigenvalues) best = std::min(best, std::abs(v - e));
    worst = std::max(worst, best);
    ++count;
  }
  cx.record("jc_spectrum", worst, 1e-8, fmt::format("{} interior eigenvalues at c_b = {}", count, cx.coupled.c_b));
}

const std::map<std::string, void (*)(Context&)>& registry() {
  static const std::map<std::string, void (*)(Context&)> r{
      {"commutation", check_commutation},       {"quaternionic_forms", check_quaternionic_forms},
      {"curvature", check_curvature},           {"integral_identity", check_integral_identity},
      {"tuv_dixmier", check_tuv_dixmier},       {"zeta_closed_forms", check_zeta},
      {"symmetry", check_symmetry},             {"jc_spectrum", check_jc_spectrum},
  };
  return r;
}

}  // namespace

bool VerifyRun::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names{"commutation", "quaternionic_forms", "curvature",   "zeta_closed_forms",
                                              "symmetry",    "jc_spectrum",        "tuv_dixmier", "integral_identity"};
  return names;
}

VerifyRun run(const VerifyOptions& opts, const std::string& only) {
  opts.params.validate(false);
  if (!only.empty() && !registry().contains(only)) fail(ErrorCode::invalid_argument, "unknown check '" + only + "'");
  VerifyRun out;
  Context cx{opts, out, opts.params};
  if (cx.coupled.c_b == 0.0) cx.coupled.c_b = 0.3;
  for (const auto& name : check_names())
    if (only.empty() || only == name) registry().at(name)(cx);
  return out;
}

}  // namespace landau::verify

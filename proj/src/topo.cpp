#include "landau/topo.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "landau/models.hpp"

namespace landau::topo {

using fock::OperatorMatrix;

namespace {

constexpr cplx kI{0.0, 1.0};

OperatorMatrix position(const fock::BasisPtr& basis, int i, int spin_dim, const ModelParams& params) {
  const OperatorMatrix x = fock::derived_operator(basis, i == 1 ? fock::Derived::X1 : fock::Derived::X2, params);
  return spin_dim == 1 ? x : fock::tensor_with_spin(x, fock::pauli::id());
}

// Spin-traced diagonal weighted by 1/(l + 2 + 2 xi) and summed per shell.
singtrace::GradedDiagonal graded_from_diag(const fock::TruncatedBasis& basis, int spin_dim, const fock::Vec& diag,
                                           double xi, cplx factor) {
  singtrace::GradedDiagonal gd;
  gd.shell_sums.assign(static_cast<std::size_t>(basis.nmax()) + 1, cplx{});
  for (std::size_t i = 0; i < basis.dim(); ++i) {
    const int l = basis.state(i).level();
    cplx d{};
    for (int s = 0; s < spin_dim; ++s) d += diag(static_cast<Eigen::Index>(i * spin_dim + s));
    gd.shell_sums[static_cast<std::size_t>(l)] += factor * d / (l + 2.0 + 2.0 * xi);
  }
  return gd;
}

void add(Residuals& r, std::string name, double v) { r.emplace_back(std::move(name), v); }

}  // namespace

const char* symmetry_name(Symmetry s) {
  switch (s) {
    case Symmetry::none: return "none";
    case Symmetry::real: return "Real";
    case Symmetry::quaternionic: return "Quaternionic";
  }
  return "unknown";
}

double TopologicalReport::residual(const std::string& name) const {
  for (const auto& [k, v] : identity_residuals)
    if (k == name) return v;
  return std::numeric_limits<double>::quiet_NaN();
}

bool round_certified(double estimate, double residual, int& rounded) {
  if (!std::isfinite(estimate) || !std::isfinite(residual)) return false;
  rounded = static_cast<int>(std::lround(estimate));
  const double window = std::max(3.0 * residual, 1e-12);
  return std::abs(estimate - rounded) <= window && window < 0.5;
}

OperatorMatrix partial_derivative(const OperatorMatrix& t, int i, const ModelParams& params) {
  if (i != 1 && i != 2) fail(ErrorCode::invalid_argument, "partial_derivative: direction must be 1 or 2");
  const OperatorMatrix x = position(t.basis_ptr(), i, t.spin_dim(), params);
  return cplx(-kI) * fock::commutator(x, t);
}

CurvatureResiduals verify_curvature_identity(int j, const fock::BasisPtr& basis, const ModelParams& params) {
  if (j < 0 || j > basis->nmax() - 3) fail(ErrorCode::invalid_argument, "verify_curvature_identity: need j <= Nmax - 3");
  const double l2 = params.ell_B * params.ell_B;
  const OperatorMatrix p = fock::landau_projection(basis, j);
  const OperatorMatrix c = fock::commutator(partial_derivative(p, 1, params), partial_derivative(p, 2, params));
  const OperatorMatrix upper = p + cplx(-(j + 1.0)) * fock::landau_projection(basis, j + 1);
  OperatorMatrix three = upper, alt = upper;
  if (j >= 1) {
    three += cplx(j) * fock::landau_projection(basis, j - 1);
    alt += cplx(j - 1.0) * fock::landau_projection(basis, j - 1);
  }
  CurvatureResiduals r;
  r.commutator = fock::interior_block(c - cplx(-kI * l2) * three, 3).max_abs();
  r.commutator_alt = fock::interior_block(c - cplx(-kI * l2) * alt, 3).max_abs();
  r.curvature = fock::interior_block(p * c - cplx(-kI * l2) * p, 3).max_abs();
  return r;
}

singtrace::GradedDiagonal chern_density(const OperatorMatrix& p, const ModelParams& params) {
  const OperatorMatrix d1 = partial_derivative(p, 1, params);
  const OperatorMatrix d2 = partial_derivative(p, 2, params);
  const fock::Vec diag = fock::diag_of_product((p * d1).mat(), d2.mat()) - fock::diag_of_product((p * d2).mat(), d1.mat());
  return graded_from_diag(p.basis(), p.spin_dim(), diag, params.xi, kI / (params.ell_B * params.ell_B));
}

TopologicalReport projection_invariants(const OperatorMatrix& p, const ModelParams& params, InvariantOptions opts) {
  const int nmax = p.basis().nmax();
  const int last = opts.last_shell < 0 ? nmax : std::min(opts.last_shell, nmax);
  TopologicalReport rep;
  rep.rank_estimate = singtrace::dixmier_graded(p, params.xi, opts.tolerance, {2, last});
  rep.chern_estimate = singtrace::dixmier_graded(chern_density(p, params), opts.tolerance, {2, last - 3});
  rep.rank_certified = rep.rank_estimate.converged &&
                       round_certified(rep.rank_estimate.value, rep.rank_estimate.residual, rep.rank_rounded);
  rep.chern_certified = rep.chern_estimate.converged &&
                        round_certified(rep.chern_estimate.value, rep.chern_estimate.residual, rep.chern_rounded);
  add(rep.identity_residuals, "rank_imaginary_part", std::abs(rep.rank_estimate.imag));
  add(rep.identity_residuals, "chern_imaginary_part", std::abs(rep.chern_estimate.imag));
  const int margin = std::min(nmax, nmax - last + 1);
  add(rep.identity_residuals, "idempotency", fock::interior_block(p * p - p, margin).max_abs());
  add(rep.identity_residuals, "hermiticity", p.hermiticity_defect());
  return rep;
}

TopologicalReport invariants_landau(int j, const fock::BasisPtr& basis, const ModelParams& params, double tolerance) {
  params.validate(false);
  if (j < 0 || j > basis->nmax() - 3) fail(ErrorCode::invalid_argument, "invariants_landau: need 0 <= j <= Nmax - 3");
  const OperatorMatrix p = fock::landau_projection(basis, j);
  TopologicalReport rep = projection_invariants(p, params, {tolerance, basis->nmax()});
  rep.label = "landau j=" + std::to_string(j);

  const double xi = params.xi;
  const auto zeta = singtrace::dixmier_via_zeta_residue(
      [xi, j](double s) { return singtrace::trace_Q_power_proj(s, xi, j); }, 1e-8);
  const auto gamma = singtrace::dixmier_via_gamma_fit(singtrace::SingularSequence::q_inverse_projection(xi, j), 1e-2);
  add(rep.identity_residuals, "rank_zeta_vs_graded", std::abs(zeta.value - rep.rank_estimate.value));
  add(rep.identity_residuals, "rank_gamma_vs_graded", std::abs(gamma.value - rep.rank_estimate.value));
  add(rep.identity_residuals, "curvature", verify_curvature_identity(j, basis, params).curvature);

  const auto fc = fock::flip_and_conjugation(basis);
  const double sym = commutation_residual(fc.Theta, p, 3);
  add(rep.identity_residuals, "theta_commutation", sym);
  if (sym <= 1e-8 && fc.Theta.square_sign() == 1) rep.symmetry = Symmetry::real;
  return rep;
}

TopologicalReport invariants_jc(int j, int sign, const fock::BasisPtr& basis, const ModelParams& params,
                                double tolerance) {
  params.validate(false);
  const int nmax = basis->nmax();
  if (j < 1 || j + 1 > nmax - 3) fail(ErrorCode::invalid_argument, "invariants_jc: need 1 <= j and j + 1 <= Nmax - 3");
  const OperatorMatrix p = models::jc_projection(basis, params, j, sign);
  // the top shell of the truncated formula is incomplete
  TopologicalReport rep = projection_invariants(p, params, {tolerance, nmax - 1});
  rep.label = "jaynes_cummings j=" + std::to_string(j) + (sign > 0 ? "+" : "-");

  const double l2 = params.ell_B * params.ell_B;
  const OperatorMatrix r =
      p * fock::commutator(partial_derivative(p, 1, params), partial_derivative(p, 2, params));
  const auto ang = models::jc_angles(j, params.c_b);
  const double th = sign > 0 ? ang.plus : ang.minus;
  const double s2 = std::sin(th) * std::sin(th), c2 = std::cos(th) * std::cos(th);
  const OperatorMatrix closed =
      cplx(-kI * l2) * (cplx(s2) * fock::landau_projection(basis, j - 1) + cplx(c2) * fock::landau_projection(basis, j));
  add(rep.identity_residuals, "spin_traced_curvature", fock::interior_block(fock::spin_trace(r) - closed, 4).max_abs());

  const OperatorMatrix h = models::jc_hamiltonian(basis, params);
  const double e = models::jc_level(j, sign, params);
  add(rep.identity_residuals, "eigen_equation", fock::interior_block(h * p - cplx(e) * p, 2).max_abs());

  const auto xi_op = models::jc_trs(basis);
  const double sym = commutation_residual(xi_op, p, 2);
  add(rep.identity_residuals, "xi_commutation", sym);
  if (sym <= 1e-8 && xi_op.square_sign() == 1) rep.symmetry = Symmetry::real;
  return rep;
}

TopologicalReport invariants_quaternionic(double energy, const fock::BasisPtr& basis, const ModelParams& params,
                                          double gap_threshold, double tolerance) {
  params.validate(true);
  const OperatorMatrix h = models::quaternionic_hamiltonian(basis, params);
  const auto fp = models::fermi_projection(h, energy, gap_threshold * params.eps_B);
  TopologicalReport rep = projection_invariants(fp.projection, params, {tolerance, fp.trusted_shell});
  rep.label = "quaternionic E=" + std::to_string(energy);
  add(rep.identity_residuals, "gap_lower", fp.gap.lower);
  add(rep.identity_residuals, "gap_upper", fp.gap.upper);
  add(rep.identity_residuals, "trusted_shell", fp.trusted_shell);

  int odd = 0;
  for (const auto& c : models::diagonalize_and_gaps(h, gap_threshold * params.eps_B).table.clusters(1e-8))
    if (c.multiplicity % 2 != 0) ++odd;
  add(rep.identity_residuals, "odd_interior_clusters", odd);

  const int nmax = basis->nmax();
  const auto xi_op = models::quaternionic_trs(basis);
  const double sym = commutation_residual(xi_op, fp.projection, std::clamp(nmax - fp.trusted_shell, 2, nmax));
  add(rep.identity_residuals, "xi_prime_commutation", sym);
  if (sym <= 1e-8 && xi_op.square_sign() == -1) rep.symmetry = Symmetry::quaternionic;
  if (rep.symmetry == Symmetry::quaternionic)
    rep.parity_ok = rep.certified() && rep.rank_rounded % 2 == 0 && rep.chern_rounded % 2 == 0;
  return rep;
}

double commutation_residual(const fock::AntiUnitaryRep& theta, const OperatorMatrix& a, int margin) {
  if (theta.unitary_part.spin_dim() != a.spin_dim())
    fail(ErrorCode::invalid_argument, "commutation_residual: spin dimensions differ");
  return fock::interior_block(theta.transform(a) - a, margin).max_abs();
}

SymmetryClass classify_symmetry(const OperatorMatrix& h, const std::vector<fock::AntiUnitaryRep>& candidates,
                                double tol, int margin) {
  if (!h.is_hermitian(1e-12 * std::max(1.0, h.max_abs())))
    fail(ErrorCode::invalid_argument, "classify_symmetry: operator is not hermitian");
  SymmetryClass out;
  out.residual = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    if (candidates[k].unitary_part.spin_dim() != h.spin_dim()) continue;
    const double r = commutation_residual(candidates[k], h, margin);
    const int sign = candidates[k].square_sign();
    if (r <= tol && sign != 0) {
      out.symmetry = sign > 0 ? Symmetry::real : Symmetry::quaternionic;
      out.residual = r;
      out.candidate = static_cast<int>(k);
      return out;
    }
    out.residual = std::min(out.residual, r);
  }
  return out;
}

OperatorMatrix shell_gauge(const fock::BasisPtr& basis, int spin_dim, int shells, std::uint64_t seed) {
  if (shells < 0 || shells > basis->nmax() + 1) fail(ErrorCode::invalid_argument, "shell_gauge: bad shell count");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<Eigen::Triplet<cplx>> trips;
  for (int l = 0; l < shells; ++l) {
    const auto start = static_cast<Eigen::Index>(fock::TruncatedBasis::shell_start(l) * spin_dim);
    const auto n = static_cast<Eigen::Index>((l + 1) * spin_dim);
    Eigen::MatrixXcd g(n, n);
    for (Eigen::Index c = 0; c < n; ++c)
      for (Eigen::Index r = 0; r < n; ++r) g(r, c) = cplx(normal(rng), normal(rng));
    const Eigen::MatrixXcd q = Eigen::HouseholderQR<Eigen::MatrixXcd>(g).householderQ();
    for (Eigen::Index c = 0; c < n; ++c)
      for (Eigen::Index r = 0; r < n; ++r) trips.emplace_back(start + r, start + c, q(r, c));
  }
  const auto dim = static_cast<Eigen::Index>(basis->dim() * spin_dim);
  for (auto k = static_cast<Eigen::Index>(fock::TruncatedBasis::shell_start(shells) * spin_dim); k < dim; ++k)
    trips.emplace_back(k, k, 1.0);
  OperatorMatrix u = fock::zero(basis, spin_dim);
  u.mat().setFromTriplets(trips.begin(), trips.end());
  return u;
}

}  // namespace landau::topo

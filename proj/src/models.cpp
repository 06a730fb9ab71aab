#include "landau/models.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "landau/blocks.hpp"

namespace landau::models {

using fock::Mat2;
using fock::OperatorMatrix;

namespace {

constexpr cplx kI{0.0, 1.0};

using Trip = Eigen::Triplet<cplx>;

void require_sign(int sign) {
  if (sign != 1 && sign != -1) fail(ErrorCode::invalid_argument, "sign must be +1 or -1");
}

Mat2 r_sigma(const ModelParams& p) { return p.r1 * fock::pauli::s1() + p.r2 * fock::pauli::s3(); }

double r_norm2(const ModelParams& p) { return p.r0 * p.r0 + p.r1 * p.r1 + p.r2 * p.r2; }

// Eigenvalue, certification and position of every eigenvector of a
// block diagonalization.
struct EigenEntry {
  double value;
  bool interior;
  int low_shell;  // lowest shell carrying weight above 1e-10
  std::size_t block;
  Eigen::Index col;
};

struct Decomposition {
  std::vector<blocks::BlockEigen> blocks;
  std::vector<EigenEntry> entries;  // ascending
};

Decomposition decompose(const OperatorMatrix& h) {
  const double scale = std::max(1.0, h.max_abs());
  if (h.hermiticity_defect() > 1e-12 * scale) fail(ErrorCode::invalid_argument, "operator is not hermitian");
  Decomposition d;
  d.blocks = blocks::hermitian_eigensystem(h);
  const int nmax = h.basis().nmax();
  const int sd = h.spin_dim();
  std::vector<double> shell_mass(static_cast<std::size_t>(nmax) + 1);
  for (std::size_t b = 0; b < d.blocks.size(); ++b) {
    const auto& blk = d.blocks[b];
    for (Eigen::Index c = 0; c < blk.vectors.cols(); ++c) {
      std::fill(shell_mass.begin(), shell_mass.end(), 0.0);
      for (std::size_t r = 0; r < blk.index.size(); ++r) {
        const int l = h.basis().state(static_cast<std::size_t>(blk.index[r]) / sd).level();
        shell_mass[static_cast<std::size_t>(l)] += std::norm(blk.vectors(static_cast<Eigen::Index>(r), c));
      }
      double outer = shell_mass[static_cast<std::size_t>(nmax)];
      if (nmax >= 1) outer += shell_mass[static_cast<std::size_t>(nmax) - 1];
      int low = nmax;
      for (int l = 0; l <= nmax; ++l)
        if (shell_mass[static_cast<std::size_t>(l)] > 1e-10) {
          low = l;
          break;
        }
      d.entries.push_back({blk.values(c), outer < kInteriorMass, low, b, c});
    }
  }
  std::stable_sort(d.entries.begin(), d.entries.end(),
                   [](const EigenEntry& a, const EigenEntry& b) { return a.value < b.value; });
  return d;
}

std::vector<GapRecord> find_gaps(const std::vector<EigenEntry>& entries, double threshold) {
  std::vector<GapRecord> gaps;
  const EigenEntry* prev = nullptr;
  for (const auto& e : entries) {
    if (!e.interior) continue;
    if (prev && e.value - prev->value > threshold) gaps.push_back({prev->value, e.value, e.value - prev->value});
    prev = &e;
  }
  return gaps;
}

}  // namespace

const char* model_name(Model m) {
  switch (m) {
    case Model::landau: return "landau";
    case Model::jaynes_cummings: return "jaynes_cummings";
    case Model::quaternionic: return "quaternionic";
  }
  return "unknown";
}

Model parse_model(const std::string& name) {
  if (name == "landau") return Model::landau;
  if (name == "jaynes_cummings" || name == "jc") return Model::jaynes_cummings;
  if (name == "quaternionic" || name == "q") return Model::quaternionic;
  fail(ErrorCode::invalid_argument, "unknown model '" + name + "'");
}

std::vector<SpectrumTable::Cluster> SpectrumTable::clusters(double tol) const {
  std::vector<Cluster> out;
  double first = 0.0, last = 0.0, sum = 0.0;
  int count = 0;
  auto flush = [&] {
    if (count > 0) out.push_back({sum / count, count, last - first});
    count = 0;
    sum = 0.0;
  };
  for (std::size_t k = 0; k < eigenvalues.size(); ++k) {
    if (!interior[k]) continue;
    const double v = eigenvalues[k];
    if (count > 0 && v - last > tol) flush();
    if (count == 0) first = v;
    last = v;
    sum += v;
    ++count;
  }
  flush();
  return out;
}

SpectrumTable landau_levels(const ModelParams& params, int jmax) {
  params.validate(false);
  if (jmax < 0) fail(ErrorCode::invalid_argument, "landau_levels: jmax must be nonnegative");
  SpectrumTable t;
  for (int j = 0; j <= jmax; ++j) {
    t.eigenvalues.push_back(params.eps_B * (j + 0.5));
    t.interior.push_back(true);
    t.labels.push_back(std::to_string(j));
  }
  return t;
}

Angles jc_angles(int j, double c_b) {
  if (j < 1) fail(ErrorCode::invalid_argument, "jc_angles: j must be at least 1");
  if (!(c_b >= 0.0)) fail(ErrorCode::invalid_argument, "jc_angles: c_b must be nonnegative");
  const double num = std::sqrt(8.0 * c_b * c_b * j);
  const double root = std::sqrt(1.0 + 8.0 * c_b * c_b * j);
  // tan(minus) = num / (1 - root) = -(1 + root) / num
  return {std::atan2(num, 1.0 + root), std::atan2(-(1.0 + root), num)};
}

double jc_level(int j, int sign, const ModelParams& params) {
  if (j < 0) fail(ErrorCode::invalid_argument, "jc_level: negative level");
  const double c2 = params.c_b * params.c_b;
  if (j == 0) return params.eps_B * (0.5 + c2);
  require_sign(sign);
  return params.eps_B * (j + sign * 0.5 * std::sqrt(1.0 + 8.0 * j * c2) + c2);
}

SpectrumTable jc_spectrum(const ModelParams& params, int jmax) {
  params.validate(false);
  if (jmax < 0) fail(ErrorCode::invalid_argument, "jc_spectrum: jmax must be nonnegative");
  std::vector<std::pair<double, std::string>> rows{{jc_level(0, 1, params), "0"}};
  for (int j = 1; j <= jmax; ++j) {
    rows.emplace_back(jc_level(j, -1, params), std::to_string(j) + "-");
    rows.emplace_back(jc_level(j, 1, params), std::to_string(j) + "+");
  }
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  SpectrumTable t;
  for (auto& [v, label] : rows) {
    t.eigenvalues.push_back(v);
    t.interior.push_back(true);
    t.labels.push_back(std::move(label));
  }
  return t;
}

OperatorMatrix jc_hamiltonian(const fock::BasisPtr& basis, const ModelParams& params) {
  params.validate(false);
  using fock::Derived;
  const OperatorMatrix hb = fock::derived_operator(basis, Derived::H_B, params);
  const OperatorMatrix k1 = fock::derived_operator(basis, Derived::K1, params);
  const OperatorMatrix k2 = fock::derived_operator(basis, Derived::K2, params);
  const OperatorMatrix w = fock::tensor_with_spin(k1, fock::pauli::s2()) - fock::tensor_with_spin(k2, fock::pauli::s1());
  const double c = params.c_b, e = params.eps_B;
  return fock::tensor_with_spin(hb, fock::pauli::id()) + cplx(c * e) * w + cplx(c * c * e) * fock::identity(basis, 2);
}

OperatorMatrix jc_projection(const fock::BasisPtr& basis, const ModelParams& params, int j, int sign) {
  if (j < 0 || j + 1 > basis->nmax()) fail(ErrorCode::invalid_argument, "jc_projection: need 0 <= j and j+1 <= Nmax");
  const auto& B = *basis;
  std::vector<Trip> t;
  if (j == 0) {
    for (int n2 = 0; n2 <= B.nmax(); ++n2) {
      const auto k = static_cast<int>(2 * B.index({0, n2}) + 1);
      t.emplace_back(k, k, 1.0);
    }
  } else {
    require_sign(sign);
    const Angles a = jc_angles(j, params.c_b);
    const double th = sign > 0 ? a.plus : a.minus;
    const double s = std::sin(th), c = std::cos(th);
    for (int n2 = 0; j - 1 + n2 <= B.nmax(); ++n2) {
      const auto up = static_cast<int>(2 * B.index({j - 1, n2}));
      t.emplace_back(up, up, s * s);
      if (!B.contains({j, n2})) continue;
      const auto dn = static_cast<int>(2 * B.index({j, n2}) + 1);
      // a- Pi_j maps |j,n2> to sqrt(j) |j-1,n2>
      t.emplace_back(up, dn, -kI * s * c);
      t.emplace_back(dn, up, kI * s * c);
      t.emplace_back(dn, dn, c * c);
    }
  }
  fock::SpMat m(static_cast<Eigen::Index>(2 * B.dim()), static_cast<Eigen::Index>(2 * B.dim()));
  m.setFromTriplets(t.begin(), t.end());
  return {basis, 2, std::move(m)};
}

fock::AntiUnitaryRep jc_trs(const fock::BasisPtr& basis) {
  Mat2 theta = Mat2::Zero();
  theta(0, 0) = 1.0;
  theta(1, 1) = kI;
  return {fock::tensor_with_spin(fock::flip_and_conjugation(basis).Theta.unitary_part, theta), true};
}

fock::AntiUnitaryRep quaternionic_trs(const fock::BasisPtr& basis) {
  return {fock::tensor_with_spin(fock::flip_and_conjugation(basis).Theta.unitary_part, fock::pauli::s2()), true};
}

OperatorMatrix quaternionic_a_minus(const fock::BasisPtr& basis, const ModelParams& params) {
  params.validate(true);
  const cplx ep = std::polar(1.0, std::numbers::pi / 4.0);
  const Mat2 m_minus = ep * params.r0 * fock::pauli::id() + std::conj(ep) * r_sigma(params);
  return fock::tensor_with_spin(fock::ladder(basis, fock::Ladder::a_minus), fock::pauli::id()) +
         cplx(params.c_b) * fock::tensor_with_spin(fock::identity(basis), m_minus);
}

OperatorMatrix quaternionic_hamiltonian(const fock::BasisPtr& basis, const ModelParams& params) {
  const OperatorMatrix am = quaternionic_a_minus(basis, params);
  return cplx(params.eps_B) * (am.adjoint() * am + cplx(0.5) * fock::identity(basis, 2));
}

OperatorMatrix quaternionic_hamiltonian_w(const fock::BasisPtr& basis, const ModelParams& params) {
  params.validate(true);
  const cplx ep = std::polar(1.0, std::numbers::pi / 4.0);
  const Mat2 id = fock::pauli::id(), rs = r_sigma(params);
  const OperatorMatrix w =
      ep * fock::tensor_with_spin(fock::ladder(basis, fock::Ladder::a_plus), params.r0 * id - kI * rs) +
      std::conj(ep) * fock::tensor_with_spin(fock::ladder(basis, fock::Ladder::a_minus), params.r0 * id + kI * rs);
  const double c = params.c_b, e = params.eps_B;
  return fock::tensor_with_spin(fock::derived_operator(basis, fock::Derived::H_B, params), id) + cplx(c * e) * w +
         cplx(c * c * e * r_norm2(params)) * fock::identity(basis, 2);
}

OperatorMatrix quaternionic_hamiltonian_k(const fock::BasisPtr& basis, const ModelParams& params) {
  params.validate(true);
  using fock::Derived;
  const OperatorMatrix k1 = fock::derived_operator(basis, Derived::K1, params);
  const OperatorMatrix k2 = fock::derived_operator(basis, Derived::K2, params);
  const OperatorMatrix w = fock::tensor_with_spin(cplx(params.r0) * (k1 - k2), fock::pauli::id()) +
                           fock::tensor_with_spin(k1 + k2, r_sigma(params));
  const double c = params.c_b, e = params.eps_B;
  return fock::tensor_with_spin(fock::derived_operator(basis, Derived::H_B, params), fock::pauli::id()) +
         cplx(c * e) * w + cplx(c * c * e * r_norm2(params)) * fock::identity(basis, 2);
}

std::pair<Mat2, Mat2> coupling_matrices(Model m, const ModelParams& p) {
  switch (m) {
    case Model::landau: return {Mat2::Zero(), Mat2::Zero()};
    case Model::jaynes_cummings: return {-fock::pauli::s2(), fock::pauli::s1()};
    case Model::quaternionic: {
      Mat2 g1, g2;
      g1 << -p.r0 - p.r2, -p.r1, -p.r1, -p.r0 + p.r2;
      g2 << p.r0 - p.r2, -p.r1, -p.r1, p.r0 + p.r2;
      return {g1, g2};
    }
  }
  fail(ErrorCode::invalid_argument, "coupling_matrices: unknown model");
}

OperatorMatrix kinetic_momentum(const fock::BasisPtr& basis, Model m, int i, const ModelParams& params) {
  if (i != 1 && i != 2) fail(ErrorCode::invalid_argument, "kinetic_momentum: direction must be 1 or 2");
  const OperatorMatrix k = fock::derived_operator(basis, i == 1 ? fock::Derived::K1 : fock::Derived::K2, params);
  if (m == Model::landau) return k;
  const auto [g1, g2] = coupling_matrices(m, params);
  return fock::tensor_with_spin(k, fock::pauli::id()) -
         cplx(params.c_b) * fock::tensor_with_spin(fock::identity(basis), i == 1 ? g1 : g2);
}

OperatorMatrix model_hamiltonian(const fock::BasisPtr& basis, Model m, const ModelParams& params) {
  switch (m) {
    case Model::landau: params.validate(false); return fock::derived_operator(basis, fock::Derived::H_B, params);
    case Model::jaynes_cummings: return jc_hamiltonian(basis, params);
    case Model::quaternionic: return quaternionic_hamiltonian(basis, params);
  }
  fail(ErrorCode::invalid_argument, "model_hamiltonian: unknown model");
}

Diagonalization diagonalize_and_gaps(const OperatorMatrix& h, double gap_threshold) {
  if (!(gap_threshold > 0.0)) fail(ErrorCode::invalid_argument, "diagonalize_and_gaps: threshold must be positive");
  const Decomposition d = decompose(h);
  Diagonalization out;
  out.table.provenance = Provenance::diagonalized;
  for (const auto& e : d.entries) {
    out.table.eigenvalues.push_back(e.value);
    out.table.interior.push_back(e.interior);
  }
  out.gaps = find_gaps(d.entries, gap_threshold);
  return out;
}

FermiProjection fermi_projection(const OperatorMatrix& h, double energy, double gap_threshold) {
  const Decomposition d = decompose(h);
  const auto gaps = find_gaps(d.entries, gap_threshold);
  const auto g = std::find_if(gaps.begin(), gaps.end(),
                              [energy](const GapRecord& r) { return r.lower < energy && energy < r.upper; });
  if (g == gaps.end()) fail(ErrorCode::no_gap, "fermi_projection: energy is not inside a certified gap");

  FermiProjection out{fock::zero(h.basis_ptr(), h.spin_dim()), *g, h.basis().nmax()};
  std::vector<std::vector<Eigen::Index>> chosen(d.blocks.size());
  for (const auto& e : d.entries) {
    if (!e.interior)
      out.trusted_shell = std::min(out.trusted_shell, e.low_shell - 1);
    else if (e.value <= energy)
      chosen[e.block].push_back(e.col);
  }
  std::vector<Trip> trips;
  for (std::size_t b = 0; b < d.blocks.size(); ++b) {
    if (chosen[b].empty()) continue;
    const auto& blk = d.blocks[b];
    Eigen::MatrixXcd v(blk.vectors.rows(), static_cast<Eigen::Index>(chosen[b].size()));
    for (std::size_t k = 0; k < chosen[b].size(); ++k) v.col(static_cast<Eigen::Index>(k)) = blk.vectors.col(chosen[b][k]);
    const Eigen::MatrixXcd p = v * v.adjoint();
    for (Eigen::Index c = 0; c < p.cols(); ++c)
      for (Eigen::Index r = 0; r < p.rows(); ++r)
        if (std::abs(p(r, c)) > 1e-15) trips.emplace_back(blk.index[r], blk.index[c], p(r, c));
  }
  out.projection.mat().setFromTriplets(trips.begin(), trips.end());
  return out;
}

OperatorMatrix riesz_projection(const OperatorMatrix& h, double center, double radius, int quad_points) {
  if (!(radius > 0.0) || quad_points < 8) fail(ErrorCode::invalid_argument, "riesz_projection: bad contour");
  std::vector<Trip> trips;
  for (const auto& idx : blocks::connected_blocks(h.mat())) {
    const Eigen::MatrixXcd hb = blocks::extract(h.mat(), idx);
    const Eigen::Index n = hb.rows();
    // Gershgorin: skip blocks whose spectrum cannot reach the disk
    bool reaches = false;
    for (Eigen::Index r = 0; r < n && !reaches; ++r) {
      const double rad = hb.row(r).cwiseAbs().sum() - std::abs(hb(r, r));
      reaches = std::abs(hb(r, r).real() - center) <= radius + rad;
    }
    if (!reaches) continue;
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(n, n);
    for (int k = 0; k < quad_points; ++k) {
      const cplx e = std::polar(1.0, 2.0 * std::numbers::pi * k / quad_points);
      const cplx z = center + radius * e;
      const Eigen::MatrixXcd shifted = hb - z * Eigen::MatrixXcd::Identity(n, n);
      Eigen::PartialPivLU<Eigen::MatrixXcd> lu(shifted);
      const double norm1 = shifted.cwiseAbs().colwise().sum().maxCoeff();
      if (lu.rcond() * norm1 < 1e-6)
        fail(ErrorCode::domain, "riesz_projection: contour passes within 1e-6 of the spectrum");
      acc -= (radius / quad_points) * e * lu.inverse();
    }
    for (Eigen::Index c = 0; c < n; ++c)
      for (Eigen::Index r = 0; r < n; ++r)
        if (std::abs(acc(r, c)) > 1e-15) trips.emplace_back(idx[r], idx[c], acc(r, c));
  }
  OperatorMatrix p = fock::zero(h.basis_ptr(), h.spin_dim());
  p.mat().setFromTriplets(trips.begin(), trips.end());
  return p;
}

FieldCheck nonabelian_field_check(const ModelParams& params, Model m, int nmax) {
  FieldCheck fc;
  fc.model = m;
  const auto [g1, g2] = coupling_matrices(m, params);
  const Mat2 comm = g1 * g2 - g2 * g1;
  fc.field = -kI * comm;
  fc.expected = m == Model::jaynes_cummings ? Mat2(2.0 * fock::pauli::s3()) : Mat2(Mat2::Zero());
  fc.field_residual = (fc.field - fc.expected).cwiseAbs().maxCoeff();
  fc.abelian = params.c_b == 0.0 || fc.field.cwiseAbs().maxCoeff() < 1e-14;

  const auto basis = fock::build_basis(nmax);
  const OperatorMatrix k1 = kinetic_momentum(basis, m, 1, params);
  const OperatorMatrix k2 = kinetic_momentum(basis, m, 2, params);
  const int sd = k1.spin_dim();
  OperatorMatrix expected = cplx(-kI) * fock::identity(basis, sd);
  if (sd == 2) expected += cplx(params.c_b * params.c_b) * fock::tensor_with_spin(fock::identity(basis), comm);
  fc.commutator_residual = fock::interior_block(fock::commutator(k1, k2) - expected, 1).max_abs();
  fc.ok = fc.field_residual <= 1e-12 && fc.commutator_residual <= 1e-10;
  return fc;
}

}  // namespace landau::models

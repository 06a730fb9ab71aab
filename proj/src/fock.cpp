#include "landau/fock.hpp"

#include <Eigen/SparseCore>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>

namespace landau::fock {

namespace {

using Trip = Eigen::Triplet<cplx>;

void require_compatible(const OperatorMatrix& a, const OperatorMatrix& b, const char* what) {
  if (a.basis().nmax() != b.basis().nmax() || a.spin_dim() != b.spin_dim())
    fail(ErrorCode::invalid_argument, std::string(what) + ": operands live on different spaces");
}

SpMat from_triplets(std::size_t n, const std::vector<Trip>& t) {
  SpMat m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  m.setFromTriplets(t.begin(), t.end());
  m.makeCompressed();
  return m;
}

cplx i_power(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

}  // namespace

TruncatedBasis::TruncatedBasis(int nmax) : nmax_(nmax) {
  if (nmax < 0) fail(ErrorCode::invalid_argument, "basis: Nmax must be nonnegative");
  states_.reserve(dim_for(nmax));
  for (int l = 0; l <= nmax; ++l)
    for (int n1 = 0; n1 <= l; ++n1) states_.push_back({n1, l - n1});
}

std::size_t TruncatedBasis::index(FockIndex n) const {
  if (!contains(n)) fail(ErrorCode::invalid_argument, "basis: index outside the truncation");
  return shell_start(n.level()) + static_cast<std::size_t>(n.n1);
}

BasisPtr build_basis(int nmax) { return std::make_shared<const TruncatedBasis>(nmax); }

OperatorMatrix::OperatorMatrix(BasisPtr basis, int spin_dim) : basis_(std::move(basis)), spin_dim_(spin_dim) {
  if (!basis_) fail(ErrorCode::invalid_argument, "operator: null basis");
  if (spin_dim_ != 1 && spin_dim_ != 2) fail(ErrorCode::invalid_argument, "operator: spin_dim must be 1 or 2");
  m_.resize(static_cast<Eigen::Index>(dim()), static_cast<Eigen::Index>(dim()));
}

OperatorMatrix::OperatorMatrix(BasisPtr basis, int spin_dim, SpMat m)
    : OperatorMatrix(std::move(basis), spin_dim) {
  if (m.rows() != static_cast<Eigen::Index>(dim()) || m.cols() != static_cast<Eigen::Index>(dim()))
    fail(ErrorCode::invalid_argument, "operator: matrix size does not match basis");
  m_ = std::move(m);
  m_.makeCompressed();
}

cplx OperatorMatrix::coeff(std::size_t row, std::size_t col) const {
  return m_.coeff(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
}

OperatorMatrix OperatorMatrix::adjoint() const { return {basis_, spin_dim_, SpMat(m_.adjoint())}; }

OperatorMatrix OperatorMatrix::conjugate() const { return {basis_, spin_dim_, SpMat(m_.conjugate())}; }

double OperatorMatrix::max_abs() const {
  double r = 0.0;
  for (Eigen::Index k = 0; k < m_.outerSize(); ++k)
    for (SpMat::InnerIterator it(m_, k); it; ++it) r = std::max(r, std::abs(it.value()));
  return r;
}

double OperatorMatrix::hermiticity_defect() const {
  SpMat d = m_ - SpMat(m_.adjoint());
  return OperatorMatrix(basis_, spin_dim_, std::move(d)).max_abs();
}

cplx OperatorMatrix::trace() const {
  cplx t{};
  for (Eigen::Index k = 0; k < m_.outerSize(); ++k) t += m_.coeff(k, k);
  return t;
}

OperatorMatrix& OperatorMatrix::operator+=(const OperatorMatrix& o) {
  require_compatible(*this, o, "operator+");
  m_ += o.m_;
  return *this;
}

OperatorMatrix& OperatorMatrix::operator-=(const OperatorMatrix& o) {
  require_compatible(*this, o, "operator-");
  m_ -= o.m_;
  return *this;
}

OperatorMatrix& OperatorMatrix::operator*=(cplx s) {
  m_ *= s;
  return *this;
}

OperatorMatrix operator+(OperatorMatrix a, const OperatorMatrix& b) { return a += b; }
OperatorMatrix operator-(OperatorMatrix a, const OperatorMatrix& b) { return a -= b; }

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_compatible(a, b, "operator*");
  SpMat p = a.mat() * b.mat();
  return {a.basis_ptr(), a.spin_dim(), std::move(p)};
}

OperatorMatrix operator*(cplx s, OperatorMatrix a) { return a *= s; }
OperatorMatrix operator*(OperatorMatrix a, cplx s) { return a *= s; }

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b) { return a * b - b * a; }

double max_abs_diff(const OperatorMatrix& a, const OperatorMatrix& b) { return (a - b).max_abs(); }

OperatorMatrix identity(const BasisPtr& basis, int spin_dim) {
  OperatorMatrix r(basis, spin_dim);
  r.mat().setIdentity();
  return r;
}

OperatorMatrix zero(const BasisPtr& basis, int spin_dim) { return OperatorMatrix(basis, spin_dim); }

Vec AntiUnitaryRep::apply(const Vec& v) const {
  return conjugates ? Vec(unitary_part.mat() * v.conjugate()) : Vec(unitary_part.mat() * v);
}

OperatorMatrix AntiUnitaryRep::transform(const OperatorMatrix& a) const {
  const OperatorMatrix inner = conjugates ? a.conjugate() : a;
  return unitary_part * inner * unitary_part.adjoint();
}

int AntiUnitaryRep::square_sign(double tol) const {
  const OperatorMatrix sq = conjugates ? unitary_part * unitary_part.conjugate() : unitary_part * unitary_part;
  const OperatorMatrix id = identity(unitary_part.basis_ptr(), unitary_part.spin_dim());
  if (max_abs_diff(sq, id) <= tol) return 1;
  if ((sq + id).max_abs() <= tol) return -1;
  return 0;
}

double AntiUnitaryRep::unitarity_defect() const {
  const OperatorMatrix id = identity(unitary_part.basis_ptr(), unitary_part.spin_dim());
  return max_abs_diff(unitary_part.adjoint() * unitary_part, id);
}

OperatorMatrix ladder(const BasisPtr& basis, Ladder which) {
  std::vector<Trip> t;
  t.reserve(basis->dim());
  for (std::size_t i = 0; i < basis->dim(); ++i) {
    const FockIndex n = basis->state(i);
    FockIndex target = n;
    double amp = 0.0;
    switch (which) {
      case Ladder::a_plus: target.n1 += 1; amp = std::sqrt(n.n1 + 1.0); break;
      case Ladder::a_minus: target.n1 -= 1; amp = std::sqrt(static_cast<double>(n.n1)); break;
      case Ladder::b_plus: target.n2 += 1; amp = std::sqrt(n.n2 + 1.0); break;
      case Ladder::b_minus: target.n2 -= 1; amp = std::sqrt(static_cast<double>(n.n2)); break;
    }
    if (!basis->contains(target)) continue;
    t.emplace_back(static_cast<int>(basis->index(target)), static_cast<int>(i), amp);
  }
  return {basis, 1, from_triplets(basis->dim(), t)};
}

OperatorMatrix derived_operator(const BasisPtr& basis, Derived name, const ModelParams& params) {
  const double r2 = 1.0 / std::sqrt(2.0);
  const cplx I{0.0, 1.0};
  auto ap = [&] { return ladder(basis, Ladder::a_plus); };
  auto am = [&] { return ladder(basis, Ladder::a_minus); };
  auto bp = [&] { return ladder(basis, Ladder::b_plus); };
  auto bm = [&] { return ladder(basis, Ladder::b_minus); };
  switch (name) {
    case Derived::K1: return cplx(r2) * (ap() + am());
    case Derived::K2: return (-I * r2) * (ap() - am());
    case Derived::G1: return cplx(-r2) * (bp() + bm());
    case Derived::G2: return (I * r2) * (bp() - bm());
    case Derived::X1:
      return cplx(params.ell_B) *
             (derived_operator(basis, Derived::K2, params) - derived_operator(basis, Derived::G1, params));
    case Derived::X2:
      return cplx(params.ell_B) *
             (derived_operator(basis, Derived::G2, params) - derived_operator(basis, Derived::K1, params));
    case Derived::L3:
      return diagonal_operator(basis, [](FockIndex n) { return cplx(n.n1 - n.n2); });
    case Derived::H_B:
      return diagonal_operator(basis, [&](FockIndex n) { return cplx(params.eps_B * (n.n1 + 0.5)); });
    case Derived::Q_B:
      return diagonal_operator(basis, [](FockIndex n) { return cplx(n.level() + 2.0); });
  }
  fail(ErrorCode::invalid_argument, "derived_operator: unknown name");
}

OperatorMatrix landau_projection(const BasisPtr& basis, int j) {
  if (j < 0 || j > basis->nmax()) fail(ErrorCode::invalid_argument, "landau_projection: level outside truncation");
  return diagonal_operator(basis, [j](FockIndex n) { return n.n1 == j ? cplx(1.0) : cplx(0.0); });
}

FlipConjugation flip_and_conjugation(const BasisPtr& basis) {
  std::vector<Trip> f, c, th;
  for (std::size_t i = 0; i < basis->dim(); ++i) {
    const FockIndex n = basis->state(i);
    const int swapped = static_cast<int>(basis->index({n.n2, n.n1}));
    const int l = n.level();
    f.emplace_back(swapped, static_cast<int>(i), (l % 2 == 0) ? 1.0 : -1.0);
    c.emplace_back(swapped, static_cast<int>(i), i_power(-l));
    th.emplace_back(static_cast<int>(i), static_cast<int>(i), i_power(l));
  }
  const std::size_t d = basis->dim();
  OperatorMatrix F(basis, 1, from_triplets(d, f));
  return {F, {OperatorMatrix(basis, 1, from_triplets(d, c)), true}, {OperatorMatrix(basis, 1, from_triplets(d, th)), true}};
}

OperatorMatrix tensor_with_spin(const OperatorMatrix& t, const Mat2& m) {
  if (t.spin_dim() != 1) fail(ErrorCode::invalid_argument, "tensor_with_spin: operand already carries spin");
  std::vector<Trip> out;
  out.reserve(static_cast<std::size_t>(t.mat().nonZeros()) * 4);
  for (Eigen::Index k = 0; k < t.mat().outerSize(); ++k)
    for (SpMat::InnerIterator it(t.mat(), k); it; ++it)
      for (int s = 0; s < 2; ++s)
        for (int u = 0; u < 2; ++u) {
          const cplx v = it.value() * m(s, u);
          if (v != cplx{})
            out.emplace_back(static_cast<int>(2 * it.row() + s), static_cast<int>(2 * it.col() + u), v);
        }
  return {t.basis_ptr(), 2, from_triplets(2 * t.basis().dim(), out)};
}

OperatorMatrix interior_block(const OperatorMatrix& t, int margin) {
  if (margin < 0 || margin > t.basis().nmax()) fail(ErrorCode::invalid_argument, "interior_block: bad margin");
  if (margin == 0) return t;
  BasisPtr inner = build_basis(t.basis().nmax() - margin);
  const auto k = static_cast<Eigen::Index>(inner->dim() * static_cast<std::size_t>(t.spin_dim()));
  SpMat block = t.mat().topLeftCorner(k, k);
  return {inner, t.spin_dim(), std::move(block)};
}

OperatorMatrix spin_trace(const OperatorMatrix& t) {
  if (t.spin_dim() == 1) return t;
  std::vector<Trip> out;
  for (Eigen::Index k = 0; k < t.mat().outerSize(); ++k)
    for (SpMat::InnerIterator it(t.mat(), k); it; ++it)
      if (it.row() % 2 == it.col() % 2)
        out.emplace_back(static_cast<int>(it.row() / 2), static_cast<int>(it.col() / 2), it.value());
  return {t.basis_ptr(), 1, from_triplets(t.basis().dim(), out)};
}

Vec diag_of_product(const SpMat& a, const SpMat& b) {
  const SpMat at = a.transpose();
  Vec d(a.rows());
  for (Eigen::Index n = 0; n < a.rows(); ++n) d(n) = at.col(n).cwiseProduct(b.col(n)).sum();
  return d;
}

namespace {

template <class T>
void put_le(std::ostream& os, T v) {
  using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::uint32_t>;
  const U bits = std::bit_cast<U>(v);
  std::array<char, sizeof(T)> buf{};
  for (std::size_t i = 0; i < sizeof(T); ++i) buf[i] = static_cast<char>((bits >> (8 * i)) & 0xFFu);
  os.write(buf.data(), buf.size());
}

template <class T>
T get_le(std::istream& is) {
  using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::uint32_t>;
  std::array<unsigned char, sizeof(T)> buf{};
  is.read(reinterpret_cast<char*>(buf.data()), buf.size());
  if (!is) fail(ErrorCode::invalid_argument, "read_binary: truncated stream");
  U bits = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) bits |= static_cast<U>(buf[i]) << (8 * i);
  return std::bit_cast<T>(bits);
}

}  // namespace

void write_binary(std::ostream& os, const OperatorMatrix& t) {
  put_le<std::int32_t>(os, t.basis().nmax());
  put_le<std::int32_t>(os, t.spin_dim());
  const Eigen::MatrixXcd d = t.dense();
  for (Eigen::Index r = 0; r < d.rows(); ++r)
    for (Eigen::Index c = 0; c < d.cols(); ++c) {
      put_le<double>(os, d(r, c).real());
      put_le<double>(os, d(r, c).imag());
    }
}

OperatorMatrix read_binary(std::istream& is) {
  const auto nmax = get_le<std::int32_t>(is);
  const auto spin = get_le<std::int32_t>(is);
  if (nmax < 0 || (spin != 1 && spin != 2)) fail(ErrorCode::invalid_argument, "read_binary: bad header");
  OperatorMatrix t(build_basis(nmax), spin);
  const auto n = static_cast<Eigen::Index>(t.dim());
  std::vector<Trip> trips;
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) {
      const double re = get_le<double>(is);
      const double im = get_le<double>(is);
      if (re != 0.0 || im != 0.0) trips.emplace_back(static_cast<int>(r), static_cast<int>(c), cplx(re, im));
    }
  t.mat() = from_triplets(t.dim(), trips);
  return t;
}

namespace pauli {
Mat2 id() { return Mat2::Identity(); }
Mat2 s1() {
  Mat2 m;
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}
Mat2 s2() {
  Mat2 m;
  m << 0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0;
  return m;
}
Mat2 s3() {
  Mat2 m;
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}
}  // namespace pauli

}  // namespace landau::fock

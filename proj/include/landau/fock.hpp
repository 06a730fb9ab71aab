#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <compare>
#include <cstddef>
#include <iosfwd>
#include <memory>
#include <vector>

#include "landau/common.hpp"

namespace landau::fock {

using SpMat = Eigen::SparseMatrix<cplx>;
using Vec = Eigen::VectorXcd;
using Mat2 = Eigen::Matrix2cd;

struct FockIndex {
  int n1 = 0;
  int n2 = 0;
  int level() const { return n1 + n2; }
  auto operator<=>(const FockIndex&) const = default;
};

// States with n1 + n2 <= Nmax, ordered by shell and then by n1.
class TruncatedBasis {
 public:
  explicit TruncatedBasis(int nmax);

  int nmax() const { return nmax_; }
  std::size_t dim() const { return states_.size(); }
  const FockIndex& state(std::size_t i) const { return states_[i]; }
  const std::vector<FockIndex>& states() const { return states_; }
  bool contains(FockIndex n) const { return n.n1 >= 0 && n.n2 >= 0 && n.level() <= nmax_; }
  std::size_t index(FockIndex n) const;

  static std::size_t shell_start(int level) {
    return static_cast<std::size_t>(level) * (level + 1) / 2;
  }
  static std::size_t dim_for(int nmax) { return shell_start(nmax + 1); }

 private:
  int nmax_;
  std::vector<FockIndex> states_;
};

using BasisPtr = std::shared_ptr<const TruncatedBasis>;

BasisPtr build_basis(int nmax);

// Complex operator on basis (x) C^spin_dim; the spin index varies fastest.
// Storage is sparse: every operator here is nearest-shell banded or block
// diagonal in n2, and Nmax = 120 is out of reach for dense products.
class OperatorMatrix {
 public:
  OperatorMatrix(BasisPtr basis, int spin_dim);
  OperatorMatrix(BasisPtr basis, int spin_dim, SpMat m);

  const TruncatedBasis& basis() const { return *basis_; }
  const BasisPtr& basis_ptr() const { return basis_; }
  int spin_dim() const { return spin_dim_; }
  std::size_t dim() const { return basis_->dim() * static_cast<std::size_t>(spin_dim_); }
  const SpMat& mat() const { return m_; }
  SpMat& mat() { return m_; }

  cplx coeff(std::size_t row, std::size_t col) const;
  Eigen::MatrixXcd dense() const { return Eigen::MatrixXcd(m_); }

  OperatorMatrix adjoint() const;
  OperatorMatrix conjugate() const;
  double max_abs() const;
  double hermiticity_defect() const;
  bool is_hermitian(double tol = 1e-12) const { return hermiticity_defect() <= tol; }
  cplx trace() const;

  OperatorMatrix& operator+=(const OperatorMatrix& o);
  OperatorMatrix& operator-=(const OperatorMatrix& o);
  OperatorMatrix& operator*=(cplx s);

 private:
  BasisPtr basis_;
  int spin_dim_;
  SpMat m_;
};

OperatorMatrix operator+(OperatorMatrix a, const OperatorMatrix& b);
OperatorMatrix operator-(OperatorMatrix a, const OperatorMatrix& b);
OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix operator*(cplx s, OperatorMatrix a);
OperatorMatrix operator*(OperatorMatrix a, cplx s);
OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b);

double max_abs_diff(const OperatorMatrix& a, const OperatorMatrix& b);

OperatorMatrix identity(const BasisPtr& basis, int spin_dim = 1);
OperatorMatrix zero(const BasisPtr& basis, int spin_dim = 1);

// Builds a diagonal operator from a function of the basis state.
template <class F>
OperatorMatrix diagonal_operator(const BasisPtr& basis, F&& f) {
  SpMat m(basis->dim(), basis->dim());
  m.reserve(Eigen::VectorXi::Constant(static_cast<Eigen::Index>(basis->dim()), 1));
  for (std::size_t i = 0; i < basis->dim(); ++i) {
    const cplx v = f(basis->state(i));
    if (v != cplx{}) m.insert(i, i) = v;
  }
  m.makeCompressed();
  return OperatorMatrix(basis, 1, std::move(m));
}

// Antiunitary map v -> U conj(v) (conjugates == true) or v -> U v.
struct AntiUnitaryRep {
  OperatorMatrix unitary_part;
  bool conjugates = true;

  Vec apply(const Vec& v) const;
  // Theta A Theta^{-1} = U conj(A) U^dagger.
  OperatorMatrix transform(const OperatorMatrix& a) const;
  // +1 or -1 when the square is +-identity within tol, 0 otherwise.
  int square_sign(double tol = 1e-12) const;
  double unitarity_defect() const;
};

enum class Ladder { a_plus, a_minus, b_plus, b_minus };
enum class Derived { K1, K2, G1, G2, X1, X2, L3, H_B, Q_B };

OperatorMatrix ladder(const BasisPtr& basis, Ladder which);
OperatorMatrix derived_operator(const BasisPtr& basis, Derived name, const ModelParams& params = {});
OperatorMatrix landau_projection(const BasisPtr& basis, int j);

struct FlipConjugation {
  OperatorMatrix F;
  AntiUnitaryRep C;
  AntiUnitaryRep Theta;
};
// C carries the phase (-i)^{n1+n2}: pointwise conjugation of the ladder
// generated functions gives conj(phi_n) = (-i)^{n1+n2} phi_{(n2,n1)}.
FlipConjugation flip_and_conjugation(const BasisPtr& basis);

OperatorMatrix tensor_with_spin(const OperatorMatrix& t, const Mat2& m);

// Restriction to the states with n1 + n2 <= Nmax - margin.
OperatorMatrix interior_block(const OperatorMatrix& t, int margin);

// Partial trace over the spin factor.
OperatorMatrix spin_trace(const OperatorMatrix& t);

// diag(A B) in O(nnz).
Vec diag_of_product(const SpMat& a, const SpMat& b);

// Flat little-endian dump: int32 Nmax, int32 spin_dim, then dim*dim
// row-major (re, im) float64 pairs.
void write_binary(std::ostream& os, const OperatorMatrix& t);
OperatorMatrix read_binary(std::istream& is);

namespace pauli {
Mat2 id();
Mat2 s1();
Mat2 s2();
Mat2 s3();
}  // namespace pauli

}  // namespace landau::fock

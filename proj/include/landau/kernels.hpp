#pragma once

#include <vector>

#include "landau/common.hpp"
#include "landau/fock.hpp"

namespace landau::kernels {

struct Point2 {
  double x1 = 0.0;
  double x2 = 0.0;
};

struct Region {
  enum class Shape { square, disk };
  Shape shape = Shape::square;
  double size = 1.0;  // side length for squares, radius for disks
  Point2 center{};

  static Region square(double side, Point2 c = {});
  static Region disk(double radius, Point2 c = {});
  double measure() const;
};

struct QuadratureRule {
  struct Node {
    Point2 x;
    double w;
  };
  std::vector<Node> nodes;
  int order = 0;
};

// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int order, std::vector<double>& nodes, std::vector<double>& weights);

// Tensor Gauss-Legendre on squares; Gauss-Legendre in r times a 2*order
// point trapezoid in angle on disks.
QuadratureRule make_rule(const Region& region, int order);

// psi_n(x) exactly as the closed Laguerre formula reads; fine for the low
// orders used in checks.
cplx psi_eval(fock::FockIndex n, Point2 x, const ModelParams& params = {});

// Position representative of the Fock vector |n> generated by the ladder
// algebra: phi_n = (-i)^{n1} conj(psi_n). Its orientation is opposite to the
// closed formula above.
cplx fock_function(fock::FockIndex n, Point2 x, const ModelParams& params = {});

// All phi_n(x) of a basis at once, by stable normalized recurrences.
fock::Vec basis_values(const fock::TruncatedBasis& basis, Point2 x, const ModelParams& params = {});

// Closed-form projection kernel and its commutator with X_i.
cplx landau_kernel(int j, Point2 x, Point2 y, const ModelParams& params = {});
cplx deriv_kernel(int i, int j, Point2 x, Point2 y, const ModelParams& params = {});

struct DiagonalIntegral {
  cplx value;
  cplx refined;  // same integral at doubled order
  bool converged = false;
};

// Integral over the region of T(x,x) = sum T_nm phi_n(x) conj(phi_m(x)),
// spin traced.
DiagonalIntegral integrate_kernel_diagonal(const fock::OperatorMatrix& t, const Region& region,
                                           const ModelParams& params = {}, int order = 64, double tol = 1e-8);

enum class IdentityVariant {
  literal,           // e^{+i f}, Psi_j(u) = e^{-|u|^2/2} L_j(|u|)
  ladder_consistent  // e^{-i f}, Psi_j(u) = e^{-|u|^2/2} L_j(|u|^2)
};

struct IdentityResult {
  cplx value;
  cplx refined;  // higher order and larger cutoff
  cplx expected;
  bool converged = false;
  bool matches = false;  // both evaluations within tol of expected
};

IdentityResult verify_integral_identity(int j, double cutoff, double tol,
                                        IdentityVariant variant = IdentityVariant::literal, Point2 x = {},
                                        int order = 48);

}  // namespace landau::kernels

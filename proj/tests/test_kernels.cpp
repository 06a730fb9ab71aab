#include <cmath>
#include <numbers>

#include "doctest.h"
#include "landau/kernels.hpp"
#include "landau/specfun.hpp"

using namespace landau;
using namespace landau::kernels;

namespace {

const double kPi = std::numbers::pi;

// Kernel of Pi_j from its eigenfunctions: sum over m of f_(j,m)(x) conj f_(j,m)(y).
template <class F>
cplx kernel_by_sum(F&& f, int j, Point2 x, Point2 y, int mmax) {
  cplx s{};
  for (int m = 0; m <= mmax; ++m) s += f(fock::FockIndex{j, m}, x) * std::conj(f(fock::FockIndex{j, m}, y));
  return s;
}

cplx literal(fock::FockIndex n, Point2 x) { return psi_eval(n, x); }
cplx ladder_fn(fock::FockIndex n, Point2 x) { return fock_function(n, x); }

// Tensor Gauss-Legendre over the square [-h, h]^2.
template <class F>
cplx square_integral(F&& f, double h, int order) {
  std::vector<double> t, w;
  gauss_legendre(order, t, w);
  cplx s{};
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b) s += w[a] * w[b] * h * h * f(Point2{h * t[a], h * t[b]});
  return s;
}

}  // namespace

TEST_CASE("gauss legendre integrates polynomials exactly") {
  std::vector<double> t, w;
  gauss_legendre(10, t, w);
  double s0 = 0.0, s18 = 0.0;
  for (std::size_t k = 0; k < t.size(); ++k) {
    s0 += w[k];
    s18 += w[k] * std::pow(t[k], 18);
  }
  CHECK(s0 == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(s18 == doctest::Approx(2.0 / 19.0).epsilon(1e-13));
}

TEST_CASE("regions and rules") {
  CHECK(Region::square(4.0).measure() == doctest::Approx(16.0));
  CHECK(Region::disk(2.0).measure() == doctest::Approx(4.0 * kPi));
  for (const auto& r : {Region::square(3.0, {1.0, -2.0}), Region::disk(1.5, {0.5, 0.5})}) {
    const auto rule = make_rule(r, 20);
    double area = 0.0, mx = 0.0;
    for (const auto& n : rule.nodes) {
      area += n.w;
      mx += n.w * n.x.x1;
    }
    CHECK(area == doctest::Approx(r.measure()).epsilon(1e-12));
    CHECK(mx / area == doctest::Approx(r.center.x1).epsilon(1e-12));
  }
  CHECK_THROWS_AS(Region::square(-1.0), landau::Error);
}

TEST_CASE("kernel diagonal is constant") {
  ModelParams p;
  for (double ell : {1.0, 0.6}) {
    p.ell_B = ell;
    for (int j = 0; j <= 6; ++j)
      for (Point2 x : {Point2{0, 0}, Point2{1.3, -0.2}, Point2{-4, 5}})
        CHECK(landau_kernel(j, x, x, p).real() == doctest::Approx(1.0 / (2.0 * kPi * ell * ell)).epsilon(1e-14));
  }
}

TEST_CASE("closed kernel equals the eigenfunction sum") {
  const Point2 x{0.4, -0.3}, y{-0.2, 0.9};
  for (int j = 0; j <= 3; ++j) {
    const cplx k = landau_kernel(j, x, y);
    CHECK(std::abs(k - kernel_by_sum(literal, j, x, y, 80)) < 1e-10);
    // ladder-generated functions carry the opposite orientation
    CHECK(std::abs(std::conj(k) - kernel_by_sum(ladder_fn, j, x, y, 80)) < 1e-10);
  }
}

TEST_CASE("Fock functions: ladder normalization and orthonormality") {
  // <phi_n|phi_m> by quadrature over a large square
  const fock::FockIndex ns[] = {{0, 0}, {1, 0}, {0, 2}, {2, 1}};
  for (auto n : ns)
    for (auto m : ns) {
      const cplx ip = square_integral([&](Point2 x) { return std::conj(fock_function(n, x)) * fock_function(m, x); }, 9.0, 90);
      CHECK(std::abs(ip - cplx(n == m ? 1.0 : 0.0)) < 1e-10);
    }
}

TEST_CASE("literal closed formula has unit norm too") {
  const cplx ip = square_integral([](Point2 x) { return std::norm(psi_eval({2, 1}, x)); }, 9.0, 90);
  CHECK(std::abs(ip - 1.0) < 1e-10);
  // position representative is the conjugated closed formula up to a phase
  const Point2 x{0.5, 0.25};
  CHECK(std::abs(std::abs(fock_function({2, 1}, x)) - std::abs(psi_eval({2, 1}, x))) < 1e-14);
}

TEST_CASE("basis values agree with single evaluation") {
  const auto b = fock::build_basis(25);
  const Point2 x{1.2, -0.8};
  const auto v = basis_values(*b, x);
  for (std::size_t i = 0; i < b->dim(); i += 13) CHECK(std::abs(v(i) - fock_function(b->state(i), x)) < 1e-12);
}

TEST_CASE("reproducing, idempotency and annihilation properties") {
  const Point2 x{0.3, 0.2}, z{-0.5, 0.4};
  for (int j = 0; j <= 2; ++j) {
    const fock::FockIndex n{j, 1};
    const cplx rep = square_integral([&](Point2 y) { return landau_kernel(j, x, y) * psi_eval(n, y); }, 10.0, 100);
    CHECK(std::abs(rep - psi_eval(n, x)) < 1e-6);
    const cplx idem = square_integral([&](Point2 y) { return landau_kernel(j, x, y) * landau_kernel(j, y, z); }, 10.0, 100);
    CHECK(std::abs(idem - landau_kernel(j, x, z)) < 1e-6);
  }
  const cplx ann = square_integral([&](Point2 y) { return landau_kernel(0, x, y) * psi_eval({1, 2}, y); }, 10.0, 100);
  CHECK(std::abs(ann) < 1e-6);
}

TEST_CASE("restricted trace of Pi_0 over a square is the area over 2 pi") {
  const auto b = fock::build_basis(60);
  const auto P0 = fock::landau_projection(b, 0);
  const auto r = integrate_kernel_diagonal(P0, Region::square(4.0));
  CHECK(r.converged);
  CHECK(std::abs(r.value - cplx(8.0 / kPi)) < 1e-6);
  CHECK(std::abs(integrate_kernel_diagonal(fock::zero(b), Region::disk(2.0)).value) == 0.0);
}

TEST_CASE("kernel diagonal integral matches a nodewise sum at doubled order") {
  const auto b = fock::build_basis(14);
  const auto am = fock::ladder(b, fock::Ladder::a_minus), ap = fock::ladder(b, fock::Ladder::a_plus);
  const auto P0 = fock::landau_projection(b, 0);
  const auto T = fock::interior_block(P0 - P0 * ap * am + cplx(0.3) * (am + ap), 2);
  const Region reg = Region::disk(1.5, {0.2, -0.1});
  const auto r = integrate_kernel_diagonal(T, reg, {}, 40);
  const auto rule = make_rule(reg, 80);
  cplx brute{};
  const auto& tb = T.basis();
  const Eigen::MatrixXcd d = T.dense();
  for (const auto& node : rule.nodes) {
    const auto v = basis_values(tb, node.x);
    for (Eigen::Index n = 0; n < d.rows(); ++n)
      for (Eigen::Index m = 0; m < d.cols(); ++m) brute += node.w * d(n, m) * v(n) * std::conj(v(m));
  }
  CHECK(std::abs(r.value - brute) < 1e-9);
}

TEST_CASE("commutator kernel with positions") {
  // -i [X_i, Pi_j](x, y) = -i (x_i - y_i) Pi_j(x, y)
  const Point2 x{0.7, -0.1}, y{0.2, 0.5};
  for (int i = 1; i <= 2; ++i) {
    const double d = i == 1 ? x.x1 - y.x1 : x.x2 - y.x2;
    CHECK(std::abs(deriv_kernel(i, 2, x, y) - cplx(0, -1) * d * landau_kernel(2, x, y)) < 1e-14);
  }
}

TEST_CASE("integral identity, ladder-consistent scaling") {
  const auto r = verify_integral_identity(0, 6.0, 1e-4, IdentityVariant::ladder_consistent);
  CHECK(r.converged);
  CHECK(r.matches);
  CHECK(std::abs(r.value - cplx(0.0, -kPi * kPi / 2.0)) < 1e-4);
  CHECK_THROWS_AS(verify_integral_identity(5, 6.0, 1e-4), landau::Error);
}

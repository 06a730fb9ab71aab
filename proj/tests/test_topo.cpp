#include <cmath>

#include "doctest.h"
#include "landau/fock.hpp"
#include "landau/models.hpp"
#include "landau/topo.hpp"

using namespace landau;
using namespace landau::topo;
using fock::OperatorMatrix;

TEST_CASE("certified rounding") {
  int n = -7;
  CHECK(round_certified(1.0002, 1e-4, n));
  CHECK(!round_certified(1.0004, 1e-4, n));  // outside three residuals
  CHECK(n == 1);
  CHECK(round_certified(-2.0, 0.0, n));
  CHECK(n == -2);
  CHECK(!round_certified(0.6, 0.1, n));     // 0.4 from the integer
  CHECK(!round_certified(2.1, 0.2, n));     // window of +-0.6 holds two integers
  CHECK(!round_certified(std::nan(""), 0.0, n));
}

TEST_CASE("partial derivatives are commutators with position") {
  ModelParams p;
  p.ell_B = 0.6;
  const auto b = fock::build_basis(12);
  const auto one = fock::identity(b);
  CHECK(partial_derivative(one, 1, p).max_abs() < 1e-15);
  const auto K1 = fock::derived_operator(b, fock::Derived::K1), K2 = fock::derived_operator(b, fock::Derived::K2);
  // [X_i, K_i] = i l gives d_i K_i = l
  CHECK(fock::max_abs_diff(fock::interior_block(partial_derivative(K1, 1, p), 1),
                           fock::interior_block(cplx(p.ell_B) * one, 1)) < 1e-12);
  CHECK(fock::interior_block(partial_derivative(K2, 1, p), 1).max_abs() < 1e-12);
  // derivations: d(AB) = d(A) B + A d(B)
  const auto a = K1 * K2, d = partial_derivative(a, 2, p);
  const auto ref = partial_derivative(K1, 2, p) * K2 + K1 * partial_derivative(K2, 2, p);
  CHECK(fock::max_abs_diff(fock::interior_block(d, 2), fock::interior_block(ref, 2)) < 1e-12);
  CHECK_THROWS_AS(partial_derivative(one, 3, p), landau::Error);
}

TEST_CASE("curvature identity per level") {
  ModelParams p;
  p.ell_B = 1.4;
  const auto b = fock::build_basis(20);
  for (int j = 0; j <= 5; ++j) {
    const auto r = verify_curvature_identity(j, b, p);
    CHECK(r.commutator < 1e-10);
    CHECK(r.curvature < 1e-10);
    if (j >= 1) CHECK(r.commutator_alt > 0.1);
  }
}

TEST_CASE("Landau levels have rank one and Chern one") {
  const ModelParams p;
  const auto b = fock::build_basis(120);
  for (int j = 0; j <= 4; ++j) {
    const auto r = invariants_landau(j, b, p);
    CHECK(r.certified());
    CHECK(r.rank_rounded == 1);
    CHECK(r.chern_rounded == 1);
    CHECK(std::abs(r.rank_estimate.value - 1.0) < 2e-2);
    CHECK(std::abs(r.chern_estimate.value - 1.0) < 2e-2);
    CHECK(r.symmetry == Symmetry::real);
  }
}

TEST_CASE("invariants add over orthogonal levels and survive a compact gauge") {
  const ModelParams p;
  const auto b = fock::build_basis(120);
  const auto sum = fock::landau_projection(b, 0) + fock::landau_projection(b, 2);
  const auto r = projection_invariants(sum, p);
  CHECK(r.certified());
  CHECK(r.rank_rounded == 2);
  CHECK(r.chern_rounded == 2);

  const auto u = shell_gauge(b, 1, 8, 12345);
  CHECK(fock::max_abs_diff(u * u.adjoint(), fock::identity(b)) < 1e-12);
  const auto q = fock::derived_operator(b, fock::Derived::Q_B);
  CHECK(fock::commutator(u, q).max_abs() < 1e-12);
  const auto pg = u * fock::landau_projection(b, 1) * u.adjoint();
  const auto rg = projection_invariants(pg, p);
  CHECK(rg.certified());
  CHECK(rg.rank_rounded == 1);
  CHECK(rg.chern_rounded == 1);
}

TEST_CASE("JC eigenprojections have rank one and Chern one") {
  ModelParams p;
  p.c_b = 1.0;
  const auto b = fock::build_basis(80);
  const auto r0 = projection_invariants(models::jc_projection(b, p, 0, 1), p, {1e-3, b->nmax() - 1});
  CHECK(r0.certified());
  CHECK(r0.rank_rounded == 1);
  CHECK(r0.chern_rounded == 1);
  CHECK_THROWS_AS(invariants_jc(0, 1, b, p), landau::Error);
  for (const auto& [j, s] : {std::pair{1, -1}, std::pair{2, -1}, std::pair{2, 1}}) {
    const auto r = invariants_jc(j, s, b, p);
    CHECK(r.certified());
    CHECK(r.rank_rounded == 1);
    CHECK(r.chern_rounded == 1);
  }
}

TEST_CASE("quaternionic Fermi projection has even invariants") {
  ModelParams p;
  p.c_b = 0.0;
  const auto b = fock::build_basis(40);
  const auto r = invariants_quaternionic(1.0, b, p);
  CHECK(r.certified());
  CHECK(r.symmetry == Symmetry::quaternionic);
  CHECK(r.rank_rounded == 2);
  CHECK(r.chern_rounded == 2);
  CHECK(r.parity_ok);
  ModelParams on_level = p;
  CHECK_THROWS_AS(invariants_quaternionic(1.5, b, on_level), landau::Error);
}

TEST_CASE("symmetry classification") {
  const auto b = fock::build_basis(14);
  const auto th = fock::flip_and_conjugation(b).Theta;
  const auto hb = fock::derived_operator(b, fock::Derived::H_B);
  const auto c1 = classify_symmetry(hb, {th});
  CHECK(c1.symmetry == Symmetry::real);
  CHECK(c1.candidate == 0);
  const auto broken = hb + cplx(0.3) * fock::derived_operator(b, fock::Derived::K1);
  CHECK(commutation_residual(th, broken, 2) > 0.1);
  CHECK(classify_symmetry(broken, {th}).symmetry == Symmetry::none);

  ModelParams q;
  q.c_b = 0.5;
  q.r0 = 0.0;
  q.r1 = 1.0;
  const auto hq = models::quaternionic_hamiltonian(b, q);
  const auto cq = classify_symmetry(hq, {models::jc_trs(b), models::quaternionic_trs(b)});
  CHECK(cq.symmetry == Symmetry::quaternionic);
  CHECK(cq.residual < 1e-8);
  CHECK(std::string(symmetry_name(Symmetry::quaternionic)) == "Quaternionic");
}

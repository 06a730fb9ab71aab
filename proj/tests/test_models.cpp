#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "landau/fock.hpp"
#include "landau/models.hpp"

using namespace landau;
using namespace landau::models;
using fock::OperatorMatrix;

namespace {

double interior_diff(const OperatorMatrix& a, const OperatorMatrix& b, int margin = 2) {
  return fock::max_abs_diff(fock::interior_block(a, margin), fock::interior_block(b, margin));
}

// (eps/2)(Pi_1^2 + Pi_2^2) from the kinetic momenta.
OperatorMatrix kinetic_form(const fock::BasisPtr& b, Model m, const ModelParams& p) {
  const auto p1 = kinetic_momentum(b, m, 1, p), p2 = kinetic_momentum(b, m, 2, p);
  return cplx(0.5 * p.eps_B) * (p1 * p1 + p2 * p2);
}

ModelParams q_params(double c) {
  ModelParams p;
  p.c_b = c;
  p.r0 = 0.6;
  p.r1 = 0.48;
  p.r2 = 0.64;
  return p;
}

}  // namespace

TEST_CASE("model names") {
  CHECK(parse_model("jaynes_cummings") == Model::jaynes_cummings);
  CHECK(std::string(model_name(Model::quaternionic)) == "quaternionic");
  CHECK_THROWS_AS(parse_model("graphene"), landau::Error);
}

TEST_CASE("Landau levels in closed form") {
  ModelParams p;
  p.eps_B = 1.5;
  const auto t = landau_levels(p, 4);
  CHECK(t.provenance == Provenance::closed_form);
  REQUIRE(t.eigenvalues.size() == 5);
  for (int j = 0; j <= 4; ++j) CHECK(t.eigenvalues[j] == doctest::Approx(1.5 * (j + 0.5)));
  CHECK(t.labels[2] == "2");
}

TEST_CASE("Hamiltonians agree with the kinetic form") {
  const auto b = fock::build_basis(14);
  ModelParams p;
  p.eps_B = 1.3;
  p.c_b = 0.7;
  CHECK(interior_diff(jc_hamiltonian(b, p), kinetic_form(b, Model::jaynes_cummings, p)) < 1e-12);
  const auto q = q_params(0.45);
  const auto hk = kinetic_form(b, Model::quaternionic, q);
  CHECK(interior_diff(quaternionic_hamiltonian_k(b, q), hk) < 1e-12);
  CHECK(interior_diff(quaternionic_hamiltonian_w(b, q), hk) < 1e-12);
  CHECK(interior_diff(quaternionic_hamiltonian(b, q), hk) < 1e-12);
  CHECK(jc_hamiltonian(b, p).is_hermitian(1e-14));
  CHECK(quaternionic_hamiltonian(b, q).is_hermitian(1e-14));
}

TEST_CASE("JC levels from the explicit two by two blocks") {
  ModelParams p;
  p.eps_B = 0.9;
  p.c_b = 0.35;
  const auto b = fock::build_basis(20);
  const auto h = jc_hamiltonian(b, p);
  const double e = p.eps_B, c = p.c_b;
  for (int j = 1; j <= 6; ++j) {
    const int n2 = 3;
    const auto up = static_cast<Eigen::Index>(2 * b->index({j - 1, n2}));
    const auto dn = static_cast<Eigen::Index>(2 * b->index({j, n2}) + 1);
    Eigen::Matrix2cd blk;
    blk << h.coeff(up, up), h.coeff(up, dn), h.coeff(dn, up), h.coeff(dn, dn);
    CHECK(std::abs(blk(0, 0) - cplx(e * (j - 0.5 + c * c))) < 1e-13);
    CHECK(std::abs(blk(1, 1) - cplx(e * (j + 0.5 + c * c))) < 1e-13);
    CHECK(std::abs(blk(0, 1)) == doctest::Approx(c * e * std::sqrt(2.0 * j)));
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(blk);
    CHECK(es.eigenvalues()(0) == doctest::Approx(jc_level(j, -1, p)).epsilon(1e-13));
    CHECK(es.eigenvalues()(1) == doctest::Approx(jc_level(j, 1, p)).epsilon(1e-13));
  }
  const auto z = static_cast<Eigen::Index>(2 * b->index({0, 5}) + 1);
  CHECK(h.coeff(z, z).real() == doctest::Approx(jc_level(0, 1, p)));
  const auto t = jc_spectrum(p, 3);
  REQUIRE(t.eigenvalues.size() == 7);
  for (std::size_t k = 1; k < t.eigenvalues.size(); ++k) CHECK(t.eigenvalues[k] >= t.eigenvalues[k - 1]);
  CHECK_THROWS_AS(jc_level(2, 0, p), landau::Error);
}

TEST_CASE("JC angles diagonalize the blocks") {
  for (double c : {0.0, 0.2, 1.0, 3.0})
    for (int j : {1, 2, 7}) {
      const Angles a = jc_angles(j, c);
      // the two vectors (sin, cos) are orthonormal
      CHECK(std::abs(std::sin(a.plus) * std::sin(a.minus) + std::cos(a.plus) * std::cos(a.minus)) < 1e-14);
    }
  CHECK(jc_angles(3, 0.0).plus == doctest::Approx(0.0));
  CHECK_THROWS_AS(jc_angles(0, 0.5), landau::Error);
  CHECK_THROWS_AS(jc_angles(2, -1.0), landau::Error);
}

TEST_CASE("JC eigenprojections") {
  ModelParams p;
  p.c_b = 0.6;
  const auto b = fock::build_basis(16);
  const auto h = jc_hamiltonian(b, p);
  const auto P0 = jc_projection(b, p, 0, 1);
  CHECK(interior_diff(h * P0, cplx(jc_level(0, 1, p)) * P0) < 1e-12);
  for (int j = 1; j <= 5; ++j) {
    const auto pm = jc_projection(b, p, j, -1), pp = jc_projection(b, p, j, 1);
    for (const auto* P : {&pm, &pp}) {
      CHECK(interior_diff(*P * *P, *P) < 1e-14);  // compression at the top shell
      CHECK(P->is_hermitian(1e-15));
    }
    CHECK(interior_diff(pm * pp, fock::zero(b, 2)) < 1e-14);
    CHECK((pm * P0).max_abs() < 1e-14);
    CHECK(interior_diff(h * pm, cplx(jc_level(j, -1, p)) * pm) < 1e-12);
    CHECK(interior_diff(h * pp, cplx(jc_level(j, 1, p)) * pp) < 1e-12);
    // together they span Pi_{j-1} up and Pi_j down
    const auto span = fock::tensor_with_spin(fock::landau_projection(b, j - 1), 0.5 * (fock::pauli::id() + fock::pauli::s3())) +
                      fock::tensor_with_spin(fock::landau_projection(b, j), 0.5 * (fock::pauli::id() - fock::pauli::s3()));
    CHECK(interior_diff(pm + pp, span) < 1e-14);
  }
  CHECK_THROWS_AS(jc_projection(b, p, 16, 1), landau::Error);
}

TEST_CASE("quaternionic spectrum is shifted Landau with Kramers pairs") {
  const auto q = q_params(0.8);
  const auto b = fock::build_basis(30);
  const auto d = diagonalize_and_gaps(quaternionic_hamiltonian(b, q), 0.05);
  const auto cl = d.table.clusters(1e-8);
  REQUIRE(cl.size() >= 4);
  for (int j = 0; j < 4; ++j) {
    CHECK(cl[j].value == doctest::Approx(q.eps_B * (j + 0.5)).epsilon(1e-10));
    CHECK(cl[j].multiplicity % 2 == 0);
  }
  const auto th = quaternionic_trs(b);
  CHECK(th.square_sign() == -1);
  CHECK(th.unitarity_defect() < 1e-14);
  const auto h = quaternionic_hamiltonian(b, q);
  CHECK(interior_diff(th.transform(h), h) < 1e-12);
  ModelParams bad = q;
  bad.r0 = 1.0;
  CHECK_THROWS_AS(quaternionic_hamiltonian(b, bad), landau::Error);
}

TEST_CASE("JC time reversal") {
  ModelParams p;
  p.c_b = 0.9;
  const auto b = fock::build_basis(14);
  const auto th = jc_trs(b);
  CHECK(th.square_sign() == 1);
  const auto h = jc_hamiltonian(b, p);
  CHECK(interior_diff(th.transform(h), h) < 1e-12);
}

TEST_CASE("diagonalization reports gaps between clusters") {
  ModelParams p;
  p.c_b = 0.5;
  const auto b = fock::build_basis(24);
  const auto d = diagonalize_and_gaps(jc_hamiltonian(b, p), 0.05);
  CHECK(d.table.provenance == Provenance::diagonalized);
  REQUIRE(!d.gaps.empty());
  const double e0 = jc_level(0, 1, p), e1m = jc_level(1, -1, p);
  const auto lo = std::min(e0, e1m), hi = std::max(e0, e1m);
  CHECK(d.gaps[0].lower == doctest::Approx(lo).epsilon(1e-10));
  CHECK(d.gaps[0].upper == doctest::Approx(hi).epsilon(1e-10));
  for (const auto& g : d.gaps) {
    CHECK(g.width == doctest::Approx(g.upper - g.lower));
    CHECK(g.width > 0.05);
  }
  CHECK_THROWS_AS(diagonalize_and_gaps(jc_hamiltonian(b, p), 0.0), landau::Error);
}

TEST_CASE("Fermi projection equals the Riesz projection") {
  ModelParams p;
  p.c_b = 0.4;
  const auto b = fock::build_basis(24);
  const auto h = jc_hamiltonian(b, p);
  const double e0 = jc_level(0, 1, p), e1m = jc_level(1, -1, p), e1p = jc_level(1, 1, p);
  const double e2m = jc_level(2, -1, p);
  // below the second cluster
  const double cut = 0.5 * (std::max(e0, e1m) + std::min(e1p, e2m));
  const auto f = fermi_projection(h, cut, 0.05);
  CHECK(f.trusted_shell > 10);
  const double lo = std::min(e0, e1m);
  const auto r = riesz_projection(h, 0.5 * (lo - 0.5 + cut), 0.5 * (cut - lo + 0.5), 128);
  CHECK(interior_diff(f.projection, r, b->nmax() - f.trusted_shell) < 1e-10);
  const auto ref = jc_projection(b, p, 0, 1) + jc_projection(b, p, 1, -1);
  CHECK(interior_diff(f.projection, ref, b->nmax() - f.trusted_shell) < 1e-10);

  // Landau: a circle around E_0 alone gives Pi_0
  const auto hb = fock::derived_operator(b, fock::Derived::H_B);
  CHECK(fock::max_abs_diff(riesz_projection(hb, 0.5, 0.4), fock::landau_projection(b, 0)) < 1e-10);
  const auto fb = fermi_projection(hb, 1.0, 0.05);
  CHECK(interior_diff(fb.projection, fock::landau_projection(b, 0), b->nmax() - fb.trusted_shell) < 1e-14);
}

TEST_CASE("Fermi energy on a level has no gap") {
  const auto b = fock::build_basis(16);
  const auto hb = fock::derived_operator(b, fock::Derived::H_B);
  try {
    fermi_projection(hb, 1.5, 0.05);
    CHECK(false);
  } catch (const landau::Error& e) {
    CHECK(e.code() == ErrorCode::no_gap);
  }
  CHECK_THROWS_AS(riesz_projection(hb, 1.0, 0.5), landau::Error);  // contour through E_0
}

TEST_CASE("non-Abelian field strength") {
  ModelParams p;
  p.c_b = 0.7;
  const auto jc = nonabelian_field_check(p, Model::jaynes_cummings);
  CHECK(jc.ok);
  CHECK(!jc.abelian);
  CHECK((jc.field - 2.0 * fock::pauli::s3()).norm() < 1e-14);
  const auto q = nonabelian_field_check(q_params(0.7), Model::quaternionic);
  CHECK(q.ok);
  CHECK(q.abelian);
  // independent: gamma matrices square to one and anticommute for JC
  const auto [g1, g2] = coupling_matrices(Model::jaynes_cummings, p);
  CHECK((g1 * g1 - fock::pauli::id()).norm() < 1e-15);
  CHECK((g1 * g2 + g2 * g1).norm() < 1e-15);
  CHECK(nonabelian_field_check(p, Model::landau).ok);
}

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "landau/fock.hpp"
#include "landau/singtrace.hpp"

namespace landau::topo {

enum class Symmetry { none, real, quaternionic };
const char* symmetry_name(Symmetry s);

using Residuals = std::vector<std::pair<std::string, double>>;

struct TopologicalReport {
  std::string label;
  singtrace::DixmierEstimate rank_estimate;
  singtrace::DixmierEstimate chern_estimate;
  int rank_rounded = 0;
  int chern_rounded = 0;
  bool rank_certified = false;
  bool chern_certified = false;
  Symmetry symmetry = Symmetry::none;
  bool parity_ok = true;  // only constrained for Quaternionic symmetry
  Residuals identity_residuals;

  bool certified() const { return rank_certified && chern_certified; }
  double residual(const std::string& name) const;  // NaN when absent
};

// Nearest integer, accepted when |estimate - n| <= 3 residual and the
// resulting window cannot hold a second integer.
bool round_certified(double estimate, double residual, int& rounded);

// -i [X_i, T], with X_i acting on the orbital factor.
fock::OperatorMatrix partial_derivative(const fock::OperatorMatrix& t, int i, const ModelParams& params = {});

struct CurvatureResiduals {
  // [d1 Pi_j, d2 Pi_j] against -i l^2 (Pi_j + j Pi_{j-1} - (j+1) Pi_{j+1})
  double commutator = 0.0;
  // the same with coefficient j-1 on Pi_{j-1}; nonzero for j >= 1
  double commutator_alt = 0.0;
  double curvature = 0.0;  // Pi [d1 Pi, d2 Pi] against -i l^2 Pi
};

CurvatureResiduals verify_curvature_identity(int j, const fock::BasisPtr& basis, const ModelParams& params = {});

// Diagonal of Q_xi^{-1} P [d1 P, d2 P] per shell, times i / l^2.
singtrace::GradedDiagonal chern_density(const fock::OperatorMatrix& p, const ModelParams& params);

struct InvariantOptions {
  double tolerance = 1e-3;  // convergence threshold handed to the estimators
  int last_shell = -1;      // trusted shell of p, -1 for Nmax
};

// Rank and Chern of an arbitrary projection through the graded estimator.
TopologicalReport projection_invariants(const fock::OperatorMatrix& p, const ModelParams& params,
                                        InvariantOptions opts = {});

TopologicalReport invariants_landau(int j, const fock::BasisPtr& basis, const ModelParams& params,
                                    double tolerance = 1e-3);
TopologicalReport invariants_jc(int j, int sign, const fock::BasisPtr& basis, const ModelParams& params,
                                double tolerance = 1e-3);
TopologicalReport invariants_quaternionic(double energy, const fock::BasisPtr& basis, const ModelParams& params,
                                          double gap_threshold = 0.05, double tolerance = 1e-3);

struct SymmetryClass {
  Symmetry symmetry = Symmetry::none;
  double residual = 0.0;  // commutation residual of the chosen candidate
  int candidate = -1;
};

SymmetryClass classify_symmetry(const fock::OperatorMatrix& h, const std::vector<fock::AntiUnitaryRep>& candidates,
                                double tol = 1e-8, int margin = 2);

// Largest entry of Theta A Theta^{-1} - A on the interior block.
double commutation_residual(const fock::AntiUnitaryRep& theta, const fock::OperatorMatrix& a, int margin);

// Unitary that is random on shells 0..shells-1 (block diagonal, so it
// commutes with Q) and the identity above.
fock::OperatorMatrix shell_gauge(const fock::BasisPtr& basis, int spin_dim, int shells, std::uint64_t seed);

}  // namespace landau::topo

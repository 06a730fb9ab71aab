#pragma once

#include <string>
#include <utility>
#include <vector>

#include "landau/fock.hpp"

namespace landau::models {

enum class Provenance { closed_form, diagonalized };
enum class Model { landau, jaynes_cummings, quaternionic };

const char* model_name(Model m);
Model parse_model(const std::string& name);  // throws invalid_argument

struct SpectrumTable {
  Provenance provenance = Provenance::closed_form;
  std::vector<double> eigenvalues;  // ascending
  std::vector<bool> interior;       // eigenvector off the outer two shells
  std::vector<std::string> labels;  // closed forms only

  struct Cluster {
    double value = 0.0;  // mean
    int multiplicity = 0;
    double spread = 0.0;
  };
  // Interior eigenvalues grouped when consecutive ones differ by at most tol.
  std::vector<Cluster> clusters(double tol = 1e-8) const;
};

struct GapRecord {
  double lower = 0.0;
  double upper = 0.0;
  double width = 0.0;
};

SpectrumTable landau_levels(const ModelParams& params, int jmax);

struct Angles {
  double plus = 0.0;
  double minus = 0.0;
};
// Principal branch; atan2 keeps the minus angle defined at c_b = 0.
Angles jc_angles(int j, double c_b);

// Levels 0..jmax: E_0 then E_j^- , E_j^+ for each j, sorted.
SpectrumTable jc_spectrum(const ModelParams& params, int jmax);
double jc_level(int j, int sign, const ModelParams& params);

fock::OperatorMatrix jc_hamiltonian(const fock::BasisPtr& basis, const ModelParams& params);
// sign is +1 or -1; j = 0 gives Pi_0 in the lower spin slot and ignores sign.
fock::OperatorMatrix jc_projection(const fock::BasisPtr& basis, const ModelParams& params, int j, int sign);
fock::AntiUnitaryRep jc_trs(const fock::BasisPtr& basis);

// epsilon (A+ A- + 1/2) with the explicit 2x2 blocked A+-.
fock::OperatorMatrix quaternionic_hamiltonian(const fock::BasisPtr& basis, const ModelParams& params);
// H_B (x) 1 + c eps W_Q + c^2 eps |r|^2 with W_Q in ladder form.
fock::OperatorMatrix quaternionic_hamiltonian_w(const fock::BasisPtr& basis, const ModelParams& params);
// The same through r0 (K1 - K2) (x) 1 + (K1 + K2) (x) (r1 s1 + r2 s3).
fock::OperatorMatrix quaternionic_hamiltonian_k(const fock::BasisPtr& basis, const ModelParams& params);
fock::OperatorMatrix quaternionic_a_minus(const fock::BasisPtr& basis, const ModelParams& params);
fock::AntiUnitaryRep quaternionic_trs(const fock::BasisPtr& basis);

// Coupling matrices gamma_1, gamma_2 of the non-Abelian potential.
std::pair<fock::Mat2, fock::Mat2> coupling_matrices(Model m, const ModelParams& params);
// K_i (x) 1 - c_b 1 (x) gamma_i.
fock::OperatorMatrix kinetic_momentum(const fock::BasisPtr& basis, Model m, int i, const ModelParams& params);
fock::OperatorMatrix model_hamiltonian(const fock::BasisPtr& basis, Model m, const ModelParams& params);

struct Diagonalization {
  SpectrumTable table;
  std::vector<GapRecord> gaps;
};

constexpr double kInteriorMass = 1e-8;

Diagonalization diagonalize_and_gaps(const fock::OperatorMatrix& h, double gap_threshold);

struct FermiProjection {
  fock::OperatorMatrix projection;
  GapRecord gap;
  // Highest shell on which the truncated projection is trusted: every
  // discarded edge eigenvector has weight <= 1e-10 up to this shell.
  int trusted_shell = 0;
};

// Throws no_gap unless energy lies strictly inside a certified gap.
FermiProjection fermi_projection(const fock::OperatorMatrix& h, double energy, double gap_threshold);

// (i / 2 pi) times the contour integral of the resolvent over a circle,
// trapezoid rule with quad_points nodes.
fock::OperatorMatrix riesz_projection(const fock::OperatorMatrix& h, double center, double radius, int quad_points = 64);

struct FieldCheck {
  Model model = Model::landau;
  fock::Mat2 field;     // -i [gamma_1, gamma_2]: SU(2) part per unit b^2
  fock::Mat2 expected;  // 2 sigma_3 for JC, 0 for Q
  double field_residual = 0.0;
  double commutator_residual = 0.0;  // [K1,K2] + i - c^2 [g1,g2] on the interior block
  bool abelian = false;
  bool ok = false;
};

FieldCheck nonabelian_field_check(const ModelParams& params, Model m, int nmax = 12);

}  // namespace landau::models

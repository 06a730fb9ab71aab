#pragma once

#include <vector>

#include "landau/fock.hpp"
#include "landau/kernels.hpp"
#include "landau/singtrace.hpp"

namespace landau::tuv {

using kernels::Region;

// Nested regions centred at the origin.
struct FolnerFamily {
  Region::Shape shape = Region::Shape::square;
  std::vector<double> sizes;  // half-widths for squares, radii for disks
  std::vector<Region> regions;

  static FolnerFamily squares(std::vector<double> half_widths);
  static FolnerFamily disks(std::vector<double> radii);
  static FolnerFamily default_squares() { return squares({4, 6, 8, 12}); }
  static FolnerFamily default_disks() { return disks({4, 6, 8, 12}); }
};

// Finite combination sum_j t[j] Pi_j, represented by its closed kernel.
struct LandauCombination {
  std::vector<double> t;
  double l1_norm() const;
  double sum() const;
};

// Tr(chi T chi) = integral over the region of the kernel diagonal.
// Throws non_convergence when the doubled-order rule disagrees.
double restricted_trace(const fock::OperatorMatrix& t, const Region& region, const ModelParams& params = {},
                        int order = 64, double tol = 1e-8);
double restricted_trace(const LandauCombination& t, const Region& region, const ModelParams& params = {},
                        int order = 16, double tol = 1e-10);

struct TuvRow {
  Region region;
  double raw = 0.0;         // restricted trace
  double normalized = 0.0;  // raw / |region|
};

struct TuvResult {
  double limit = 0.0;     // c0 of c0 + c1/scale
  double boundary = 0.0;  // c1
  double residual = 0.0;  // largest deviation of the rows from the fit
  bool converged = false;
  std::vector<TuvRow> rows;
};

TuvResult tuv_limit(const fock::OperatorMatrix& t, const FolnerFamily& family, const ModelParams& params,
                    double tolerance);
TuvResult tuv_limit(const LandauCombination& t, const FolnerFamily& family, const ModelParams& params,
                    double tolerance);

struct TuvDixmierReport {
  double lhs = 0.0;  // Tr_Dix(Q^{-1} T) / (2 pi l^2)
  double rhs = 0.0;  // trace per unit volume
  double difference = 0.0;
  bool agrees = false;
  std::vector<singtrace::DixmierEstimate> per_level;  // Tr_Dix(Q^{-1} Pi_j)
  TuvResult tuv;
};

TuvDixmierReport compare_tuv_dixmier(const LandauCombination& t, double xi, const ModelParams& params,
                                     const FolnerFamily& family = FolnerFamily::default_squares(),
                                     double tolerance = 1e-3);

// Integrated density of states of the Landau Hamiltonian.
double idos(double energy, const ModelParams& params = {});

}  // namespace landau::tuv

#include "landau/tuv.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

namespace landau::tuv {

namespace {

FolnerFamily make_family(Region::Shape shape, std::vector<double> sizes) {
  if (sizes.size() < 2) fail(ErrorCode::invalid_argument, "FolnerFamily: needs at least two members");
  FolnerFamily f;
  f.shape = shape;
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    if (!(sizes[k] > 0.0)) fail(ErrorCode::invalid_argument, "FolnerFamily: sizes must be positive");
    if (k > 0 && !(sizes[k] > sizes[k - 1])) fail(ErrorCode::invalid_argument, "FolnerFamily: sizes must increase");
    f.regions.push_back(shape == Region::Shape::square ? Region::square(2.0 * sizes[k]) : Region::disk(sizes[k]));
  }
  f.sizes = std::move(sizes);
  return f;
}

template <class Trace>
TuvResult limit_from(const FolnerFamily& family, double tolerance, Trace&& trace) {
  if (family.regions.size() < 4) fail(ErrorCode::invalid_argument, "tuv_limit: needs at least four regions");
  const auto m = static_cast<Eigen::Index>(family.regions.size());
  TuvResult res;
  Eigen::MatrixXd a(m, 2);
  Eigen::VectorXd b(m);
  for (Eigen::Index k = 0; k < m; ++k) {
    const Region& r = family.regions[static_cast<std::size_t>(k)];
    TuvRow row{r, trace(r), 0.0};
    row.normalized = row.raw / r.measure();
    res.rows.push_back(row);
    a(k, 0) = 1.0;
    a(k, 1) = 1.0 / family.sizes[static_cast<std::size_t>(k)];
    b(k) = row.normalized;
  }
  const Eigen::Vector2d c = a.colPivHouseholderQr().solve(b);
  res.limit = c(0);
  res.boundary = c(1);
  res.residual = (a * c - b).cwiseAbs().maxCoeff();
  res.converged = std::isfinite(res.limit) && res.residual <= tolerance;
  return res;
}

}  // namespace

FolnerFamily FolnerFamily::squares(std::vector<double> half_widths) {
  return make_family(Region::Shape::square, std::move(half_widths));
}

FolnerFamily FolnerFamily::disks(std::vector<double> radii) { return make_family(Region::Shape::disk, std::move(radii)); }

double LandauCombination::l1_norm() const {
  double s = 0.0;
  for (double v : t) s += std::abs(v);
  return s;
}

double LandauCombination::sum() const {
  double s = 0.0;
  for (double v : t) s += v;
  return s;
}

double restricted_trace(const fock::OperatorMatrix& t, const Region& region, const ModelParams& params, int order,
                        double tol) {
  const auto r = kernels::integrate_kernel_diagonal(t, region, params, order, tol);
  if (!r.converged) fail(ErrorCode::non_convergence, "restricted_trace: quadrature did not converge");
  return r.refined.real();
}

double restricted_trace(const LandauCombination& t, const Region& region, const ModelParams& params, int order,
                        double tol) {
  auto integrate = [&](int ord) {
    double total = 0.0;
    for (const auto& node : kernels::make_rule(region, ord).nodes) {
      double d = 0.0;
      for (std::size_t j = 0; j < t.t.size(); ++j)
        if (t.t[j] != 0.0) d += t.t[j] * kernels::landau_kernel(static_cast<int>(j), node.x, node.x, params).real();
      total += node.w * d;
    }
    return total;
  };
  const double v = integrate(order), v2 = integrate(2 * order);
  if (std::abs(v - v2) > tol * std::max(1.0, std::abs(v2)))
    fail(ErrorCode::non_convergence, "restricted_trace: quadrature did not converge");
  return v2;
}

TuvResult tuv_limit(const fock::OperatorMatrix& t, const FolnerFamily& family, const ModelParams& params,
                    double tolerance) {
  return limit_from(family, tolerance, [&](const Region& r) { return restricted_trace(t, r, params); });
}

TuvResult tuv_limit(const LandauCombination& t, const FolnerFamily& family, const ModelParams& params,
                    double tolerance) {
  return limit_from(family, tolerance, [&](const Region& r) { return restricted_trace(t, r, params); });
}

TuvDixmierReport compare_tuv_dixmier(const LandauCombination& t, double xi, const ModelParams& params,
                                     const FolnerFamily& family, double tolerance) {
  if (!(xi >= 0.0)) fail(ErrorCode::invalid_argument, "compare_tuv_dixmier: xi must be nonnegative");
  TuvDixmierReport rep;
  double dix = 0.0;
  for (std::size_t j = 0; j < t.t.size(); ++j) {
    const int level = static_cast<int>(j);
    auto est = singtrace::dixmier_via_zeta_residue(
        [xi, level](double s) { return singtrace::trace_Q_power_proj(s, xi, level); }, 1e-8);
    dix += t.t[j] * est.value;
    rep.per_level.push_back(std::move(est));
  }
  const double omega = std::numbers::pi * params.ell_B * params.ell_B;
  rep.lhs = dix / (2.0 * omega);
  rep.tuv = tuv_limit(t, family, params, tolerance);
  rep.rhs = rep.tuv.limit;
  rep.difference = std::abs(rep.lhs - rep.rhs);
  rep.agrees = rep.difference <= tolerance;
  return rep;
}

double idos(double energy, const ModelParams& params) {
  const double x = energy / params.eps_B - 0.5;
  if (x < 0.0) return 0.0;
  // E_j <= E for j = 0 .. floor(x); the guard absorbs rounding at the steps
  const double levels = std::floor(x + 1e-12) + 1.0;
  return levels / (2.0 * std::numbers::pi * params.ell_B * params.ell_B);
}

}  // namespace landau::tuv

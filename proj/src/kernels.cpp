#include "landau/kernels.hpp"

#include <cmath>
#include <numbers>

#include "landau/specfun.hpp"

namespace landau::kernels {

namespace {

constexpr cplx kI{0.0, 1.0};

cplx minus_i_power(int k) {
  switch (k % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, -1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, 1.0};
  }
}

double wedge(Point2 x, Point2 y) { return x.x1 * y.x2 - x.x2 * y.x1; }

double dist2(Point2 x, Point2 y) {
  const double d1 = x.x1 - y.x1, d2 = x.x2 - y.x2;
  return d1 * d1 + d2 * d2;
}

}  // namespace

cplx psi_eval(fock::FockIndex n, Point2 x, const ModelParams& params) {
  const double l = params.ell_B;
  const double r2 = x.x1 * x.x1 + x.x2 * x.x2;
  const double psi0 = std::exp(-r2 / (4.0 * l * l)) / (l * std::sqrt(2.0 * std::numbers::pi));
  const int alpha = n.n2 - n.n1;
  const cplx w = cplx(x.x1, x.x2) / (l * std::sqrt(2.0));
  // for alpha < 0 the polynomial carries |w|^{2|alpha|}, so psi vanishes at 0
  if (alpha < 0 && w == cplx{}) return {};
  const double lag = specfun::laguerre(n.n1, alpha, r2 / (2.0 * l * l));
  return psi0 * specfun::sqrt_factorial_ratio(n.n1, n.n2) * std::pow(w, alpha) * lag;
}

cplx fock_function(fock::FockIndex n, Point2 x, const ModelParams& params) {
  return minus_i_power(n.n1) * std::conj(psi_eval(n, x, params));
}

fock::Vec basis_values(const fock::TruncatedBasis& basis, Point2 x, const ModelParams& params) {
  const int nmax = basis.nmax();
  const double l = params.ell_B;
  const double zeta = (x.x1 * x.x1 + x.x2 * x.x2) / (2.0 * l * l);
  const double theta = std::atan2(x.x2, x.x1);
  const double pref = 1.0 / (l * std::sqrt(2.0 * std::numbers::pi));
  fock::Vec out(static_cast<Eigen::Index>(basis.dim()));

  std::vector<double> lag;  // normalized Laguerre functions for fixed alpha
  for (int alpha = 0; alpha <= nmax; ++alpha) {
    const int mmax = (nmax - alpha) / 2;
    lag.assign(mmax + 1, 0.0);
    if (zeta > 0.0)
      lag[0] = std::exp(0.5 * alpha * std::log(zeta) - 0.5 * zeta - 0.5 * std::lgamma(alpha + 1.0));
    else
      lag[0] = alpha == 0 ? 1.0 : 0.0;
    if (mmax >= 1) lag[1] = (1.0 + alpha - zeta) / std::sqrt(1.0 + alpha) * lag[0];
    for (int m = 1; m < mmax; ++m)
      lag[m + 1] = ((2.0 * m + 1.0 + alpha - zeta) * lag[m] - std::sqrt(m * (m + alpha + 0.0)) * lag[m - 1]) /
                   std::sqrt((m + 1.0) * (m + 1.0 + alpha));

    const cplx phase = std::polar(1.0, alpha * theta);
    for (int m = 0; m <= mmax; ++m) {
      // n2 - n1 = alpha: psi = pref e^{i alpha theta} lag
      const cplx psi_up = pref * phase * lag[m];
      const fock::FockIndex up{m, m + alpha};
      out(static_cast<Eigen::Index>(basis.index(up))) = minus_i_power(up.n1) * std::conj(psi_up);
      if (alpha > 0) {
        // n1 - n2 = alpha: psi = pref (-1)^alpha e^{-i alpha theta} lag
        const cplx psi_dn = pref * ((alpha % 2) ? -1.0 : 1.0) * std::conj(phase) * lag[m];
        const fock::FockIndex dn{m + alpha, m};
        out(static_cast<Eigen::Index>(basis.index(dn))) = minus_i_power(dn.n1) * std::conj(psi_dn);
      }
    }
  }
  return out;
}

cplx landau_kernel(int j, Point2 x, Point2 y, const ModelParams& params) {
  const double l2 = params.ell_B * params.ell_B;
  const double d2 = dist2(x, y);
  const double mag = std::exp(-d2 / (4.0 * l2)) / (2.0 * std::numbers::pi * l2) * specfun::laguerre(j, 0.0, d2 / (2.0 * l2));
  return mag * std::exp(-kI * wedge(x, y) / (2.0 * l2));
}

cplx deriv_kernel(int i, int j, Point2 x, Point2 y, const ModelParams& params) {
  if (i != 1 && i != 2) fail(ErrorCode::invalid_argument, "deriv_kernel: direction must be 1 or 2");
  const double d = i == 1 ? x.x1 - y.x1 : x.x2 - y.x2;
  return -kI * d * landau_kernel(j, x, y, params);
}

namespace {

cplx diagonal_integral(const fock::OperatorMatrix& t, const QuadratureRule& rule, const ModelParams& params) {
  const fock::OperatorMatrix u = fock::spin_trace(t);
  cplx total{};
  for (const auto& node : rule.nodes) {
    const fock::Vec v = basis_values(u.basis(), node.x, params);
    const fock::Vec tv = u.mat() * v.conjugate();
    total += node.w * v.cwiseProduct(tv).sum();
  }
  return total;
}

}  // namespace

DiagonalIntegral integrate_kernel_diagonal(const fock::OperatorMatrix& t, const Region& region,
                                           const ModelParams& params, int order, double tol) {
  DiagonalIntegral r;
  if (t.mat().nonZeros() == 0) {
    r.converged = true;
    return r;
  }
  r.value = diagonal_integral(t, make_rule(region, order), params);
  r.refined = diagonal_integral(t, make_rule(region, 2 * order), params);
  r.converged = std::abs(r.value - r.refined) <= tol;
  return r;
}

namespace {

cplx identity_integral(int j, double cutoff, IdentityVariant variant, Point2 x, int order) {
  std::vector<double> t, w;
  gauss_legendre(order, t, w);
  struct N {
    Point2 p;
    double w;
  };
  std::vector<N> nodes;
  nodes.reserve(static_cast<std::size_t>(order) * order);
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b)
      nodes.push_back({{x.x1 + cutoff * t[a], x.x2 + cutoff * t[b]}, cutoff * cutoff * w[a] * w[b]});

  const bool literal = variant == IdentityVariant::literal;
  auto Psi = [&](double d2) {
    const double arg = literal ? std::sqrt(d2) : d2;
    return std::exp(-0.5 * d2) * specfun::laguerre(j, 0.0, arg);
  };
  const double sign = literal ? 1.0 : -1.0;

  std::vector<double> psi_x(nodes.size());
  for (std::size_t k = 0; k < nodes.size(); ++k) psi_x[k] = Psi(dist2(x, nodes[k].p));

  cplx total{};
  for (std::size_t a = 0; a < nodes.size(); ++a) {
    const Point2 y = nodes[a].p;
    const double wy = nodes[a].w * psi_x[a];
    if (wy == 0.0) continue;
    cplx inner{};
    for (std::size_t b = 0; b < nodes.size(); ++b) {
      const Point2 z = nodes[b].p;
      const double f = wedge(x, z) + wedge(z, y) + wedge(y, x);
      inner += nodes[b].w * psi_x[b] * Psi(dist2(y, z)) * f * std::polar(1.0, sign * f);
    }
    total += wy * inner;
  }
  return total;
}

}  // namespace

IdentityResult verify_integral_identity(int j, double cutoff, double tol, IdentityVariant variant, Point2 x,
                                        int order) {
  if (j < 0 || j > 4) fail(ErrorCode::invalid_argument, "verify_integral_identity: j must lie in 0..4");
  if (!(cutoff > 0.0)) fail(ErrorCode::invalid_argument, "verify_integral_identity: cutoff must be positive");
  IdentityResult r;
  r.expected = std::numbers::pi * std::numbers::pi / (2.0 * kI);
  r.value = identity_integral(j, cutoff, variant, x, order);
  r.refined = identity_integral(j, cutoff + 1.0, variant, x, order + 8);
  r.converged = std::abs(r.value - r.refined) <= tol;
  r.matches = std::abs(r.value - r.expected) <= tol && std::abs(r.refined - r.expected) <= tol;
  return r;
}

}  // namespace landau::kernels

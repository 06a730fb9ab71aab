#include "landau/specfun.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "landau/common.hpp"

namespace landau {

void ModelParams::validate(bool check_r) const {
  if (!(ell_B > 0.0) || !std::isfinite(ell_B)) fail(ErrorCode::invalid_argument, "ell_B must be positive");
  if (!(eps_B > 0.0) || !std::isfinite(eps_B)) fail(ErrorCode::invalid_argument, "eps_B must be positive");
  if (!(xi >= 0.0) || !std::isfinite(xi)) fail(ErrorCode::invalid_argument, "xi must be nonnegative");
  if (!(c_b >= 0.0) || !std::isfinite(c_b)) fail(ErrorCode::invalid_argument, "c_b must be nonnegative");
  if (check_r) {
    const double norm2 = r0 * r0 + r1 * r1 + r2 * r2;
    if (std::abs(norm2 - 1.0) > 1e-12)
      fail(ErrorCode::invalid_argument, "r0^2 + r1^2 + r2^2 must equal 1");
  }
}

namespace specfun {

double laguerre(int m, double alpha, double x) {
  if (m < 0) fail(ErrorCode::domain, "laguerre: negative degree");
  if (m == 0) return 1.0;
  // Negative integer order: the upward recurrence cancels badly, reflect to
  // L_m^{(-k)}(x) = (-x)^k (m-k)!/m! L_{m-k}^{(k)}(x).
  if (alpha < 0.0 && alpha == std::floor(alpha) && -alpha <= m) {
    const int k = static_cast<int>(-alpha);
    if (x == 0.0) return 0.0;
    // (-x)^k (m-k)!/m! in logs, to stay clear of subnormals
    const double mag = std::exp(k * std::log(std::abs(x)) + std::lgamma(m - k + 1.0) - std::lgamma(m + 1.0));
    const double sign = (x < 0.0 || k % 2 == 0) ? 1.0 : -1.0;
    return sign * mag * laguerre(m - k, k, x);
  }
  // alpha < -m: every term of the power series has the same sign.
  if (alpha < -m) {
    double c = 1.0;  // binom(m + alpha, m)
    for (int t = 1; t <= m; ++t) c *= (alpha + t) / t;
    double sum = c;
    for (int i = 0; i < m; ++i) {
      c *= -x * (m - i) / ((i + 1.0) * (alpha + i + 1.0));
      sum += c;
    }
    return sum;
  }
  double prev = 1.0;
  double cur = 1.0 + alpha - x;
  for (int k = 1; k < m; ++k) {
    const double next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

double hurwitz_zeta(double s, double q) {
  if (!(s > 1.0)) fail(ErrorCode::domain, "hurwitz_zeta: s must exceed 1");
  if (!(q > 0.0)) fail(ErrorCode::domain, "hurwitz_zeta: q must be positive");
  constexpr int kDirect = 50;
  // smallest terms first
  double head = 0.0;
  for (int j = kDirect - 1; j >= 0; --j) head += std::pow(j + q, -s);

  const double a = kDirect + q;
  const double fa = std::pow(a, -s);
  double tail = a * fa / (s - 1.0) + 0.5 * fa;
  tail += s / 12.0 * fa / a;                                          // B2
  tail -= s * (s + 1.0) * (s + 2.0) / 720.0 * fa / (a * a * a);       // B4
  return head + tail;
}

double sqrt_factorial_ratio(int n1, int n2) {
  if (n1 < 0 || n2 < 0) fail(ErrorCode::domain, "sqrt_factorial_ratio: negative argument");
  if (n1 == n2) return 1.0;
  if (std::abs(n1 - n2) <= 32) {
    const int lo = std::min(n1, n2), hi = std::max(n1, n2);
    double prod = 1.0;
    for (int k = lo + 1; k <= hi; ++k) prod *= k;
    const double r = std::sqrt(prod);
    return n1 > n2 ? r : 1.0 / r;
  }
  return std::exp(0.5 * (std::lgamma(n1 + 1.0) - std::lgamma(n2 + 1.0)));
}

}  // namespace specfun
}  // namespace landau

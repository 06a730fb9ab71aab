#include <cmath>
#include <numbers>
#include <utility>

#include "landau/kernels.hpp"

namespace landau::kernels {

Region Region::square(double side, Point2 c) {
  if (!(side > 0.0)) fail(ErrorCode::invalid_argument, "square region needs a positive side");
  return {Shape::square, side, c};
}

Region Region::disk(double radius, Point2 c) {
  if (!(radius > 0.0)) fail(ErrorCode::invalid_argument, "disk region needs a positive radius");
  return {Shape::disk, radius, c};
}

double Region::measure() const {
  return shape == Shape::square ? size * size : std::numbers::pi * size * size;
}

namespace {

// P_n(x) and P_{n-1}(x) by the three-term recurrence.
std::pair<double, double> legendre_pair(int n, double x) {
  double prev = 1.0, cur = x;
  if (n == 0) return {1.0, 0.0};
  for (int k = 2; k <= n; ++k) {
    const double next = ((2.0 * k - 1.0) * x * cur - (k - 1.0) * prev) / k;
    prev = cur;
    cur = next;
  }
  return {cur, prev};
}

}  // namespace

void gauss_legendre(int order, std::vector<double>& nodes, std::vector<double>& weights) {
  if (order < 1) fail(ErrorCode::invalid_argument, "gauss_legendre: order must be positive");
  nodes.assign(order, 0.0);
  weights.assign(order, 0.0);
  for (int i = 0; i < (order + 1) / 2; ++i) {
    // Tricomi initial guess, then Newton
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      const auto [pn, pm] = legendre_pair(order, x);
      dp = order * (x * pn - pm) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const auto [pn, pm] = legendre_pair(order, x);
    dp = order * (x * pn - pm) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[i] = -x;
    nodes[order - 1 - i] = x;
    weights[i] = weights[order - 1 - i] = w;
  }
  if (order % 2 == 1) nodes[order / 2] = 0.0;
}

QuadratureRule make_rule(const Region& region, int order) {
  std::vector<double> t, w;
  gauss_legendre(order, t, w);
  QuadratureRule rule;
  rule.order = order;
  if (region.shape == Region::Shape::square) {
    const double h = 0.5 * region.size;
    rule.nodes.reserve(static_cast<std::size_t>(order) * order);
    for (int i = 0; i < order; ++i)
      for (int k = 0; k < order; ++k)
        rule.nodes.push_back({{region.center.x1 + h * t[i], region.center.x2 + h * t[k]}, h * h * w[i] * w[k]});
    return rule;
  }
  const double R = region.size;
  const int na = 2 * order;
  const double dth = 2.0 * std::numbers::pi / na;
  rule.nodes.reserve(static_cast<std::size_t>(order) * na);
  for (int i = 0; i < order; ++i) {
    const double r = 0.5 * R * (t[i] + 1.0);
    const double wr = 0.5 * R * w[i] * r;
    for (int a = 0; a < na; ++a) {
      const double th = (a + 0.5) * dth;
      rule.nodes.push_back({{region.center.x1 + r * std::cos(th), region.center.x2 + r * std::sin(th)}, wr * dth});
    }
  }
  return rule;
}

}  // namespace landau::kernels

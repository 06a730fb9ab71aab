#include "landau/singtrace.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "landau/blocks.hpp"
#include "landau/kernels.hpp"
#include "landau/specfun.hpp"

namespace landau::singtrace {

namespace {

// Neumaier compensated accumulator.
struct Accumulator {
  double sum = 0.0, comp = 0.0;
  void add(double v) {
    const double t = sum + v;
    comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

// Walks the unrolled sequence mu_0, mu_1, ...
class Walker {
 public:
  explicit Walker(const SingularSequence& s) : s_(s) { load(); }
  double next() {
    if (done_) return 0.0;
    const double v = cur_value_;
    if (++used_ >= cur_mult_) {
      ++group_;
      load();
    }
    return v;
  }

 private:
  void load() {
    used_ = 0;
    if (!s_.infinite() && group_ >= s_.groups()) {
      done_ = true;
      return;
    }
    cur_value_ = s_.value(group_);
    cur_mult_ = s_.mult(group_);
  }
  const SingularSequence& s_;
  std::int64_t group_ = 0, used_ = 0, cur_mult_ = 0;
  double cur_value_ = 0.0;
  bool done_ = false;
};

// Least squares with column scaling; returns coefficients.
Eigen::VectorXd lsq(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  Eigen::VectorXd scale = a.colwise().norm().transpose();
  for (Eigen::Index k = 0; k < scale.size(); ++k)
    if (scale(k) == 0.0) scale(k) = 1.0;
  const Eigen::MatrixXd as = a * scale.cwiseInverse().asDiagonal();
  Eigen::VectorXd x = as.colPivHouseholderQr().solve(b);
  return x.cwiseQuotient(scale);
}

}  // namespace

SingularSequence SingularSequence::closed_form(ValueFn value, MultFn mult, std::int64_t groups) {
  SingularSequence s;
  s.value_ = std::move(value);
  s.mult_ = std::move(mult);
  s.groups_ = groups;
  return s;
}

SingularSequence SingularSequence::from_values(std::vector<double> values) {
  for (double& v : values) v = std::abs(v);
  std::sort(values.begin(), values.end(), std::greater<>());
  auto data = std::make_shared<std::vector<double>>(std::move(values));
  SingularSequence s;
  s.groups_ = static_cast<std::int64_t>(data->size());
  s.value_ = [data](std::int64_t g) { return (*data)[static_cast<std::size_t>(g)]; };
  s.mult_ = [](std::int64_t) { return std::int64_t{1}; };
  s.matrix_derived_ = true;
  return s;
}

SingularSequence SingularSequence::from_matrix(const fock::OperatorMatrix& positive) {
  return from_values(blocks::hermitian_eigenvalues(positive));
}

SingularSequence SingularSequence::q_inverse_power(double s, double xi) {
  return closed_form([s, xi](std::int64_t l) { return std::pow(l + 2.0 + 2.0 * xi, -s); },
                     [](std::int64_t l) { return l + 1; });
}

SingularSequence SingularSequence::q_inverse_projection(double xi, int j) {
  return closed_form([xi, j](std::int64_t k) { return 1.0 / (k + j + 2.0 + 2.0 * xi); },
                     [](std::int64_t) { return std::int64_t{1}; });
}

SingularSequence SingularSequence::finite_rank(std::int64_t rank) {
  return closed_form([](std::int64_t g) { return g == 0 ? 1.0 : 0.0; },
                     [rank](std::int64_t g) { return g == 0 ? rank : std::int64_t{1}; });
}

std::int64_t SingularSequence::length() const {
  if (infinite()) return -1;
  std::int64_t n = 0;
  for (std::int64_t g = 0; g < groups_; ++g) n += mult_(g);
  return n;
}

std::vector<double> SingularSequence::partial_sums(const std::vector<std::int64_t>& schedule) const {
  std::vector<double> out;
  out.reserve(schedule.size());
  Walker w(*this);
  Accumulator acc;
  std::int64_t taken = 0;
  for (std::int64_t n : schedule) {
    if (n < taken) fail(ErrorCode::invalid_argument, "partial_sums: schedule must increase");
    for (; taken < n; ++taken) acc.add(w.next());
    out.push_back(acc.value());
  }
  return out;
}

std::vector<double> SingularSequence::leading_values(std::int64_t count) const {
  std::vector<double> v(static_cast<std::size_t>(count));
  Walker w(*this);
  for (auto& x : v) x = w.next();
  return v;
}

double sigma_partial(const SingularSequence& seq, std::int64_t n) {
  if (n < 0) fail(ErrorCode::invalid_argument, "sigma_partial: negative N");
  if (seq.matrix_derived() && n > seq.length())
    fail(ErrorCode::invalid_argument, "sigma_partial: N exceeds the matrix-derived sequence");
  return seq.partial_sums({n}).front();
}

std::vector<std::pair<std::int64_t, double>> gamma_sequence(const SingularSequence& seq,
                                                            const std::vector<std::int64_t>& schedule) {
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    if (schedule[k] < 2) fail(ErrorCode::invalid_argument, "gamma_sequence: N must be at least 2");
    if (k > 0 && schedule[k] <= schedule[k - 1]) fail(ErrorCode::invalid_argument, "gamma_sequence: schedule must increase");
  }
  const auto sig = seq.partial_sums(schedule);
  std::vector<std::pair<std::int64_t, double>> out;
  for (std::size_t k = 0; k < schedule.size(); ++k)
    out.emplace_back(schedule[k], sig[k] / std::log(static_cast<double>(schedule[k])));
  return out;
}

double cesaro_tau(const SingularSequence& seq, double lambda, double lambda0) {
  if (!(lambda0 > std::numbers::e)) fail(ErrorCode::invalid_argument, "cesaro_tau: lambda0 must exceed e");
  if (!(lambda > lambda0)) fail(ErrorCode::invalid_argument, "cesaro_tau: lambda must exceed lambda0");
  std::vector<double> t, w;
  kernels::gauss_legendre(4, t, w);
  if (lambda > 1e9) fail(ErrorCode::invalid_argument, "cesaro_tau: lambda above 1e9");
  const auto last = static_cast<std::int64_t>(std::floor(lambda));
  // sigma_s linear on [N, N+1] with slope mu_N
  Walker walk(seq);
  Accumulator integral;
  double sigma = 0.0;
  for (std::int64_t n = 0; n <= last; ++n) {
    const double mu = walk.next();
    const double a = std::max(static_cast<double>(n), lambda0);
    const double b = std::min(static_cast<double>(n + 1), lambda);
    if (b > a) {
      const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
      double piece = 0.0;
      for (std::size_t k = 0; k < t.size(); ++k) {
        const double s = mid + half * t[k];
        const double sig_s = sigma + (s - n) * mu;
        piece += w[k] * sig_s / (s * std::log(s));
      }
      integral.add(half * piece);
    }
    sigma += mu;
  }
  return integral.value() / std::log(lambda);
}

const char* method_name(Method m) {
  switch (m) {
    case Method::gamma_fit: return "gamma_fit";
    case Method::zeta_residue: return "zeta_residue";
    case Method::graded_diagonal: return "graded_diagonal";
  }
  return "unknown";
}

DixmierEstimate dixmier_via_gamma_fit(const SingularSequence& seq, double tolerance) {
  std::vector<std::int64_t> schedule;
  const std::int64_t len = seq.length();
  for (int k = 10; k <= 24; ++k) {
    const std::int64_t n = std::int64_t{1} << k;
    if (seq.matrix_derived() && n > len) break;
    schedule.push_back(n);
  }
  if (seq.matrix_derived() && schedule.size() < 8) {
    // short matrix sequence: geometric schedule inside its length
    schedule.clear();
    for (std::int64_t n = 2; n <= len; n *= 2) schedule.push_back(n);
  }
  DixmierEstimate est;
  est.method = Method::gamma_fit;
  if (schedule.size() < 3) {
    est.converged = false;
    est.residual = std::numeric_limits<double>::infinity();
    return est;
  }
  const auto g = gamma_sequence(seq, schedule);
  // L + c/log N + d/(sqrt(N) log N); the last term carries the shell
  // structure of sequences with growing multiplicity.
  const bool third = g.size() >= 6;
  Eigen::MatrixXd a(static_cast<Eigen::Index>(g.size()), third ? 3 : 2);
  Eigen::VectorXd b(static_cast<Eigen::Index>(g.size()));
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double n = static_cast<double>(g[k].first);
    a(k, 0) = 1.0;
    a(k, 1) = 1.0 / std::log(n);
    if (third) a(k, 2) = 1.0 / (std::sqrt(n) * std::log(n));
    b(k) = g[k].second;
    est.samples.push_back({static_cast<double>(g[k].first), g[k].second});
  }
  const Eigen::VectorXd c = lsq(a, b);
  est.value = c(0);
  est.residual = (a * c - b).cwiseAbs().maxCoeff();
  est.converged = est.residual <= tolerance;
  return est;
}

double trace_Q_power(double s, double xi) {
  if (!(s > 2.0)) fail(ErrorCode::domain, "trace_Q_power: Q^{-s} is trace class only for s > 2");
  if (!(xi >= 0.0)) fail(ErrorCode::domain, "trace_Q_power: xi must be nonnegative");
  const double a = 1.0 + 2.0 * xi;
  return specfun::hurwitz_zeta(s - 1.0, a) - a * specfun::hurwitz_zeta(s, a);
}

double trace_Q_power_proj(double s, double xi, int j) {
  if (!(s > 1.0)) fail(ErrorCode::domain, "trace_Q_power_proj: trace class only for s > 1");
  if (!(xi >= 0.0) || j < 0) fail(ErrorCode::domain, "trace_Q_power_proj: need xi >= 0 and j >= 0");
  return specfun::hurwitz_zeta(s, j + 2.0 * (1.0 + xi));
}

DixmierEstimate dixmier_via_zeta_residue(const std::function<double(double)>& zeta_fn, double tolerance) {
  constexpr int kFirst = 3, kLast = 12;
  constexpr int n = kLast - kFirst + 1;
  DixmierEstimate est;
  est.method = Method::zeta_residue;
  std::vector<std::vector<double>> table(n);
  for (int i = 0; i < n; ++i) {
    const double h = std::ldexp(1.0, -(kFirst + i));
    const double f = h * zeta_fn(1.0 + h);
    est.samples.push_back({1.0 + h, f});
    table[i].push_back(f);
    for (int m = 1; m <= i; ++m) {
      const double factor = std::ldexp(1.0, m) - 1.0;
      table[i].push_back(table[i][m - 1] + (table[i][m - 1] - table[i - 1][m - 1]) / factor);
    }
  }
  // pick the entry whose last correction is smallest
  double best = table[0][0], best_err = std::numeric_limits<double>::infinity();
  for (int i = 1; i < n; ++i)
    for (int m = 1; m <= i; ++m) {
      const double err = std::abs(table[i][m] - table[i][m - 1]);
      if (err < best_err) {
        best_err = err;
        best = table[i][m];
      }
    }
  est.value = best;
  est.residual = best_err;
  est.converged = std::isfinite(best) && best_err <= tolerance;
  return est;
}

GradedDiagonal graded_diagonal(const fock::OperatorMatrix& m, double xi) {
  const auto& basis = m.basis();
  GradedDiagonal gd;
  gd.shell_sums.assign(static_cast<std::size_t>(basis.nmax()) + 1, cplx{});
  const int sd = m.spin_dim();
  for (std::size_t i = 0; i < basis.dim(); ++i) {
    const int l = basis.state(i).level();
    cplx d{};
    for (int s = 0; s < sd; ++s) {
      const auto k = static_cast<Eigen::Index>(i * sd + s);
      d += m.mat().coeff(k, k);
    }
    gd.shell_sums[static_cast<std::size_t>(l)] += d / (l + 2.0 + 2.0 * xi);
  }
  return gd;
}

namespace {

struct WindowFit {
  double L = 0.0;
  double max_dev = 0.0;
};

WindowFit fit_window(const std::vector<double>& cum, int lo, int hi) {
  const int count = hi - lo + 1;
  const int params = std::clamp(count - 2, 2, 4);
  Eigen::MatrixXd a(count, params);
  Eigen::VectorXd b(count);
  for (int r = 0; r < count; ++r) {
    const double N = lo + r + 1.0;
    a(r, 0) = std::log(N);
    if (params > 1) a(r, 1) = 1.0;
    if (params > 2) a(r, 2) = 1.0 / N;
    if (params > 3) a(r, 3) = 1.0 / (N * N);
    b(r) = cum[static_cast<std::size_t>(lo + r)];
  }
  const Eigen::VectorXd c = lsq(a, b);
  WindowFit f;
  f.L = c(0);
  const Eigen::VectorXd dev = a * c - b;
  for (int r = 0; r < count; ++r) f.max_dev = std::max(f.max_dev, std::abs(dev(r)) / std::log(lo + r + 1.0));
  return f;
}

}  // namespace

DixmierEstimate dixmier_graded(const GradedDiagonal& gd, double tolerance, GradedOptions opts) {
  const int nmax = static_cast<int>(gd.shell_sums.size()) - 1;
  if (nmax < 12) fail(ErrorCode::domain, "dixmier_graded: needs Nmax >= 12");
  const int last = opts.last_shell < 0 ? nmax : std::min(opts.last_shell, nmax);
  const int top = last - opts.margin;
  if (top < 10) fail(ErrorCode::domain, "dixmier_graded: too few trusted shells");

  std::vector<double> cre(static_cast<std::size_t>(nmax) + 1), cim(cre.size());
  Accumulator are, aim;
  for (int l = 0; l <= nmax; ++l) {
    are.add(gd.shell_sums[static_cast<std::size_t>(l)].real());
    aim.add(gd.shell_sums[static_cast<std::size_t>(l)].imag());
    cre[static_cast<std::size_t>(l)] = are.value();
    cim[static_cast<std::size_t>(l)] = aim.value();
  }

  const int lo_half = top / 2, lo_quarter = (3 * top) / 4;
  const WindowFit half = fit_window(cre, lo_half, top);
  const WindowFit quarter = fit_window(cre, lo_quarter, top);

  DixmierEstimate est;
  est.method = Method::graded_diagonal;
  est.value = half.L;
  est.imag = fit_window(cim, lo_half, top).L;
  est.residual = half.max_dev + std::abs(half.L - quarter.L);
  est.converged = est.residual <= tolerance;
  for (int l = lo_half; l <= top; ++l)
    est.samples.push_back({static_cast<double>(l), cre[static_cast<std::size_t>(l)] / std::log(l + 1.0)});
  return est;
}

DixmierEstimate dixmier_graded(const fock::OperatorMatrix& m, double xi, double tolerance, GradedOptions opts) {
  return dixmier_graded(graded_diagonal(m, xi), tolerance, opts);
}

MeasurabilityReport measurability_diagnostic(const SingularSequence& seq) {
  MeasurabilityReport rep;
  // sample groups on a geometric grid
  std::vector<std::int64_t> gs;
  const std::int64_t gmax = seq.infinite() ? (std::int64_t{1} << 16) : seq.groups() - 1;
  for (std::int64_t g = 256; g <= gmax; g *= 2) gs.push_back(g);
  if (gs.size() < 4) {
    rep.trace_class = true;
    rep.conclusive = true;
    rep.note = "finite sequence: trace class, Dixmier value 0";
    return rep;
  }
  // cumulative multiplicities at the sample groups
  std::vector<double> cum(gs.size());
  {
    double c = 0.0;
    std::size_t k = 0;
    for (std::int64_t g = 0; g <= gs.back(); ++g) {
      c += static_cast<double>(seq.mult(g));
      if (g == gs[k]) cum[k++] = c;
    }
  }
  std::vector<double> x, y, n_mu;
  for (std::int64_t g : gs) {
    const double w = static_cast<double>(seq.mult(g)) * seq.value(g);
    if (!(w > 0.0)) {
      rep.trace_class = true;
      rep.conclusive = true;
      rep.note = "weights vanish in the tail: trace class, Dixmier value 0";
      return rep;
    }
    x.push_back(std::log(g + 1.0));
    y.push_back(std::log(w));
    n_mu.push_back((g + 1.0) * w);
  }
  const auto m = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd a(m, 2), ac(m, 2), aa(m, 2);
  Eigen::VectorXd b(m), bc(m), ba(m);
  for (Eigen::Index k = 0; k < m; ++k) {
    a(k, 0) = 1.0;
    a(k, 1) = x[k];
    b(k) = y[k];
    ac(k, 0) = 1.0;
    ac(k, 1) = 1.0 / (gs[k] + 1.0);
    bc(k) = n_mu[k];
    aa(k, 0) = 1.0;
    aa(k, 1) = std::log(cum[k]);
    ba(k) = x[k];
  }
  rep.slope = lsq(a, b)(1);
  rep.C = lsq(ac, bc)(0);
  rep.alpha = lsq(aa, ba)(1);
  if (rep.slope < -1.05) {
    rep.trace_class = true;
    rep.conclusive = true;
    rep.prediction = 0.0;
    rep.note = "weights decay faster than 1/n: trace class, Dixmier value 0";
  } else if (rep.slope > -0.95) {
    rep.conclusive = false;
    rep.prediction = std::numeric_limits<double>::quiet_NaN();
    rep.note = "weights decay slower than 1/n: outside the Dixmier ideal";
  } else {
    rep.conclusive = true;
    rep.prediction = rep.alpha * rep.C;
    rep.note = "mult * mu ~ C/n";
  }
  return rep;
}

}  // namespace landau::singtrace

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "landau/fock.hpp"

namespace landau::singtrace {

// Non-increasing nonnegative values grouped with multiplicities. A closed
// form may be infinite; a matrix-derived sequence is finite.
class SingularSequence {
 public:
  using ValueFn = std::function<double(std::int64_t)>;
  using MultFn = std::function<std::int64_t(std::int64_t)>;

  static SingularSequence closed_form(ValueFn value, MultFn mult, std::int64_t groups = -1);
  static SingularSequence from_values(std::vector<double> values);
  // Eigenvalues of a positive hermitian matrix (absolute values are taken).
  static SingularSequence from_matrix(const fock::OperatorMatrix& positive);

  static SingularSequence q_inverse_power(double s, double xi);    // Q_xi^{-s}, shells of size l+1
  static SingularSequence q_inverse_projection(double xi, int j);  // Q_xi^{-1} Pi_j, simple
  static SingularSequence finite_rank(std::int64_t rank);          // orthogonal projection

  bool infinite() const { return groups_ < 0; }
  std::int64_t groups() const { return groups_; }
  double value(std::int64_t g) const { return value_(g); }
  std::int64_t mult(std::int64_t g) const { return mult_(g); }
  // Number of unrolled singular values; -1 when infinite.
  std::int64_t length() const;
  bool matrix_derived() const { return matrix_derived_; }

  // sigma_N for each N of an increasing schedule, in one pass.
  std::vector<double> partial_sums(const std::vector<std::int64_t>& schedule) const;
  // mu_0 .. mu_{count-1}, zero padded past a finite end.
  std::vector<double> leading_values(std::int64_t count) const;

 private:
  ValueFn value_;
  MultFn mult_;
  std::int64_t groups_ = -1;
  bool matrix_derived_ = false;
};

double sigma_partial(const SingularSequence& seq, std::int64_t n);

std::vector<std::pair<std::int64_t, double>> gamma_sequence(const SingularSequence& seq,
                                                            const std::vector<std::int64_t>& schedule);

double cesaro_tau(const SingularSequence& seq, double lambda, double lambda0);

enum class Method { gamma_fit, zeta_residue, graded_diagonal };
const char* method_name(Method m);

struct Sample {
  double at;        // N, s, or shell index
  double estimate;  // gamma_N, (s-1) zeta(s), or cumulative gamma
};

struct DixmierEstimate {
  double value = 0.0;
  Method method = Method::gamma_fit;
  std::vector<Sample> samples;
  bool converged = false;
  double residual = 0.0;
  double imag = 0.0;  // graded estimator only: same fit applied to the imaginary part
};

DixmierEstimate dixmier_via_gamma_fit(const SingularSequence& seq, double tolerance);

double trace_Q_power(double s, double xi);
double trace_Q_power_proj(double s, double xi, int j);

DixmierEstimate dixmier_via_zeta_residue(const std::function<double(double)>& zeta_fn, double tolerance);

struct GradedDiagonal {
  std::vector<cplx> shell_sums;  // spin-traced diag of Q_xi^{-1} M summed per shell
};

GradedDiagonal graded_diagonal(const fock::OperatorMatrix& m, double xi);

struct GradedOptions {
  int margin = 2;       // shells dropped below the last trusted shell
  int last_shell = -1;  // last shell where M is exact; -1 means Nmax
};

// Cumulative shell sums C_l are fitted as L log(l+1) + c + d/(l+1) + e/(l+1)^2
// on the outer half of the usable shells. The count l+1 of shells stands in
// for N: for operators of bounded rank per shell it grows like the number of
// nonzero singular values of Q^{-1}M.
DixmierEstimate dixmier_graded(const GradedDiagonal& gd, double tolerance, GradedOptions opts = {});
DixmierEstimate dixmier_graded(const fock::OperatorMatrix& m, double xi, double tolerance, GradedOptions opts = {});

struct MeasurabilityReport {
  double slope = 0.0;       // log-log slope of mult * mu against group index
  double C = 0.0;           // limit of n * mult * mu
  double alpha = 0.0;       // limit of log n / log(sum of multiplicities)
  double prediction = 0.0;  // alpha * C
  bool trace_class = false;
  bool conclusive = false;
  std::string note;
};

MeasurabilityReport measurability_diagnostic(const SingularSequence& seq);

}  // namespace landau::singtrace

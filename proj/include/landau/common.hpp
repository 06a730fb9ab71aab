#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace landau {

using cplx = std::complex<double>;

enum class ErrorCode {
  invalid_argument = 1,
  domain = 2,
  non_convergence = 3,
  no_gap = 4,
  assertion = 5,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

// Physical parameters. hbar is 1 throughout.
struct ModelParams {
  double ell_B = 1.0;  // magnetic length
  double eps_B = 1.0;  // magnetic energy
  double xi = 0.0;     // resolvent shift of Q
  double c_b = 0.0;    // non-Abelian coupling b/(B ell_B)
  double r0 = 1.0, r1 = 0.0, r2 = 0.0;

  // Throws invalid_argument on the first violated constraint.
  void validate(bool check_r = true) const;
};

}  // namespace landau

#pragma once

namespace landau::specfun {

// Generalized Laguerre polynomial L_m^{(alpha)}(x) for any real alpha,
// negative integers included. Evaluated with the three-term recurrence,
// which generates exactly the falling-product polynomial.
double laguerre(int m, double alpha, double x);

// Hurwitz zeta sum_{j>=0} (j+q)^{-s}; requires s > 1, q > 0.
double hurwitz_zeta(double s, double q);

// sqrt(n1!/n2!) without forming the factorials.
double sqrt_factorial_ratio(int n1, int n2);

}  // namespace landau::specfun

#pragma once

// Scalar special functions shared by the radial, transform, basis and control
// modules. All functions are pure and re-entrant.

#include <complex>

namespace heatctl {

/// Laguerre polynomial L_n(x), evaluated by the forward three-term recurrence
///   (k+1) L_{k+1}(x) = (2k+1-x) L_k(x) - k L_{k-1}(x).
double laguerre(int n, double x);

/// Multiple-argument expansion
///   sum_{k=0}^n C(n,k) mu^k (1-mu)^{n-k} L_k(x),
/// which equals L_n(mu x).
double laguerre_multiple_argument(int n, double mu, double x);

/// Bessel function of the first kind of order zero. Power series (in long
/// double) for |x| <= 17, Hankel asymptotic expansion above.
double bessel_j0(double x);

/// Exponential integral E_1(x) = int_x^inf e^{-t}/t dt for x > 0.
/// Series below x = 1, Lentz continued fraction at and above.
/// Throws DomainError for x <= 0.
double exp_integral_e1(double x);

/// E_1(lo) - E_1(hi) = int_lo^hi e^{-t}/t dt without cancellation when the
/// two arguments are close. hi may be +infinity.
double exp_integral_e1_difference(double lo, double hi);

/// (e^x - 1)/x with the removable singularity at 0 filled in by 1.
double expm1_ratio(double x);

/// Complex e^w - 1, accurate for small |w|.
std::complex<double> expm1(std::complex<double> w);

/// n! as a double. Exact table for n <= 20, log-gamma above.
double factorial(int n);
/// log(n!) for n >= 0.
double log_factorial(int n);
/// n!! with the conventions 0!! = (-1)!! = 1.
double double_factorial(int n);
/// Binomial coefficient C(n,k); zero outside 0 <= k <= n.
double binomial(int n, int k);

}  // namespace heatctl

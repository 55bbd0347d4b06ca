#include "heatctl/special_functions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "heatctl/errors.hpp"
#include "heatctl/quadrature.hpp"

namespace heatctl {

double laguerre(int n, double x) {
  if (n < 0) throw PreconditionError("laguerre: negative degree " + std::to_string(n));
  if (n == 0) return 1.0;
  double previous = 1.0;
  double current = 1.0 - x;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 - x) * current - k * previous) / (k + 1.0);
    previous = current;
    current = next;
  }
  return current;
}

double laguerre_multiple_argument(int n, double mu, double x) {
  if (n < 0) throw PreconditionError("laguerre_multiple_argument: negative degree");
  // Accumulate L_k(x) alongside the binomial weights.
  double sum = 0.0;
  double lk_prev = 0.0;
  double lk = 1.0;
  for (int k = 0; k <= n; ++k) {
    if (k == 1) {
      lk_prev = 1.0;
      lk = 1.0 - x;
    } else if (k > 1) {
      const double next = ((2.0 * (k - 1) + 1.0 - x) * lk - (k - 1) * lk_prev) / k;
      lk_prev = lk;
      lk = next;
    }
    sum += binomial(n, k) * std::pow(mu, k) * std::pow(1.0 - mu, n - k) * lk;
  }
  return sum;
}

namespace {

double bessel_j0_series(double x) {
  const long double q = -0.25L * static_cast<long double>(x) * x;
  long double term = 1.0L;
  long double sum = 1.0L;
  for (int m = 1; m < 200; ++m) {
    term *= q / (static_cast<long double>(m) * m);
    sum += term;
    if (std::fabs(term) < 1e-22L) break;
  }
  return static_cast<double>(sum);
}

double bessel_j0_asymptotic(double x) {
  // P ~ t0 - t2 + t4 ..., Q ~ t1 - t3 + ..., t_k = prod_{j<=k} -(2j-1)^2/(8 j x).
  long double p = 0.0L;
  long double q = 0.0L;
  long double term = 1.0L;
  long double last = std::numeric_limits<long double>::infinity();
  const long double lx = x;
  for (int k = 0; k < 200; ++k) {
    if (k > 0) {
      const long double odd = 2.0L * k - 1.0L;
      term *= -(odd * odd) / (8.0L * k * lx);
    }
    if (std::fabs(term) > last) break;
    last = std::fabs(term);
    switch (k % 4) {
      case 0: p += term; break;
      case 1: q += term; break;
      case 2: p -= term; break;
      case 3: q -= term; break;
    }
    if (last < 1e-21L) break;
  }
  // cos(x - pi/4) and sin(x - pi/4) without subtracting a rounded pi/4.
  const long double c = std::cos(lx);
  const long double s = std::sin(lx);
  const long double cos_chi = (c + s) / std::sqrt(2.0L);
  const long double sin_chi = (s - c) / std::sqrt(2.0L);
  const long double amp = std::sqrt(2.0L / (std::numbers::pi_v<long double> * lx));
  return static_cast<double>(amp * (p * cos_chi - q * sin_chi));
}

}  // namespace

double bessel_j0(double x) {
  const double ax = std::fabs(x);
  if (ax <= 17.0) return bessel_j0_series(ax);
  return bessel_j0_asymptotic(ax);
}

double exp_integral_e1(double x) {
  if (!(x > 0.0)) throw DomainError("exp_integral_e1: argument must be positive");
  if (x < 1.0) {
    long double sum = 0.0L;
    long double term = 1.0L;
    for (int k = 1; k < 100; ++k) {
      term *= -static_cast<long double>(x) / k;
      const long double add = term / k;
      sum -= add;
      if (std::fabs(add) < 1e-21L) break;
    }
    const long double euler_gamma = 0.5772156649015328606065120900824024L;
    return static_cast<double>(-euler_gamma - std::log(static_cast<long double>(x)) + sum);
  }
  // Modified Lentz evaluation of the continued fraction for e^x E_1(x).
  constexpr long double tiny = 1e-300L;
  long double b = static_cast<long double>(x) + 1.0L;
  long double c = 1.0L / tiny;
  long double d = 1.0L / b;
  long double h = d;
  for (int i = 1; i < 1000; ++i) {
    const long double a = -static_cast<long double>(i) * i;
    b += 2.0L;
    d = 1.0L / (a * d + b);
    c = b + a / c;
    const long double delta = c * d;
    h *= delta;
    if (std::fabs(delta - 1.0L) < 1e-19L) break;
  }
  return static_cast<double>(h * std::exp(-static_cast<long double>(x)));
}

double exp_integral_e1_difference(double lo, double hi) {
  if (std::isinf(hi)) return exp_integral_e1(lo);
  if (lo == hi) return 0.0;
  if (lo > hi) return -exp_integral_e1_difference(hi, lo);
  const double width = hi - lo;
  if (width <= 0.5 * lo && width <= 2.0) {
    const auto& rule = gauss_legendre_rule(20);
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * width;
    long double sum = 0.0L;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double y = mid + half * rule.nodes[i];
      sum += rule.weights[i] * std::exp(-y) / y;
    }
    return static_cast<double>(sum * half);
  }
  return exp_integral_e1(lo) - exp_integral_e1(hi);
}

double expm1_ratio(double x) {
  if (x == 0.0) return 1.0;
  return std::expm1(x) / x;
}

std::complex<double> expm1(std::complex<double> w) {
  if (std::abs(w) < 0.5) {
    std::complex<double> term = w;
    std::complex<double> sum = w;
    for (int k = 2; k < 40; ++k) {
      term *= w / static_cast<double>(k);
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  return std::exp(w) - 1.0;
}

namespace {

constexpr std::array<double, 21> kFactorials = {
    1.0,
    1.0,
    2.0,
    6.0,
    24.0,
    120.0,
    720.0,
    5040.0,
    40320.0,
    362880.0,
    3628800.0,
    39916800.0,
    479001600.0,
    6227020800.0,
    87178291200.0,
    1307674368000.0,
    20922789888000.0,
    355687428096000.0,
    6402373705728000.0,
    121645100408832000.0,
    2432902008176640000.0,
};

}  // namespace

double factorial(int n) {
  if (n < 0) throw DomainError("factorial: negative argument");
  if (n < static_cast<int>(kFactorials.size())) return kFactorials[n];
  return std::exp(log_factorial(n));
}

double log_factorial(int n) {
  if (n < 0) throw DomainError("log_factorial: negative argument");
  if (n < static_cast<int>(kFactorials.size())) return std::log(kFactorials[n]);
  return std::lgamma(static_cast<double>(n) + 1.0);
}

double double_factorial(int n) {
  if (n <= 0) return 1.0;
  if (n <= 40) {
    double result = 1.0;
    for (int k = n; k > 1; k -= 2) result *= k;
    return result;
  }
  // n!! via gamma: odd n = 2m-1 -> 2^m Gamma(m+1/2)/sqrt(pi); even n = 2m -> 2^m m!.
  if (n % 2 == 0) {
    const int m = n / 2;
    return std::exp(m * std::log(2.0) + log_factorial(m));
  }
  const double m = (n + 1) / 2;
  return std::exp(m * std::log(2.0) + std::lgamma(m + 0.5) - 0.5 * std::log(std::numbers::pi));
}

double binomial(int n, int k) {
  if (k < 0 || k > n || n < 0) return 0.0;
  k = std::min(k, n - k);
  if (n > 60) {
    return std::round(std::exp(log_factorial(n) - log_factorial(k) - log_factorial(n - k)));
  }
  double result = 1.0;
  for (int i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
  }
  return std::round(result);
}

}  // namespace heatctl

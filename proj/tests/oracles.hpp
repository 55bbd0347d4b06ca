#pragma once

// Independent reference computations for the tests. Nothing here calls into
// the library's own quadrature or special functions.

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <functional>
#include <limits>

namespace oracle {

inline double laguerre_sum(int n, double x) {
  double sum = 0.0;
  double binom = 1.0;
  double power = 1.0;
  double fact = 1.0;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) {
      binom = binom * (n - k + 1) / k;
      power *= x;
      fact *= k;
    }
    sum += binom * ((k % 2) ? -1.0 : 1.0) * power / fact;
  }
  return sum;
}

inline double integrate(const std::function<double(double)>& f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-13);
}

inline double integrate_halfline(const std::function<double(double)>& f, double a) {
  boost::math::quadrature::exp_sinh<double> rule;
  return rule.integrate([&](double t) { return f(a + t); }, 0.0, std::numeric_limits<double>::infinity());
}

/// Gauss-Kronrod over [0, X]^2 on a uniform panel grid, for plane integrals of decaying radial fields.
inline double plane_quarter(const std::function<double(double, double)>& f, double X, int panels = 24) {
  const double h = X / panels;
  double total = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double a = i * h;
    total += integrate(
        [&](double x1) {
          double inner = 0.0;
          for (int j = 0; j < panels; ++j) {
            inner += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
                [&](double x2) { return f(x1, x2); }, j * h, (j + 1) * h, 0);
          }
          return inner;
        },
        a, a + h);
  }
  return total;
}

/// Planar heat flow of a radial profile g0 by the Poisson integral, evaluated at (x, 0):
/// (4 pi t)^{-1} int int e^{-|x - y|^2 / 4t} g0(|y|^2) dy, in polar coordinates around x.
inline double poisson_integral(const std::function<double(double)>& g0, double x, double t) {
  const double pi = std::acos(-1.0);
  const double reach = std::sqrt(4.0 * t) * 9.0;
  return integrate(
             [&](double s) {
               const double angular = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
                   [&](double theta) {
                     const double y1 = x + s * std::cos(theta);
                     const double y2 = s * std::sin(theta);
                     return g0(y1 * y1 + y2 * y2);
                   },
                   0.0, 2.0 * pi, 8, 1e-12);
               return s * std::exp(-s * s / (4.0 * t)) * angular;
             },
             0.0, reach) /
         (4.0 * pi * t);
}

}  // namespace oracle

#pragma once

#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace heatctl {

using RealFunction = std::function<double(double)>;

enum class QuadratureKind { gauss_laguerre, gauss_legendre_panel, adaptive };

/// Nodes and positive weights of a fixed rule. Gauss-Laguerre rules integrate
/// against e^{-x} on [0, inf); Gauss-Legendre rules live on [-1, 1].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  QuadratureKind kind = QuadratureKind::adaptive;

  double apply(const RealFunction& f) const;
};

/// n-point Gauss-Laguerre rule (weight e^{-x}). Nodes are polished by Newton
/// iteration in long double and the weights use x / ((n+1) L_{n+1}(x))^2, so
/// small weights keep full relative accuracy.
const QuadratureRule& gauss_laguerre_rule(int n);

/// n-point Gauss-Legendre rule on [-1, 1].
const QuadratureRule& gauss_legendre_rule(int n);

struct Interval {
  double lower = 0.0;
  double upper = 0.0;
};

/// [lower, inf) with an explicit exponential weight e^{-rate (r - lower)}.
/// rate == 0 means no weight is pulled out.
struct HalfLine {
  double lower = 0.0;
  double rate = 0.0;
};

/// Tolerances are mixed: the error target is tol * max(1, |result|).
inline constexpr int kDefaultRefinementBudget = 200000;

/// Adaptive Gauss-Legendre (12-point panels, bisection) on a finite interval.
double integrate(const RealFunction& f, const Interval& domain, double tol);

/// Half-line integral. With rate > 0 this returns
///   int_lower^inf h(r) e^{-rate (r-lower)} dr
/// by Gauss-Laguerre after s = rate (r - lower), doubling the order until two
/// successive estimates agree. With rate == 0 the map r = lower + s/(1-s) is
/// integrated adaptively.
double integrate(const RealFunction& h, const HalfLine& domain, double tol);

/// Generic entry point mirroring the rule kinds.
double integrate(const RealFunction& f, QuadratureKind kind, const Interval& domain, double tol);

/// Fixed-order Gauss-Legendre on consecutive panels [b_i, b_{i+1}].
double integrate_panels(const RealFunction& f, std::span<const double> breakpoints, int order = 12);

}  // namespace heatctl

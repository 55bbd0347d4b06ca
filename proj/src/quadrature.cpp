#include "heatctl/quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "heatctl/errors.hpp"

namespace heatctl {

double QuadratureRule::apply(const RealFunction& f) const {
  long double sum = 0.0L;
  for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(nodes[i]);
  return static_cast<double>(sum);
}

namespace {

QuadratureRule build_gauss_laguerre(int n) {
  std::vector<long double> x(n);
  std::vector<long double> w(n);
  long double z = 0.0L;
  for (int i = 0; i < n; ++i) {
    // Initial guesses follow the classical asymptotic spacing of the zeros.
    if (i == 0) {
      z = 3.0L / (1.0L + 2.4L * n);
    } else if (i == 1) {
      z += 15.0L / (1.0L + 2.5L * n);
    } else {
      const long double ai = i - 1;
      z += (1.0L + 2.55L * ai) / (1.9L * ai) * (z - x[i - 2]);
    }
    long double p1 = 0.0L;
    long double p2 = 0.0L;
    long double derivative = 0.0L;
    for (int iter = 0; iter < 100; ++iter) {
      p1 = 1.0L;
      p2 = 0.0L;
      for (int j = 1; j <= n; ++j) {
        const long double p3 = p2;
        p2 = p1;
        p1 = ((2.0L * j - 1.0L - z) * p2 - (j - 1.0L) * p3) / j;
      }
      derivative = n * (p1 - p2) / z;
      const long double step = p1 / derivative;
      z -= step;
      if (std::fabs(step) <= 1e-18L * std::fabs(z)) break;
    }
    x[i] = z;
    // L_{n+1}(z) from the converged recurrence: (n+1)L_{n+1} = (2n+1-z)L_n - n L_{n-1}.
    long double a = 1.0L;
    long double b = 0.0L;
    for (int j = 1; j <= n; ++j) {
      const long double c = b;
      b = a;
      a = ((2.0L * j - 1.0L - z) * b - (j - 1.0L) * c) / j;
    }
    const long double ln_plus = ((2.0L * n + 1.0L - z) * a - n * b) / (n + 1.0L);
    w[i] = z / ((n + 1.0L) * (n + 1.0L) * ln_plus * ln_plus);
  }
  QuadratureRule rule;
  rule.kind = QuadratureKind::gauss_laguerre;
  rule.nodes.assign(x.begin(), x.end());
  rule.weights.assign(w.begin(), w.end());
  return rule;
}

QuadratureRule build_gauss_legendre(int n) {
  std::vector<long double> x(n);
  std::vector<long double> w(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    long double z = std::cos(std::numbers::pi_v<long double> * (i + 0.75L) / (n + 0.5L));
    long double derivative = 0.0L;
    for (int iter = 0; iter < 100; ++iter) {
      long double p1 = 1.0L;
      long double p2 = 0.0L;
      for (int j = 1; j <= n; ++j) {
        const long double p3 = p2;
        p2 = p1;
        p1 = ((2.0L * j - 1.0L) * z * p2 - (j - 1.0L) * p3) / j;
      }
      derivative = n * (z * p1 - p2) / (z * z - 1.0L);
      const long double step = p1 / derivative;
      z -= step;
      if (std::fabs(step) < 1e-19L) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = 2.0L / ((1.0L - z * z) * derivative * derivative);
    w[n - 1 - i] = w[i];
  }
  QuadratureRule rule;
  rule.kind = QuadratureKind::gauss_legendre_panel;
  rule.nodes.assign(x.begin(), x.end());
  rule.weights.assign(w.begin(), w.end());
  return rule;
}

template <typename Builder>
const QuadratureRule& cached_rule(std::map<int, std::unique_ptr<QuadratureRule>>& cache, std::mutex& mutex,
                                  int n, Builder build) {
  if (n < 1) throw PreconditionError("quadrature rule order must be positive");
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<QuadratureRule>(build(n));
  return *slot;
}

double panel(const RealFunction& f, double a, double b, const QuadratureRule& rule) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  long double sum = 0.0L;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return static_cast<double>(sum * half);
}

struct AdaptiveState {
  const RealFunction& f;
  const QuadratureRule& rule;
  double tol;
  int budget;
};

double adaptive_step(AdaptiveState& state, double a, double b, double whole, double local_tol, int depth) {
  const double mid = 0.5 * (a + b);
  const double left = panel(state.f, a, mid, state.rule);
  const double right = panel(state.f, mid, b, state.rule);
  state.budget -= 2;
  const double refined = left + right;
  const double error = std::fabs(refined - whole);
  if (error <= local_tol || depth >= 60 || mid == a || mid == b) {
    if (error > local_tol && depth >= 60) state.budget = -1;
    return refined;
  }
  if (state.budget <= 0) return refined;
  // sqrt(2) rather than 2 per level, so endpoint log singularities still terminate.
  const double child_tol = local_tol / std::numbers::sqrt2;
  return adaptive_step(state, a, mid, left, child_tol, depth + 1) +
         adaptive_step(state, mid, b, right, child_tol, depth + 1);
}

double adaptive_interval(const RealFunction& f, double a, double b, double tol) {
  if (a == b) return 0.0;
  const auto& rule = gauss_legendre_rule(12);
  const double first = panel(f, a, b, rule);
  AdaptiveState state{f, rule, tol, kDefaultRefinementBudget};
  const double target = tol * std::max(1.0, std::fabs(first));
  const double result = adaptive_step(state, a, b, first, target, 0);
  if (state.budget < 0) {
    throw ConvergenceError("adaptive quadrature exhausted its refinement budget on [" + std::to_string(a) + ", " +
                           std::to_string(b) + "]");
  }
  return result;
}

}  // namespace

const QuadratureRule& gauss_laguerre_rule(int n) {
  static std::map<int, std::unique_ptr<QuadratureRule>> cache;
  static std::mutex mutex;
  return cached_rule(cache, mutex, n, build_gauss_laguerre);
}

const QuadratureRule& gauss_legendre_rule(int n) {
  static std::map<int, std::unique_ptr<QuadratureRule>> cache;
  static std::mutex mutex;
  return cached_rule(cache, mutex, n, build_gauss_legendre);
}

double integrate(const RealFunction& f, const Interval& domain, double tol) {
  if (!std::isfinite(domain.lower) || !std::isfinite(domain.upper)) {
    if (std::isfinite(domain.lower) && domain.upper == std::numeric_limits<double>::infinity()) {
      return integrate(f, HalfLine{domain.lower, 0.0}, tol);
    }
    throw PreconditionError("integrate: unsupported infinite interval");
  }
  if (domain.upper < domain.lower) return -adaptive_interval(f, domain.upper, domain.lower, tol);
  return adaptive_interval(f, domain.lower, domain.upper, tol);
}

double integrate(const RealFunction& h, const HalfLine& domain, double tol) {
  if (domain.rate > 0.0) {
    const double lower = domain.lower;
    const double rate = domain.rate;
    const auto scaled = [&](double s) { return h(lower + s / rate); };
    double previous = gauss_laguerre_rule(16).apply(scaled) / rate;
    for (int n = 32; n <= 256; n *= 2) {
      const double current = gauss_laguerre_rule(n).apply(scaled) / rate;
      if (std::fabs(current - previous) <= tol * std::max(1.0, std::fabs(current))) return current;
      previous = current;
    }
    throw ConvergenceError("Gauss-Laguerre quadrature did not converge up to order 256");
  }
  const double lower = domain.lower;
  const auto mapped = [&](double s) {
    if (s >= 1.0) return 0.0;
    const double one_minus = 1.0 - s;
    return h(lower + s / one_minus) / (one_minus * one_minus);
  };
  return adaptive_interval(mapped, 0.0, 1.0, tol);
}

double integrate(const RealFunction& f, QuadratureKind kind, const Interval& domain, double tol) {
  switch (kind) {
    case QuadratureKind::gauss_laguerre:
      if (domain.upper != std::numeric_limits<double>::infinity()) {
        throw PreconditionError("Gauss-Laguerre integration needs a half-line domain");
      }
      return integrate([&](double r) { return f(r) * std::exp(r - domain.lower); }, HalfLine{domain.lower, 1.0},
                       tol);
    case QuadratureKind::gauss_legendre_panel: {
      const double breaks[] = {domain.lower, domain.upper};
      return integrate_panels(f, breaks, 12);
    }
    case QuadratureKind::adaptive:
      return integrate(f, domain, tol);
  }
  return 0.0;
}

double integrate_panels(const RealFunction& f, std::span<const double> breakpoints, int order) {
  const auto& rule = gauss_legendre_rule(order);
  long double sum = 0.0L;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    sum += panel(f, breakpoints[i], breakpoints[i + 1], rule);
  }
  return static_cast<double>(sum);
}

}  // namespace heatctl

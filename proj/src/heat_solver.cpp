#include "heatctl/heat_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "heatctl/basis.hpp"
#include "heatctl/errors.hpp"
#include "heatctl/quadrature.hpp"
#include "heatctl/special_functions.hpp"
#include "heatctl/transform.hpp"

namespace heatctl {

namespace {

constexpr double kPi = std::numbers::pi;

RadialProfile damp(const RadialProfile& spectrum, double t) {
  if (spectrum.is_closed_form()) {
    PolyExpMixture out = spectrum.as_polyexp();
    for (auto& term : out.terms) term.rate += t;
    return out;
  }
  const auto& s = spectrum.as_sampled();
  std::vector<double> values = s.values();
  for (std::size_t i = 0; i < values.size(); ++i) values[i] *= std::exp(-t * s.grid()[i]);
  return SampledProfile(s.grid(), std::move(values), s.tail_rate() + t);
}

}  // namespace

RadialProfile free_evolution(const RadialProfile& g0, double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw PreconditionError("free_evolution: t must be non-negative");
  if (t == 0.0) return g0;
  if (g0.kind() == ProfileKind::exp_mixture) {
    ExpMixture out;
    for (const auto& term : std::get<ExpMixture>(g0.representation()).terms) {
      const double spread = 1.0 + 4.0 * term.rate * t;
      out.terms.push_back({term.coefficient / spread, term.rate / spread});
    }
    return out;
  }
  return phi(damp(phi(g0), t));
}

double controlled_term(const Control& u, double t, double r) {
  if (!(t > 0.0) || t > u.horizon() * (1.0 + 1e-14)) {
    throw PreconditionError("controlled_term: need 0 < t <= T, got t = " + std::to_string(t));
  }
  if (!(r > 0.0)) throw PreconditionError("controlled_term: r must be positive");
  const auto& b = u.breakpoints();
  long double sum = 0.0L;
  for (std::size_t i = 0; i < u.segments(); ++i) {
    const double level = u.levels()[i];
    if (level == 0.0 || b[i] >= t) continue;
    const double xi_far = t - b[i];
    const double xi_near = t - std::min(b[i + 1], t);
    const double lo = r / (4.0 * xi_far);
    const double hi = xi_near > 0.0 ? r / (4.0 * xi_near) : std::numeric_limits<double>::infinity();
    sum += level * exp_integral_e1_difference(lo, hi);
  }
  return static_cast<double>(-sum / (2.0 * kPi));
}

RadialProfile end_state(const Control& u, const RadialProfile& g0, double T, const std::vector<double>& grid) {
  const RadialProfile free = free_evolution(g0, T);
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) values[i] = free.eval(grid[i]) + controlled_term(u, T, grid[i]);
  return SampledProfile(grid, std::move(values));
}

std::vector<double> residual_grid(double T, int points) {
  if (!(T > 0.0)) throw PreconditionError("residual_grid: T must be positive");
  return log_spaced_grid(1e-4 * T, 60.0 * T, points);
}

double residual_norm(const std::function<double(double)>& h, const std::vector<double>& grid) {
  if (grid.size() < 2) throw PreconditionError("residual_norm: grid needs at least two points");
  const auto square = [&](double r) {
    const double v = h(r);
    return v * v;
  };
  long double total = integrate(square, Interval{0.0, grid.front()}, 1e-10);
  total += integrate_panels(square, grid, 4);

  std::vector<double> tail_values;
  std::vector<double> tail_grid;
  for (double r : grid) {
    if (r >= grid.back() / 10.0) {
      tail_grid.push_back(r);
      tail_values.push_back(std::fabs(h(r)));
    }
  }
  if (tail_grid.size() >= 2) {
    const double rate = estimate_tail_rate(tail_grid, tail_values);
    total += static_cast<long double>(tail_values.back()) * tail_values.back() / (2.0 * rate);
  }
  return std::sqrt(static_cast<double>(total));
}

ErrorBudget error_budget(const RadialProfile& g, double T, int N, int l) {
  if (!(l > (N + 1) / T)) throw PreconditionError("error budget needs l > (N+1)/T");
  const BasisContext ctx(T);
  const auto coeffs = expand(g, ctx, N);
  ErrorBudget budget;
  budget.tail_term = expansion_tail(g, ctx, N);
  long double sum = 0.0L;
  for (int k = 0; k <= N; ++k) {
    const double gap = T - (k + 1.0) / l;
    const double log_factor = k * std::log(T) + 0.5 * log_factorial(2 * k + 2) - (k + 1.5) * std::log(gap) +
                              std::log(k + 1.0) - log_factorial(k);
    sum += std::exp(static_cast<long double>(log_factor)) * std::fabs(coeffs.d[static_cast<std::size_t>(k)]);
  }
  budget.mollification_term = static_cast<double>(std::sqrt(T) / (4.0 * l) * sum);
  budget.total = budget.tail_term + budget.mollification_term;
  return budget;
}

EndStateReport measure(const RadialProfile& g_target, const Control& u, double T, const std::vector<double>& grid) {
  EndStateReport out;
  out.target_norm = l2_norm_halfline(g_target);
  out.residual_norm = residual_norm([&](double r) { return g_target.eval(r) - controlled_term(u, T, r); }, grid);
  out.plane_residual = std::sqrt(kPi) * out.residual_norm;
  return out;
}

EndStateReport report(const RadialProfile& g_target, const Control& u, double T, int N, int l,
                      const std::vector<double>& grid) {
  EndStateReport out = measure(g_target, u, T, grid);
  out.budget = error_budget(g_target, T, N, l);
  return out;
}

EndStateReport report(const RadialProfile& g_target, const Control& u, double T, int N, int l) {
  return report(g_target, u, T, N, l, residual_grid(T));
}

double bounded_growth_check(const Control& u, const std::vector<double>& t_grid, int points) {
  const double L = u.sup_norm();
  if (L == 0.0) return 0.0;
  double worst = 0.0;
  for (double t : t_grid) {
    if (t <= 0.0) continue;
    const double norm = residual_norm([&](double r) { return controlled_term(u, t, r); }, residual_grid(t, points));
    const double ratio = std::sqrt(kPi) * norm / ((2.0 / std::sqrt(kPi)) * (t + 1.0) * L);
    worst = std::max(worst, ratio);
  }
  return worst;
}

}  // namespace heatctl

#include "heatctl/transform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "heatctl/errors.hpp"
#include "heatctl/quadrature.hpp"
#include "heatctl/special_functions.hpp"

namespace heatctl {

namespace {

// Coefficients a_k with Phi[r^p e^{-a r}](rho) = sum_k a_k a^{-(1+p+k)} rho^k e^{-rho/4a}.
// They come from differentiating the p = 0 transform p times in a.
std::vector<long double> polyexp_transform_coefficients(int p) {
  std::vector<long double> a{0.5L};
  for (int q = 0; q < p; ++q) {
    std::vector<long double> next(a.size() + 1, 0.0L);
    for (std::size_t k = 0; k < a.size(); ++k) {
      next[k] += (1.0L + q + static_cast<long double>(k)) * a[k];
      next[k + 1] -= 0.25L * a[k];
    }
    a = std::move(next);
  }
  return a;
}

RadialProfile phi_closed(const RadialProfile& g) {
  if (g.kind() == ProfileKind::exp_mixture) {
    ExpMixture out;
    for (const auto& t : std::get<ExpMixture>(g.representation()).terms) {
      out.terms.push_back({t.coefficient / (2.0 * t.rate), 1.0 / (4.0 * t.rate)});
    }
    return out;
  }
  PolyExpMixture out;
  for (const auto& t : merge_like_terms(g.as_polyexp()).terms) {
    const auto a = polyexp_transform_coefficients(t.power);
    const long double alpha = t.rate;
    for (std::size_t k = 0; k < a.size(); ++k) {
      const long double scale = std::pow(alpha, -(1.0L + t.power + static_cast<long double>(k)));
      out.terms.push_back({static_cast<double>(t.coefficient * a[k] * scale), static_cast<int>(k),
                           static_cast<double>(1.0L / (4.0L * alpha))});
    }
  }
  return merge_like_terms(out);
}

// int_lower^inf |g| dr, bounded from above.
double abs_tail(const RadialProfile& g, double lower) {
  if (g.kind() == ProfileKind::sampled) {
    const auto& s = g.as_sampled();
    const double r_last = s.grid().back();
    const double start = std::max(lower, r_last);
    return std::fabs(s.values().back()) / s.tail_rate() * std::exp(-s.tail_rate() * (start - r_last));
  }
  long double sum = 0.0L;
  for (const auto& t : g.as_polyexp().terms) {
    // int_N^inf r^p e^{-b r} dr = e^{-bN} sum_{k<=p} p!/k! N^k / b^{p-k+1}
    long double term = std::pow(static_cast<long double>(lower), t.power) / t.rate;
    long double inner = term;
    for (int k = t.power - 1; k >= 0; --k) {
      term *= (k + 1.0L) / (t.rate * static_cast<long double>(lower));
      inner += term;
    }
    sum += std::fabs(t.coefficient) * inner * std::exp(-static_cast<long double>(t.rate) * lower);
  }
  return static_cast<double>(sum);
}

double truncation_point(const RadialProfile& g, double tol) {
  double upper = g.kind() == ProfileKind::sampled ? g.as_sampled().grid().back() : 1.0 / g.slowest_rate();
  for (int iter = 0; iter < 2000 && abs_tail(g, upper) > tol; ++iter) upper *= 1.2;
  if (abs_tail(g, upper) > tol) throw ConvergenceError("transform: could not bound the profile tail");
  return upper;
}

// Panel breakpoints in y = sqrt(r) on [0, y_max].
std::vector<double> panel_breakpoints(const RadialProfile& g, double rho, double y_max) {
  double width = y_max / 64.0;
  if (rho > 0.0) width = std::min(width, std::numbers::pi / std::sqrt(rho));
  std::vector<double> anchors{0.0};
  if (g.kind() == ProfileKind::sampled) {
    for (double r : g.as_sampled().grid()) {
      const double y = std::sqrt(r);
      if (y < y_max) anchors.push_back(y);
    }
  } else {
    double fastest = 0.0;
    for (const auto& t : g.as_polyexp().terms) fastest = std::max(fastest, t.rate);
    width = std::min(width, 0.5 / std::sqrt(fastest));
  }
  anchors.push_back(y_max);
  std::vector<double> breaks{0.0};
  long count = 0;
  for (std::size_t i = 0; i + 1 < anchors.size(); ++i) {
    const double span = anchors[i + 1] - anchors[i];
    if (span <= 0.0) continue;
    const long pieces = std::max(1L, static_cast<long>(std::ceil(span / width)));
    count += pieces;
    if (count > kMaxTransformPanels) {
      throw ConvergenceError("transform: panel budget exceeded at rho = " + std::to_string(rho));
    }
    for (long j = 1; j <= pieces; ++j) breaks.push_back(anchors[i] + span * static_cast<double>(j) / pieces);
  }
  return breaks;
}

double phi_at(const RadialProfile& g, double rho, double upper) {
  const double y_max = std::sqrt(upper);
  const auto breaks = panel_breakpoints(g, rho, y_max);
  const double k = std::sqrt(std::max(rho, 0.0));
  // 1/2 int g(r) J0(sqrt(r rho)) dr with r = y^2
  return integrate_panels([&](double y) { return g.eval(y * y) * bessel_j0(k * y) * y; }, breaks, 12);
}

}  // namespace

double phi_quadrature_reference(const RadialProfile& g, double rho, double tol) {
  if (rho < 0.0) throw PreconditionError("phi_quadrature_reference: rho must be non-negative");
  if (!(tol > 0.0)) throw PreconditionError("phi_quadrature_reference: tol must be positive");
  const double upper = truncation_point(g, 0.5 * tol);
  return phi_at(g, rho, upper);
}

RadialProfile phi(const RadialProfile& g, double tol) {
  if (g.is_closed_form()) return phi_closed(g);
  const auto& s = g.as_sampled();
  const double upper = truncation_point(g, 0.5 * tol);
  std::vector<double> values(s.grid().size());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = phi_at(g, s.grid()[i], upper);
  return SampledProfile(s.grid(), std::move(values));
}

}  // namespace heatctl

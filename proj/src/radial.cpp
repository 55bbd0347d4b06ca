#include "heatctl/radial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <string>

#include "heatctl/errors.hpp"
#include "heatctl/quadrature.hpp"
#include "heatctl/special_functions.hpp"
#include "heatctl/wide.hpp"

namespace heatctl {

namespace {

// Derivative of the Lagrange interpolant through grid[lo..hi] at grid[k].
double stencil_derivative(std::span<const double> x, std::span<const double> v, std::size_t k, std::size_t lo,
                          std::size_t hi) {
  double result = 0.0;
  for (std::size_t j = lo; j <= hi; ++j) {
    double weight;
    if (j == k) {
      weight = 0.0;
      for (std::size_t m = lo; m <= hi; ++m) {
        if (m != k) weight += 1.0 / (x[k] - x[m]);
      }
    } else {
      double numerator = 1.0;
      double denominator = 1.0;
      for (std::size_t m = lo; m <= hi; ++m) {
        if (m != j) denominator *= x[j] - x[m];
        if (m != j && m != k) numerator *= x[k] - x[m];
      }
      weight = numerator / denominator;
    }
    result += weight * v[j];
  }
  return result;
}

std::vector<double> monotone_slopes(std::span<const double> x, std::span<const double> v) {
  const std::size_t n = x.size();
  std::vector<double> d(n, 0.0);
  // Fourth-order slope estimates from a five-point stencil (clipped at the ends).
  const std::size_t width = std::min<std::size_t>(5, n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t lo = k >= width / 2 ? k - width / 2 : 0;
    if (lo + width > n) lo = n - width;
    d[k] = stencil_derivative(x, v, k, lo, lo + width - 1);
  }
  // Fritsch-Carlson limiter keeps every monotone data interval monotone.
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double delta = (v[k + 1] - v[k]) / (x[k + 1] - x[k]);
    if (delta == 0.0) {
      d[k] = 0.0;
      d[k + 1] = 0.0;
      continue;
    }
    if (d[k] * delta < 0.0) d[k] = 0.0;
    if (d[k + 1] * delta < 0.0) d[k + 1] = 0.0;
    const double alpha = d[k] / delta;
    const double beta = d[k + 1] / delta;
    const double radius = alpha * alpha + beta * beta;
    if (radius > 9.0) {
      const double tau = 3.0 / std::sqrt(radius);
      d[k] = tau * alpha * delta;
      d[k + 1] = tau * beta * delta;
    }
  }
  return d;
}

void validate_rate(double rate) {
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw PreconditionError("profile rates must be positive and finite, got " + std::to_string(rate));
  }
}

// int_N^inf r^p e^{-beta r} dr
double upper_gamma_integral(int p, double beta, double lower) {
  long double sum = 0.0L;
  long double term = 1.0L / beta;  // k = p term: p!/p! N^p / beta
  // sum_{k=0}^p p!/k! N^k / beta^{p-k+1}
  for (int k = p; k >= 0; --k) {
    if (k == p) {
      term = std::pow(static_cast<long double>(lower), p) / beta;
    } else {
      term *= static_cast<long double>(k + 1) / (static_cast<long double>(lower) * beta);
      if (lower == 0.0) term = (k == 0) ? std::exp(std::lgamma(p + 1.0L)) / std::pow(beta, p + 1.0L) : 0.0L;
    }
    sum += term;
  }
  return static_cast<double>(sum * std::exp(-static_cast<long double>(beta) * lower));
}

}  // namespace

double estimate_tail_rate(std::span<const double> grid, std::span<const double> values) {
  const double last = grid.back();
  double slowest = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
    if (grid[k] < last / 10.0) continue;
    const double a = values[k];
    const double b = values[k + 1];
    if (a == 0.0 || b == 0.0 || (a > 0.0) != (b > 0.0)) continue;
    const double rate = std::log(a / b) / (grid[k + 1] - grid[k]);
    if (rate > 0.0 && std::isfinite(rate)) slowest = std::min(slowest, rate);
  }
  if (!std::isfinite(slowest)) return 1.0 / last;
  return slowest;
}

SampledProfile::SampledProfile(std::vector<double> grid, std::vector<double> values,
                               std::optional<double> tail_rate)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (grid_.size() < 2) throw PreconditionError("sampled profile needs at least two grid points");
  if (grid_.size() != values_.size()) throw PreconditionError("sampled profile grid and values differ in length");
  if (!(grid_.front() > 0.0)) throw PreconditionError("sampled profile grid must start at r > 0");
  for (std::size_t k = 0; k + 1 < grid_.size(); ++k) {
    if (!(grid_[k + 1] > grid_[k])) throw PreconditionError("sampled profile grid must be strictly increasing");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw PreconditionError("sampled profile values must be finite");
  }
  tail_rate_ = tail_rate ? *tail_rate : estimate_tail_rate(grid_, values_);
  validate_rate(tail_rate_);
  slopes_ = monotone_slopes(grid_, values_);
}

double SampledProfile::eval(double r) const {
  if (r <= grid_.front()) return values_.front();
  if (r >= grid_.back()) return values_.back() * std::exp(-tail_rate_ * (r - grid_.back()));
  const auto it = std::upper_bound(grid_.begin(), grid_.end(), r);
  const std::size_t k = static_cast<std::size_t>(it - grid_.begin()) - 1;
  const double h = grid_[k + 1] - grid_[k];
  const double t = (r - grid_[k]) / h;
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
  const double h10 = t3 - 2.0 * t2 + t;
  const double h01 = -2.0 * t3 + 3.0 * t2;
  const double h11 = t3 - t2;
  return h00 * values_[k] + h10 * h * slopes_[k] + h01 * values_[k + 1] + h11 * h * slopes_[k + 1];
}

std::string_view to_string(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::exp_mixture: return "exp_mixture";
    case ProfileKind::polyexp_mixture: return "polyexp_mixture";
    case ProfileKind::sampled: return "sampled";
  }
  return "unknown";
}

RadialProfile::RadialProfile(ExpMixture mixture) : repr_(std::move(mixture)) {
  for (const auto& term : std::get<ExpMixture>(repr_).terms) validate_rate(term.rate);
}

RadialProfile::RadialProfile(PolyExpMixture mixture) : repr_(std::move(mixture)) {
  for (const auto& term : std::get<PolyExpMixture>(repr_).terms) {
    validate_rate(term.rate);
    if (term.power < 0) throw PreconditionError("profile powers must be non-negative");
  }
}

ProfileKind RadialProfile::kind() const {
  switch (repr_.index()) {
    case 0: return ProfileKind::exp_mixture;
    case 1: return ProfileKind::polyexp_mixture;
    default: return ProfileKind::sampled;
  }
}

PolyExpMixture RadialProfile::as_polyexp() const {
  if (const auto* exp = std::get_if<ExpMixture>(&repr_)) {
    PolyExpMixture out;
    out.terms.reserve(exp->terms.size());
    for (const auto& t : exp->terms) out.terms.push_back({t.coefficient, 0, t.rate});
    return out;
  }
  if (const auto* poly = std::get_if<PolyExpMixture>(&repr_)) return *poly;
  throw PreconditionError("sampled profile has no closed form");
}

const SampledProfile& RadialProfile::as_sampled() const {
  if (const auto* s = std::get_if<SampledProfile>(&repr_)) return *s;
  throw PreconditionError("profile is not sampled");
}

double RadialProfile::eval(double r) const {
  return std::visit(
      [r](const auto& repr) -> double {
        using T = std::decay_t<decltype(repr)>;
        if constexpr (std::is_same_v<T, ExpMixture>) {
          long double sum = 0.0L;
          for (const auto& t : repr.terms) sum += t.coefficient * std::exp(-static_cast<long double>(t.rate) * r);
          return static_cast<double>(sum);
        } else if constexpr (std::is_same_v<T, PolyExpMixture>) {
          long double sum = 0.0L;
          for (const auto& t : repr.terms) {
            sum += t.coefficient * std::pow(static_cast<long double>(r), t.power) *
                   std::exp(-static_cast<long double>(t.rate) * r);
          }
          return static_cast<double>(sum);
        } else {
          return repr.eval(r);
        }
      },
      repr_);
}

double RadialProfile::abs_envelope(double r) const {
  if (kind() == ProfileKind::sampled) return std::fabs(eval(r));
  double sum = 0.0;
  for (const auto& t : as_polyexp().terms) sum += std::fabs(t.coefficient) * std::pow(r, t.power) * std::exp(-t.rate * r);
  return sum;
}

double RadialProfile::slowest_rate() const {
  if (kind() == ProfileKind::sampled) return as_sampled().tail_rate();
  double slowest = std::numeric_limits<double>::infinity();
  for (const auto& t : as_polyexp().terms) slowest = std::min(slowest, t.rate);
  return slowest;
}

RadialProfile psi_forward(const PlaneFieldRadial& field) { return field.profile; }

PlaneFieldRadial psi_inverse(const RadialProfile& profile) { return PlaneFieldRadial{profile}; }

PolyExpMixture merge_like_terms(const PolyExpMixture& mixture, double rel_tol) {
  std::vector<PolyExpTerm> terms = mixture.terms;
  std::sort(terms.begin(), terms.end(), [](const PolyExpTerm& a, const PolyExpTerm& b) {
    return a.power != b.power ? a.power < b.power : a.rate < b.rate;
  });
  PolyExpMixture out;
  for (const auto& t : terms) {
    if (!out.terms.empty()) {
      auto& back = out.terms.back();
      if (back.power == t.power && std::fabs(back.rate - t.rate) <= rel_tol * back.rate) {
        back.coefficient += t.coefficient;
        continue;
      }
    }
    out.terms.push_back(t);
  }
  std::erase_if(out.terms, [](const PolyExpTerm& t) { return t.coefficient == 0.0; });
  return out;
}

namespace {

std::vector<double> sampled_union_grid(const RadialProfile& f, const RadialProfile& g) {
  std::set<double> points;
  for (const auto* p : {&f, &g}) {
    if (p->kind() == ProfileKind::sampled) {
      const auto& grid = p->as_sampled().grid();
      points.insert(grid.begin(), grid.end());
    }
  }
  return {points.begin(), points.end()};
}

}  // namespace

RadialProfile linear_combination(double a, const RadialProfile& f, double b, const RadialProfile& g) {
  if (f.kind() == ProfileKind::exp_mixture && g.kind() == ProfileKind::exp_mixture) {
    ExpMixture out;
    for (const auto& t : std::get<ExpMixture>(f.representation()).terms) out.terms.push_back({a * t.coefficient, t.rate});
    for (const auto& t : std::get<ExpMixture>(g.representation()).terms) out.terms.push_back({b * t.coefficient, t.rate});
    return out;
  }
  if (f.is_closed_form() && g.is_closed_form()) {
    PolyExpMixture out;
    for (const auto& t : f.as_polyexp().terms) out.terms.push_back({a * t.coefficient, t.power, t.rate});
    for (const auto& t : g.as_polyexp().terms) out.terms.push_back({b * t.coefficient, t.power, t.rate});
    return out;
  }
  auto grid = sampled_union_grid(f, g);
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) values[i] = a * f.eval(grid[i]) + b * g.eval(grid[i]);
  return SampledProfile(std::move(grid), std::move(values));
}

RadialProfile scale(const RadialProfile& f, double factor) {
  if (f.kind() == ProfileKind::sampled) {
    const auto& s = f.as_sampled();
    std::vector<double> values = s.values();
    for (double& v : values) v *= factor;
    return SampledProfile(s.grid(), std::move(values), s.tail_rate());
  }
  return linear_combination(factor, f, 0.0, RadialProfile{});
}

SampledProfile sample(const RadialProfile& profile, std::vector<double> grid, std::optional<double> tail_rate) {
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) values[i] = profile.eval(grid[i]);
  return SampledProfile(std::move(grid), std::move(values), tail_rate);
}

std::vector<double> log_spaced_grid(double lo, double hi, int n) {
  if (!(lo > 0.0) || !(hi > lo) || n < 2) throw PreconditionError("log_spaced_grid needs 0 < lo < hi and n >= 2");
  std::vector<double> grid(static_cast<std::size_t>(n));
  const double step = std::log(hi / lo) / (n - 1);
  for (int i = 0; i < n; ++i) grid[static_cast<std::size_t>(i)] = lo * std::exp(step * i);
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

namespace {

// <f, g> for closed forms: sum c_i d_j (p_i + p_j)! / (beta_i + beta_j)^{p_i + p_j + 1}.
// p! / rate^{p+1} in extended precision; Gram sums of Laguerre-type mixtures cancel by many digits.
wide_float exact_moment(int p, wide_float rate) {
  wide_float factorial = 1;
  for (int i = 2; i <= p; ++i) factorial *= i;
  return factorial / wide_pow(rate, p + 1);
}

double closed_inner_product(const PolyExpMixture& f, const PolyExpMixture& g) {
  CompensatedSum<wide_float> sum;
  for (const auto& a : f.terms) {
    for (const auto& b : g.terms) {
      const wide_float rate = static_cast<wide_float>(a.rate) + static_cast<wide_float>(b.rate);
      sum.add(static_cast<wide_float>(a.coefficient) * static_cast<wide_float>(b.coefficient) *
              exact_moment(a.power + b.power, rate));
    }
  }
  return static_cast<double>(sum.value());
}

double quadrature_inner_product(const RadialProfile& f, const RadialProfile& g, double tol) {
  const auto grid = sampled_union_grid(f, g);
  const auto product = [&](double r) { return f.eval(r) * g.eval(r); };
  long double sum = integrate(product, Interval{0.0, grid.front()}, tol);
  sum += integrate_panels(product, grid, 8);
  const double last = grid.back();
  double rate = 0.0;
  double scale_at_last = 1.0;
  const RadialProfile* closed = nullptr;
  for (const auto* p : {&f, &g}) {
    if (p->kind() == ProfileKind::sampled) {
      rate += p->as_sampled().tail_rate();
      scale_at_last *= p->eval(last);
    } else {
      closed = p;
    }
  }
  if (closed == nullptr) {
    sum += scale_at_last / rate;
  } else {
    sum += integrate([&](double r) { return scale_at_last * closed->eval(r); }, HalfLine{last, rate}, tol);
  }
  return static_cast<double>(sum);
}

}  // namespace

double inner_product(const RadialProfile& f, const RadialProfile& g, double tol) {
  if (f.is_closed_form() && g.is_closed_form()) return closed_inner_product(f.as_polyexp(), g.as_polyexp());
  return quadrature_inner_product(f, g, tol);
}

double l2_norm_halfline(const RadialProfile& g, double tol) {
  if (g.is_closed_form()) {
    const auto merged = merge_like_terms(g.as_polyexp());
    return std::sqrt(std::max(0.0, closed_inner_product(merged, merged)));
  }
  // The interpolant is cubic on each cell, so 4-point Gauss-Legendre is exact for its square.
  const auto& s = g.as_sampled();
  const auto& grid = s.grid();
  const double head = s.values().front() * s.values().front() * grid.front();
  const double cells = integrate_panels([&](double r) { const double v = s.eval(r); return v * v; }, grid, 4);
  const double tail = s.values().back() * s.values().back() / (2.0 * s.tail_rate());
  (void)tol;
  return std::sqrt(head + cells + tail);
}

double l2_norm_plane(const PlaneFieldRadial& field, double tol) {
  return std::sqrt(std::numbers::pi) * l2_norm_halfline(psi_forward(field), tol);
}

double radial_moment(const RadialProfile& g, int n, double tol) {
  if (n < 0) throw PreconditionError("radial_moment: negative order");
  if (g.is_closed_form()) {
    CompensatedSum<wide_float> sum;
    for (const auto& t : g.as_polyexp().terms) {
      sum.add(static_cast<wide_float>(t.coefficient) * exact_moment(n + t.power, static_cast<wide_float>(t.rate)));
    }
    return static_cast<double>(sum.value());
  }
  const auto& s = g.as_sampled();
  const auto& grid = s.grid();
  const double head = s.values().front() * std::pow(grid.front(), n + 1) / (n + 1);
  const double cells = integrate_panels([&](double r) { return std::pow(r, n) * s.eval(r); }, grid, 12);
  const double tail = s.values().back() * upper_gamma_integral(n, s.tail_rate(), grid.back()) *
                      std::exp(s.tail_rate() * grid.back());
  (void)tol;
  return head + cells + tail;
}

}  // namespace heatctl

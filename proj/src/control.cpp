#include "heatctl/control.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "expansion_wide.hpp"
#include "heatctl/errors.hpp"
#include "heatctl/quadrature.hpp"
#include "heatctl/special_functions.hpp"

namespace heatctl {

namespace {

constexpr double kPi = std::numbers::pi;

void check_horizon(double T) {
  if (!(T > 0.0) || !std::isfinite(T)) throw PreconditionError("horizon T must be positive");
}

void check_count(int N) {
  if (N < 0) throw PreconditionError("moment count must be non-negative");
  if (N > kMaxOrder) throw PreconditionError("moment count above " + std::to_string(kMaxOrder) + " is not supported");
}

// Breakpoints j/l for j <= last, then T when the lattice stops short of it.
std::vector<double> lattice_breakpoints(int last, int l, double T) {
  std::vector<double> points;
  for (int j = 0; j <= last; ++j) points.push_back(static_cast<double>(j) / l);
  const double end = points.back();
  if (std::fabs(end - T) <= 1e-14 * T) {
    points.back() = T;
  } else {
    points.push_back(T);
  }
  return points;
}

}  // namespace

Control::Control(double T, std::vector<double> breakpoints, std::vector<double> levels)
    : T_(T), breakpoints_(std::move(breakpoints)), levels_(std::move(levels)) {
  check_horizon(T_);
  if (breakpoints_.size() < 2) throw PreconditionError("control needs at least two breakpoints");
  if (levels_.size() + 1 != breakpoints_.size()) {
    throw PreconditionError("control needs exactly one level per interval");
  }
  if (breakpoints_.front() != 0.0) throw PreconditionError("control breakpoints must start at 0");
  if (std::fabs(breakpoints_.back() - T_) > 1e-12 * T_) throw PreconditionError("control breakpoints must end at T");
  breakpoints_.back() = T_;
  for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i) {
    if (!(breakpoints_[i + 1] > breakpoints_[i])) {
      throw PreconditionError("control breakpoints must be strictly increasing");
    }
  }
  for (double v : levels_) {
    if (!std::isfinite(v)) throw PreconditionError("control levels must be finite");
  }
}

Control Control::constant(double T, double level) { return Control(T, {0.0, T}, {level}); }

double Control::sup_norm() const {
  double sup = 0.0;
  for (double v : levels_) sup = std::max(sup, std::fabs(v));
  return sup;
}

double Control::value(double t) const {
  if (t < 0.0 || t > T_) return 0.0;
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
  const auto index = std::min<std::size_t>(static_cast<std::size_t>(it - breakpoints_.begin()) - 1, levels_.size() - 1);
  return levels_[index];
}

Control mollified_delta_derivative(int n, int l, double T) {
  check_horizon(T);
  if (n < 0) throw PreconditionError("mollifier order must be non-negative");
  if (l < 1) throw PreconditionError("mollifier scale l must be positive");
  if ((n + 1.0) / l > T * (1.0 + 1e-14)) {
    throw PreconditionError("mollifier support (n+1)/l exceeds the horizon T");
  }
  auto points = lattice_breakpoints(n + 1, l, T);
  std::vector<double> levels(points.size() - 1, 0.0);
  const double height = std::pow(static_cast<double>(l), n + 1);
  for (int j = 0; j <= n; ++j) levels[static_cast<std::size_t>(j)] = (((n - j) % 2) ? -1.0 : 1.0) * binomial(n, j) * height;
  return Control(T, std::move(points), std::move(levels));
}

SynthesisPlan plan_synthesis(const RadialProfile& g, double T, int N, int l) {
  check_horizon(T);
  check_count(N);
  if (!(l > (N + 1) / T)) {
    throw PreconditionError("synthesis needs l > (N+1)/T, got N = " + std::to_string(N) + ", l = " +
                            std::to_string(l) + ", T = " + std::to_string(T));
  }
  const auto gw = detail::expansion_coefficients_wide(g, T, N);
  const auto dw = detail::binomial_transform_wide(gw);

  // Level on (j/l, (j+1)/l) collects the j-th step of every u_l^k with k >= j.
  const wide_float two_t = 2 * static_cast<wide_float>(T);
  const wide_float wl = l;
  std::vector<double> levels;
  for (int j = 0; j <= N; ++j) {
    CompensatedSum<wide_float> sum;
    wide_float factorial_k = 1;
    for (int k = 2; k <= j; ++k) factorial_k *= k;
    for (int k = j; k <= N; ++k) {
      if (k > j) factorial_k *= k;
      const wide_float step = static_cast<wide_float>(binomial(k, j)) * wide_pow(wl, k + 1);
      const int sign = (k % 2 ? -1 : 1) * ((k - j) % 2 ? -1 : 1);
      sum.add(sign * wide_pow(two_t, k) / factorial_k * dw[static_cast<std::size_t>(k)] * step);
    }
    levels.push_back(static_cast<double>(sum.value() * static_cast<wide_float>(-std::sqrt(2.0 * T) * kPi)));
  }
  levels.push_back(0.0);

  SynthesisPlan plan;
  plan.T = T;
  plan.N = N;
  plan.l = l;
  plan.coefficients.T = T;
  for (const auto v : gw) plan.coefficients.g.push_back(static_cast<double>(v));
  for (const auto v : dw) plan.coefficients.d.push_back(static_cast<double>(v));
  plan.control = Control(T, lattice_breakpoints(N + 1, l, T), std::move(levels));
  return plan;
}

Control synthesize(const RadialProfile& g, double T, int N, int l) { return plan_synthesis(g, T, N, l).control; }

MomentSequence gamma_moments(const RadialProfile& g, double T, int N) {
  check_horizon(T);
  check_count(N);
  MomentSequence out{T, {}};
  for (int n = 0; n <= N; ++n) {
    const double scale = -kPi * std::exp(-(2.0 * n + 1.0) * std::log(2.0) - log_factorial(n));
    out.values.push_back(scale * radial_moment(g, n));
  }
  return out;
}

namespace {

// Radius (in r) beyond which r^N |g| is negligible against its peak.
double moment_cutoff(const RadialProfile& g, int N) {
  if (!(g.slowest_rate() > 0.0) || !std::isfinite(g.slowest_rate())) return 1.0;
  const double start = g.kind() == ProfileKind::sampled ? std::max(g.as_sampled().grid().back(), 1.0 / g.slowest_rate())
                                                        : 1.0 / g.slowest_rate();
  const auto weight = [&](double r) { return std::pow(r, N) * g.abs_envelope(r); };
  double peak = 0.0;
  for (double r : log_spaced_grid(1e-6 * start, 100.0 * start, 400)) peak = std::max(peak, weight(r));
  if (peak == 0.0) return start;
  double R = start;
  for (int iter = 0; iter < 1000 && weight(R) * std::max(R, 1.0) > 1e-17 * peak; ++iter) R *= 1.1;
  return R;
}

}  // namespace

MomentSequence omega_moments(const PlaneFieldRadial& f, double T, int N, int panels) {
  check_horizon(T);
  check_count(N);
  if (panels < 1) throw PreconditionError("omega_moments: panel count must be positive");
  MomentSequence out{T, std::vector<double>(static_cast<std::size_t>(N + 1), 0.0)};
  const auto& rule = gauss_legendre_rule(12);
  const double X = std::sqrt(moment_cutoff(f.profile, N));
  const double h = X / panels;
  std::vector<double> x;
  std::vector<double> w;
  for (int p = 0; p < panels; ++p) {
    const double mid = (p + 0.5) * h;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      x.push_back(mid + 0.5 * h * rule.nodes[i]);
      w.push_back(0.5 * h * rule.weights[i]);
    }
  }
  std::vector<long double> sums(static_cast<std::size_t>(N + 1), 0.0L);
  for (std::size_t i = 0; i < x.size(); ++i) {
    long double inner = 0.0L;
    for (std::size_t j = 0; j < x.size(); ++j) inner += w[j] * f.at(x[i], x[j]);
    long double power = 1.0L;
    const long double x2 = static_cast<long double>(x[i]) * x[i];
    for (int n = 0; n <= N; ++n) {
      sums[static_cast<std::size_t>(n)] += w[i] * power * inner;
      power *= x2;
    }
  }
  for (int n = 0; n <= N; ++n) {
    const double scale = -2.0 * std::exp(log_factorial(n) - log_factorial(2 * n));
    out.values[static_cast<std::size_t>(n)] = scale * static_cast<double>(sums[static_cast<std::size_t>(n)]);
  }
  return out;
}

MomentSequence control_moments(const Control& u, int N) {
  check_count(N);
  const double T = u.horizon();
  MomentSequence out{T, {}};
  const auto& b = u.breakpoints();
  for (int n = 0; n <= N; ++n) {
    // Synthesized levels cancel by many digits across segments.
    CompensatedSum<wide_float> sum;
    for (std::size_t i = 0; i < u.segments(); ++i) {
      // t in (b_i, b_{i+1}) is xi in (T - b_{i+1}, T - b_i)
      const wide_float hi = static_cast<wide_float>(T) - b[i];
      const wide_float lo = static_cast<wide_float>(T) - b[i + 1];
      sum.add(static_cast<wide_float>(u.levels()[i]) * (wide_pow(hi, n + 1) - wide_pow(lo, n + 1)) / (n + 1));
    }
    out.values.push_back(static_cast<double>(sum.value()));
  }
  return out;
}

std::vector<double> necessary_condition_grid(double T) {
  check_horizon(T);
  return log_spaced_grid(1e-4 * T, 40.0 * T, 400);
}

double necessary_condition(const RadialProfile& g, double T, const std::vector<double>& grid) {
  check_horizon(T);
  if (grid.empty()) throw PreconditionError("necessary_condition: empty grid");
  double sup = 0.0;
  for (double r : grid) {
    if (!(r > 0.0)) throw PreconditionError("necessary_condition: grid points must be positive");
    sup = std::max(sup, std::fabs(g.eval(r)) * std::exp(r / (4.0 * T)) / std::log1p(4.0 * T / r));
  }
  return sup;
}

double necessary_condition(const RadialProfile& g, double T) {
  return necessary_condition(g, T, necessary_condition_grid(T));
}

std::complex<double> entire_eval(const Control& u, std::complex<double> z) {
  const double T = u.horizon();
  const auto& b = u.breakpoints();
  std::complex<double> sum = 0.0;
  for (std::size_t i = 0; i < u.segments(); ++i) {
    const double level = u.levels()[i];
    if (level == 0.0) continue;
    const double lo = T - b[i + 1];
    const double width = b[i + 1] - b[i];
    // int_lo^{lo+width} e^{-xi z} d xi
    std::complex<double> piece;
    if (z == 0.0) {
      piece = width;
    } else {
      piece = -std::exp(-lo * z) * expm1(-width * z) / z;
    }
    sum += level * piece;
  }
  return -sum / kPi;
}

double entire_bound(double L, double T, std::complex<double> z) {
  const double a = std::abs(z);
  if (a == 0.0) return L * T / kPi;
  return L / kPi * std::expm1(T * a) / a;
}

double gamma_bound_sharp(double M, double T, int n) {
  // (2n-1)!!/(2n)!! = (2n)! / (4^n (n!)^2)
  const double log_ratio = log_factorial(2 * n) - 2.0 * n * std::log(2.0) - 2.0 * log_factorial(n);
  return M * std::pow(kPi, 1.5) * std::exp(-(2.0 * n + 0.5) * std::log(2.0) + log_ratio + (n + 1.0) * std::log(4.0 * T));
}

double gamma_bound(double M, double T, int n) { return M * std::pow(2.0 * kPi, 1.5) * std::pow(T, n + 1); }

double control_moment_bound(double L, double T, int n) { return L * std::pow(T, n + 1) / (n + 1); }

double matching_constant(double M, double L, double T, int n) {
  return T * (M * std::pow(2.0 * kPi, 1.5) + L / (n + 1));
}

}  // namespace heatctl

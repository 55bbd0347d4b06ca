#include "heatctl/basis.hpp"

#include <cmath>
#include <string>

#include "expansion_wide.hpp"
#include "heatctl/errors.hpp"
#include "heatctl/special_functions.hpp"

namespace heatctl {

namespace {

void check_order(int n) {
  if (n < 0) throw PreconditionError("basis index must be non-negative");
  if (n > kMaxOrder) throw PreconditionError("basis index above " + std::to_string(kMaxOrder) + " is not supported");
}

void check_mollifier(const BasisContext& ctx, int n, int l) {
  if (!(l > (n + 1) / ctx.T)) {
    throw PreconditionError("need l > (n+1)/T, got n = " + std::to_string(n) + ", l = " + std::to_string(l) +
                            ", T = " + std::to_string(ctx.T));
  }
}

long long exact_binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long result = 1;
  for (int i = 1; i <= k; ++i) result = result * (n - k + i) / i;
  return result;
}

wide_float wide_factorial(int n) {
  wide_float result = 1;
  for (int i = 2; i <= n; ++i) result *= i;
  return result;
}

// int_0^inf r^m e^{-b r} dr in extended precision.
wide_float wide_gamma_moment(int m, wide_float b) { return wide_factorial(m) / wide_pow(b, m + 1); }

}  // namespace

BasisContext::BasisContext(double horizon) : T(horizon) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw PreconditionError("horizon T must be positive");
}

RadialProfile psi_n(const BasisContext& ctx, int n) {
  check_order(n);
  const double norm = 1.0 / std::sqrt(2.0 * ctx.T);
  PolyExpMixture out;
  for (int k = 0; k <= n; ++k) {
    const double c = binomial(n, k) * ((k % 2) ? -1.0 : 1.0) / (factorial(k) * std::pow(2.0 * ctx.T, k));
    out.terms.push_back({norm * c, k, 1.0 / (4.0 * ctx.T)});
  }
  return out;
}

RadialProfile psi_hat_n(const BasisContext& ctx, int n) {
  check_order(n);
  const double norm = ((n % 2) ? -1.0 : 1.0) * std::sqrt(2.0 * ctx.T);
  PolyExpMixture out;
  for (int k = 0; k <= n; ++k) {
    const double c = binomial(n, k) * ((k % 2) ? -1.0 : 1.0) * std::pow(2.0 * ctx.T, k) / factorial(k);
    out.terms.push_back({norm * c, k, ctx.T});
  }
  return out;
}

RadialProfile phi_n(const BasisContext& ctx, int n) {
  if (n < 0) throw PreconditionError("basis index must be non-negative");
  return PolyExpMixture{{{1.0, n, ctx.T}}};
}

std::function<double(double)> phi_n_l(const BasisContext& ctx, int n, int l) {
  if (n < 0) throw PreconditionError("basis index must be non-negative");
  check_mollifier(ctx, n, l);
  const double T = ctx.T;
  const double inv_l = 1.0 / l;
  return [n, T, inv_l](double rho) {
    if (rho <= 0.0) return n == 0 ? 1.0 : 0.0;
    const double x = rho * inv_l;
    // log of (e^x - 1)/x without overflow
    const double log_ratio = x < 1.0 ? std::log(expm1_ratio(x)) : x + std::log1p(-std::exp(-x)) - std::log(x);
    return std::exp(n * std::log(rho) - T * rho + (n + 1) * log_ratio);
  };
}

double deviation_bound(const BasisContext& ctx, int n, int l) {
  if (n < 0) throw PreconditionError("basis index must be non-negative");
  check_mollifier(ctx, n, l);
  const double gap = ctx.T - (n + 1.0) / l;
  const double log_bound = std::log(n + 1.0) - (n + 2.5) * std::log(2.0) - std::log(static_cast<double>(l)) +
                           0.5 * log_factorial(2 * n + 2) - (n + 1.5) * std::log(gap);
  return std::exp(log_bound);
}

namespace detail {

std::vector<wide_float> expansion_coefficients_wide(const RadialProfile& g, double T, int N) {
  check_order(N);
  std::vector<wide_float> out(static_cast<std::size_t>(N + 1), 0);
  const double inv_sqrt = 1.0 / std::sqrt(2.0 * T);
  if (!g.is_closed_form()) {
    const BasisContext ctx(T);
    for (int n = 0; n <= N; ++n) out[static_cast<std::size_t>(n)] = inner_product(g, psi_n(ctx, n));
    return out;
  }
  const wide_float two_t = 2 * static_cast<wide_float>(T);
  const wide_float basis_rate = 1 / (2 * two_t);
  const auto terms = merge_like_terms(g.as_polyexp()).terms;
  for (int n = 0; n <= N; ++n) {
    CompensatedSum<wide_float> sum;
    for (int k = 0; k <= n; ++k) {
      const wide_float ck = static_cast<wide_float>(exact_binomial(n, k)) * ((k % 2) ? -1 : 1) /
                            (wide_factorial(k) * wide_pow(two_t, k));
      for (const auto& t : terms) {
        const wide_float b = static_cast<wide_float>(t.rate) + basis_rate;
        sum.add(static_cast<wide_float>(t.coefficient) * ck * wide_gamma_moment(t.power + k, b));
      }
    }
    out[static_cast<std::size_t>(n)] = sum.value() * static_cast<wide_float>(inv_sqrt);
  }
  return out;
}

std::vector<wide_float> binomial_transform_wide(const std::vector<wide_float>& g) {
  const int N = static_cast<int>(g.size()) - 1;
  std::vector<wide_float> d(g.size(), 0);
  for (int k = 0; k <= N; ++k) {
    CompensatedSum<wide_float> sum;
    for (int n = k; n <= N; ++n) {
      sum.add(static_cast<wide_float>(exact_binomial(n, k)) * ((n % 2) ? -1 : 1) * g[static_cast<std::size_t>(n)]);
    }
    d[static_cast<std::size_t>(k)] = sum.value();
  }
  return d;
}

wide_float squared_norm_wide(const RadialProfile& g) {
  if (!g.is_closed_form()) {
    const double norm = l2_norm_halfline(g);
    return static_cast<wide_float>(norm) * norm;
  }
  const auto terms = merge_like_terms(g.as_polyexp()).terms;
  CompensatedSum<wide_float> sum;
  for (const auto& a : terms) {
    for (const auto& b : terms) {
      const wide_float rate = static_cast<wide_float>(a.rate) + static_cast<wide_float>(b.rate);
      sum.add(static_cast<wide_float>(a.coefficient) * static_cast<wide_float>(b.coefficient) *
              wide_gamma_moment(a.power + b.power, rate));
    }
  }
  return sum.value();
}

}  // namespace detail

CoefficientVector expand(const RadialProfile& g, const BasisContext& ctx, int N) {
  const auto gw = detail::expansion_coefficients_wide(g, ctx.T, N);
  const auto dw = detail::binomial_transform_wide(gw);
  CoefficientVector out;
  out.T = ctx.T;
  for (const auto v : gw) out.g.push_back(static_cast<double>(v));
  for (const auto v : dw) out.d.push_back(static_cast<double>(v));
  return out;
}

double expansion_tail(const RadialProfile& g, const BasisContext& ctx, int N) {
  const auto gw = detail::expansion_coefficients_wide(g, ctx.T, N);
  wide_float rest = detail::squared_norm_wide(g);
  for (const auto v : gw) rest -= v * v;
  return rest > 0 ? std::sqrt(static_cast<double>(rest)) : 0.0;
}

std::vector<double> binomial_transform(const std::vector<double>& g) {
  std::vector<wide_float> gw(g.begin(), g.end());
  std::vector<double> out;
  for (const auto v : detail::binomial_transform_wide(gw)) out.push_back(static_cast<double>(v));
  return out;
}

RadialProfile reconstruct(const CoefficientVector& coeffs) {
  const BasisContext ctx(coeffs.T);
  PolyExpMixture out;
  for (std::size_t n = 0; n < coeffs.g.size(); ++n) {
    for (const auto& t : psi_n(ctx, static_cast<int>(n)).as_polyexp().terms) {
      out.terms.push_back({coeffs.g[n] * t.coefficient, t.power, t.rate});
    }
  }
  return merge_like_terms(out);
}

}  // namespace heatctl

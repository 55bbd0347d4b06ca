#pragma once

#include <functional>
#include <vector>

#include "heatctl/radial.hpp"

namespace heatctl {

struct BasisContext {
  double T = 1.0;

  explicit BasisContext(double horizon);
};

/// Expansion coefficients g_n = <g, psi_n> and the binomial transforms
/// d_k = sum_{n=k}^N C(n,k) (-1)^n g_n.
struct CoefficientVector {
  double T = 1.0;
  std::vector<double> g;
  std::vector<double> d;
};

/// Orthonormal Laguerre functions (2T)^{-1/2} L_n(r/2T) e^{-r/4T}.
RadialProfile psi_n(const BasisContext& ctx, int n);
/// (-1)^n (2T)^{1/2} L_n(2T rho) e^{-T rho}; equals phi(psi_n).
RadialProfile psi_hat_n(const BasisContext& ctx, int n);
/// rho^n e^{-T rho}
RadialProfile phi_n(const BasisContext& ctx, int n);

/// rho^n e^{-T rho} ((e^{rho/l} - 1)/(rho/l))^{n+1}.
/// Throws PreconditionError unless l > (n+1)/T.
std::function<double(double)> phi_n_l(const BasisContext& ctx, int n, int l);

/// Upper bound on ||phi_n - phi_n^l||. Throws PreconditionError unless l > (n+1)/T.
double deviation_bound(const BasisContext& ctx, int n, int l);

/// Coefficients up to N. Closed forms are summed in extended precision.
CoefficientVector expand(const RadialProfile& g, const BasisContext& ctx, int N);

/// (sum_{n>N} g_n^2)^{1/2}, obtained from ||g||^2 - sum_{n<=N} g_n^2.
double expansion_tail(const RadialProfile& g, const BasisContext& ctx, int N);

/// d_k = sum_{n=k}^N C(n,k) (-1)^n g_n, summed in extended precision.
std::vector<double> binomial_transform(const std::vector<double>& g);

/// sum_{n<=N} g_n psi_n as a closed form.
RadialProfile reconstruct(const CoefficientVector& coeffs);

/// Largest supported expansion order.
inline constexpr int kMaxOrder = 30;

}  // namespace heatctl

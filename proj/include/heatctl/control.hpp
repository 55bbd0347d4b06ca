#pragma once

#include <complex>
#include <vector>

#include "heatctl/basis.hpp"
#include "heatctl/radial.hpp"

namespace heatctl {

/// Piecewise-constant control on [0, T]. levels[i] holds on (breakpoints[i], breakpoints[i+1]).
class Control {
 public:
  /// Throws PreconditionError unless breakpoints run strictly upward from 0 to T
  /// and there is one finite level per interval.
  Control(double T, std::vector<double> breakpoints, std::vector<double> levels);

  static Control constant(double T, double level);
  static Control zero(double T) { return constant(T, 0.0); }

  double horizon() const { return T_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& levels() const { return levels_; }
  std::size_t segments() const { return levels_.size(); }

  double sup_norm() const;
  /// u(t); right-continuous at breakpoints, 0 outside [0, T].
  double value(double t) const;

 private:
  double T_;
  std::vector<double> breakpoints_;
  std::vector<double> levels_;
};

struct MomentSequence {
  double T = 1.0;
  std::vector<double> values;
};

struct SynthesisPlan {
  double T = 1.0;
  int N = 0;
  int l = 1;
  CoefficientVector coefficients;
  Control control = Control::zero(1.0);
};

/// (-1)^{n-j} C(n,j) l^{n+1} on (j/l, (j+1)/l), j <= n, and 0 up to T.
/// Throws PreconditionError if (n+1)/l > T.
Control mollified_delta_derivative(int n, int l, double T);

/// -sqrt(2T) pi sum_k ((-1)^k / k!) (2T)^k d_k u_l^k, flattened onto the lattice j/l.
/// Throws PreconditionError unless l > (N+1)/T.
Control synthesize(const RadialProfile& g, double T, int N, int l);
SynthesisPlan plan_synthesis(const RadialProfile& g, double T, int N, int l);

/// gamma_n = -pi / (2^{2n+1} n!) int_0^inf r^n g(r) dr.
MomentSequence gamma_moments(const RadialProfile& g, double T, int N);

/// omega_n = -2 n!/(2n)! int int_{x1,x2 > 0} x1^{2n} f(x) dx by tensor Gauss-Legendre
/// quadrature in the plane. Used to cross-check gamma_moments.
MomentSequence omega_moments(const PlaneFieldRadial& f, double T, int N, int panels = 160);

/// int_0^T xi^n u(T - xi) d xi, exact per segment.
MomentSequence control_moments(const Control& u, int N);

/// sup over grid of |g(r)| e^{r/4T} / ln(1 + 4T/r). Reachability with |u| <= L requires
/// this to be at most L/(2 pi).
double necessary_condition(const RadialProfile& g, double T, const std::vector<double>& grid);
double necessary_condition(const RadialProfile& g, double T);
/// 400 log-spaced points on [1e-4 T, 40 T].
std::vector<double> necessary_condition_grid(double T);

/// G(z) = -(1/pi) int_0^T e^{-xi z} u(T - xi) d xi.
std::complex<double> entire_eval(const Control& u, std::complex<double> z);
/// (L/pi)(e^{T|z|} - 1)/|z|, with the limit L T / pi at z = 0.
double entire_bound(double L, double T, std::complex<double> z);

/// Bounds on |gamma_n| from the necessary-condition constant M:
/// the sharp form M pi^{3/2} 2^{-2n-1/2} (2n-1)!!/(2n)!! (4T)^{n+1} and the cruder M (2 pi)^{3/2} T^{n+1}.
double gamma_bound_sharp(double M, double T, int n);
double gamma_bound(double M, double T, int n);
/// L T^{n+1}/(n+1)
double control_moment_bound(double L, double T, int n);
/// C_n = T (M (2 pi)^{3/2} + L/(n+1)), so that |gamma_n - gamma_n^N| <= pi C_n T^n.
double matching_constant(double M, double L, double T, int n);

}  // namespace heatctl

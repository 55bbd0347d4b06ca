#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "heatctl/control.hpp"
#include "heatctl/radial.hpp"

namespace heatctl {

struct ErrorBudget {
  double tail_term = 0.0;
  double mollification_term = 0.0;
  double total = 0.0;
};

struct EndStateReport {
  double target_norm = 0.0;
  double residual_norm = 0.0;
  double plane_residual = 0.0;
  std::optional<ErrorBudget> budget;
};

/// Profile of the free heat flow at time t started from g0(|x|^2).
/// Exponential mixtures map term by term, c e^{-b r} -> c/(1+4bt) e^{-b r/(1+4bt)};
/// other profiles go through Phi(e^{-t rho} Phi g0).
RadialProfile free_evolution(const RadialProfile& g0, double t);

/// Y_u(r, t) = -(1/pi) int_0^t e^{-r/(4 xi)}/(2 xi) u(t - xi) d xi, summed per segment through E1.
/// Throws PreconditionError unless 0 < t <= T and r > 0.
double controlled_term(const Control& u, double t, double r);

/// Sampled profile of free_evolution(g0, T) + Y_u(., T) on the grid.
RadialProfile end_state(const Control& u, const RadialProfile& g0, double T, const std::vector<double>& grid);

/// n log-spaced points on [1e-4 T, 60 T].
std::vector<double> residual_grid(double T, int points = 600);

/// ||h||_{L^2(R+)} from point values of h: adaptive quadrature below grid[0],
/// 4-point Gauss-Legendre on every grid cell and an exponential closure past the last point.
double residual_norm(const std::function<double(double)>& h, const std::vector<double>& grid);

/// The a priori bound: tail of the Laguerre expansion plus the mollification sum.
/// Throws PreconditionError unless l > (N+1)/T.
ErrorBudget error_budget(const RadialProfile& g, double T, int N, int l);

/// ||g - Y_u(., T)|| measured on the grid, with the a priori budget for (N, l).
EndStateReport report(const RadialProfile& g_target, const Control& u, double T, int N, int l,
                      const std::vector<double>& grid);
EndStateReport report(const RadialProfile& g_target, const Control& u, double T, int N, int l);
/// Measurement only (no budget).
EndStateReport measure(const RadialProfile& g_target, const Control& u, double T, const std::vector<double>& grid);

/// max over t of sqrt(pi) ||Y_u(., t)|| / ((2/sqrt(pi)) (t+1) ||u||_inf); 0 for the zero control.
double bounded_growth_check(const Control& u, const std::vector<double>& t_grid, int points = 600);

}  // namespace heatctl

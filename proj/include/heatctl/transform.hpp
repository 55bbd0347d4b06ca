#pragma once

// Order-0 Hankel-type transform (Phi g)(rho) = 1/2 int_0^inf g(r) J0(sqrt(r rho)) dr.

#include "heatctl/radial.hpp"

namespace heatctl {

/// Phi g. Closed forms are mapped term by term and stay closed:
///   c e^{-a r}      -> (c / 2a) e^{-rho / 4a}
///   c r^p e^{-a r}  -> polynomial in rho times e^{-rho / 4a}.
/// Sampled profiles are transformed by quadrature at each grid point, and the
/// result is sampled on the same grid.
/// Throws ConvergenceError when a sampled tail decays too slowly for the quadrature budget.
RadialProfile phi(const RadialProfile& g, double tol = 1e-11);

/// Direct quadrature of 1/2 int_0^N g(r) J0(sqrt(r rho)) dr, with N chosen so
/// that int_N^inf |g| <= tol / 2. Independent of the symbolic path.
double phi_quadrature_reference(const RadialProfile& g, double rho, double tol = 1e-10);

/// Largest number of Gauss-Legendre panels one evaluation may use.
inline constexpr long kMaxTransformPanels = 2'000'000;

}  // namespace heatctl

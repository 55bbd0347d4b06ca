#pragma once

// Extended-precision pieces of the Laguerre expansion shared by basis and control.

#include <vector>

#include "heatctl/radial.hpp"
#include "heatctl/wide.hpp"

namespace heatctl::detail {

/// g_n = <g, psi_n>, n <= N. Exact sums for closed forms; quadrature for sampled profiles.
std::vector<wide_float> expansion_coefficients_wide(const RadialProfile& g, double T, int N);

std::vector<wide_float> binomial_transform_wide(const std::vector<wide_float>& g);

/// ||g||^2, exact for closed forms.
wide_float squared_norm_wide(const RadialProfile& g);

}  // namespace heatctl::detail

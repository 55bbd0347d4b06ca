#pragma once

// Radial profiles g on (0, inf) standing for plane fields f(x) = g(|x|^2).
// All profiles are written in the squared-radius variable r = |x|^2.

#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace heatctl {

struct ExpTerm {
  double coefficient = 0.0;
  double rate = 1.0;
};

struct PolyExpTerm {
  double coefficient = 0.0;
  int power = 0;
  double rate = 1.0;
};

/// sum_i c_i e^{-beta_i r}
struct ExpMixture {
  std::vector<ExpTerm> terms;
};

/// sum_i c_i r^{p_i} e^{-beta_i r}
struct PolyExpMixture {
  std::vector<PolyExpTerm> terms;
};

/// Values on a strictly increasing grid in r, interpolated by monotone cubic
/// Hermite pieces and continued beyond the grid by v_last e^{-tail_rate (r - r_last)}.
/// Below the first grid point the first value is held constant.
class SampledProfile {
 public:
  /// Throws PreconditionError if the grid has fewer than two points, is not
  /// strictly increasing, starts at r <= 0, or the tail rate is not positive.
  /// Without an explicit tail rate, the slowest exponential decay observed
  /// over the last decade of the grid is used.
  SampledProfile(std::vector<double> grid, std::vector<double> values,
                 std::optional<double> tail_rate = std::nullopt);

  const std::vector<double>& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  const std::vector<double>& slopes() const { return slopes_; }
  double tail_rate() const { return tail_rate_; }

  double eval(double r) const;

 private:
  std::vector<double> grid_;
  std::vector<double> values_;
  std::vector<double> slopes_;
  double tail_rate_ = 1.0;
};

/// Slowest positive decay rate -d(ln|v|)/dr over grid points with r >= r_last/10.
double estimate_tail_rate(std::span<const double> grid, std::span<const double> values);

enum class ProfileKind { exp_mixture, polyexp_mixture, sampled };

std::string_view to_string(ProfileKind kind);

class RadialProfile {
 public:
  using Representation = std::variant<ExpMixture, PolyExpMixture, SampledProfile>;

  /// Zero profile (empty exponential mixture).
  RadialProfile() : repr_(ExpMixture{}) {}
  RadialProfile(ExpMixture mixture);
  RadialProfile(PolyExpMixture mixture);
  RadialProfile(SampledProfile sampled) : repr_(std::move(sampled)) {}

  ProfileKind kind() const;
  bool is_closed_form() const { return kind() != ProfileKind::sampled; }
  const Representation& representation() const { return repr_; }

  /// Closed forms widened to PolyExpMixture. Throws PreconditionError for sampled profiles.
  PolyExpMixture as_polyexp() const;
  const SampledProfile& as_sampled() const;

  double eval(double r) const;
  double operator()(double r) const { return eval(r); }

  /// Pointwise bound sum |c_i| r^{p_i} e^{-beta_i r} (|g| itself for sampled profiles).
  double abs_envelope(double r) const;
  /// Slowest exponential decay rate present in the profile.
  double slowest_rate() const;

 private:
  Representation repr_;
};

/// Plane field f(x) = g(|x|^2), stored through its profile.
struct PlaneFieldRadial {
  RadialProfile profile;

  double at(double x1, double x2) const { return profile.eval(x1 * x1 + x2 * x2); }
};

/// The reduction f -> g. On this representation it returns the stored profile.
RadialProfile psi_forward(const PlaneFieldRadial& field);
PlaneFieldRadial psi_inverse(const RadialProfile& profile);

/// Combine terms that share a power and a rate (rates equal to rel_tol) and drop exact zeros.
PolyExpMixture merge_like_terms(const PolyExpMixture& mixture, double rel_tol = 1e-13);

/// a*f + b*g. Closed forms stay symbolic; a sampled operand forces sampling on
/// the union of the sampled grids.
RadialProfile linear_combination(double a, const RadialProfile& f, double b, const RadialProfile& g);
RadialProfile scale(const RadialProfile& f, double factor);

/// Sample a profile on a grid (tail rate estimated unless given).
SampledProfile sample(const RadialProfile& profile, std::vector<double> grid,
                      std::optional<double> tail_rate = std::nullopt);

/// n log-spaced points on [lo, hi].
std::vector<double> log_spaced_grid(double lo, double hi, int n);

/// <f, g> in L^2(R_+). Closed form for pairs of closed forms, quadrature otherwise.
double inner_product(const RadialProfile& f, const RadialProfile& g, double tol = 1e-12);

/// ||g||_{L^2(R_+)}; the plane-field norm is sqrt(pi) times this value.
double l2_norm_halfline(const RadialProfile& g, double tol = 1e-12);

/// ||f||_{L^2(R^2)} = sqrt(pi) ||Psi f||.
double l2_norm_plane(const PlaneFieldRadial& field, double tol = 1e-12);

/// int_0^inf r^n g(r) dr for n >= 0 (closed form when possible).
double radial_moment(const RadialProfile& g, int n, double tol = 1e-12);

}  // namespace heatctl

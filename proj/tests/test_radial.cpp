#include <doctest.h>

#include <cmath>
#include <numbers>

#include "heatctl/errors.hpp"
#include "heatctl/radial.hpp"
#include "oracles.hpp"

using namespace heatctl;

TEST_CASE("plane field reduction is the stored profile") {
  const RadialProfile g = ExpMixture{{{1.0, 1.0}}};
  const PlaneFieldRadial f{g};
  CHECK(psi_forward(f).eval(0.7) == g.eval(0.7));
  const double T = 3.0;
  const RadialProfile example = ExpMixture{{{-0.3, 1.0 / (10.0 * T)}}};
  CHECK(psi_forward(PlaneFieldRadial{example}).eval(2.0) == example.eval(2.0));
  const auto round_trip = psi_inverse(psi_forward(f));
  CHECK(round_trip.at(0.3, -0.4) == f.at(0.3, -0.4));
  CHECK(f.at(0.3, 0.4) == doctest::Approx(std::exp(-0.25)));
}

TEST_CASE("pointwise evaluation") {
  CHECK(RadialProfile(ExpMixture{{{2.0, 1.0}}}).eval(0.5) == doctest::Approx(2.0 * std::exp(-0.5)));
  CHECK(RadialProfile(PolyExpMixture{{{1.0, 2, 3.0}}}).eval(1.0) == doctest::Approx(std::exp(-3.0)));
  const RadialProfile e = ExpMixture{{{1.0, 1.0}}};
  const auto s = sample(e, log_spaced_grid(1e-3, 40.0, 200));
  CHECK(std::fabs(s.eval(2.0) - std::exp(-2.0)) <= 1e-6);
  // Beyond the grid the last sample is continued exponentially.
  CHECK(s.eval(45.0) == doctest::Approx(std::exp(-45.0)).epsilon(1e-3));
}

TEST_CASE("profile invariants are enforced") {
  CHECK_THROWS_AS(RadialProfile(ExpMixture{{{1.0, 0.0}}}), PreconditionError);
  CHECK_THROWS_AS(RadialProfile(PolyExpMixture{{{1.0, -1, 1.0}}}), PreconditionError);
  CHECK_THROWS_AS(SampledProfile({1.0}, {1.0}), PreconditionError);
  CHECK_THROWS_AS(SampledProfile({0.0, 1.0}, {1.0, 1.0}), PreconditionError);
  CHECK_THROWS_AS(SampledProfile({1.0, 1.0}, {1.0, 1.0}), PreconditionError);
  CHECK_THROWS_AS(SampledProfile({1.0, 2.0}, {1.0, 1.0}, -1.0), PreconditionError);
  CHECK_THROWS_AS(RadialProfile(SampledProfile({1.0, 2.0}, {1.0, 0.5})).as_polyexp(), PreconditionError);
}

TEST_CASE("half-line norms") {
  CHECK(l2_norm_halfline(RadialProfile(ExpMixture{{{1.0, 1.0}}})) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(l2_norm_halfline(RadialProfile{}) == 0.0);
  const RadialProfile g = PolyExpMixture{{{1.0, 1, 2.0}, {-0.5, 0, 0.5}}};
  const double expected = std::sqrt(oracle::integrate_halfline([&](double r) { return g.eval(r) * g.eval(r); }, 0.0));
  CHECK(l2_norm_halfline(g) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("plane norm is sqrt(pi) times the half-line norm") {
  for (const auto& g : {RadialProfile(ExpMixture{{{1.0, 1.0}}}), RadialProfile(ExpMixture{{{2.0, 0.3}, {-1.0, 2.0}}}),
                        RadialProfile(ExpMixture{{{0.5, 0.1}}})}) {
    const double X = std::sqrt(60.0 / g.slowest_rate());
    const double quarter = oracle::plane_quarter([&](double x1, double x2) {
      const double v = g.eval(x1 * x1 + x2 * x2);
      return v * v;
    }, X);
    const double plane = std::sqrt(4.0 * quarter);
    CHECK(plane == doctest::Approx(l2_norm_plane(PlaneFieldRadial{g})).epsilon(1e-6));
    CHECK(l2_norm_plane(PlaneFieldRadial{g}) == doctest::Approx(std::sqrt(std::numbers::pi) * l2_norm_halfline(g)));
  }
}

TEST_CASE("sampling preserves the norm") {
  const RadialProfile g = ExpMixture{{{2.0, 0.3}, {-1.0, 2.0}}};
  const auto s = sample(g, log_spaced_grid(1e-4, 150.0, 400));
  CHECK(l2_norm_halfline(RadialProfile(s)) == doctest::Approx(l2_norm_halfline(g)).epsilon(1e-4));
}

TEST_CASE("inner products and moments") {
  const RadialProfile a = ExpMixture{{{1.0, 1.0}}};
  const RadialProfile b = PolyExpMixture{{{1.0, 2, 0.5}}};
  // int r^2 e^{-1.5 r} = 2 / 1.5^3
  CHECK(inner_product(a, b) == doctest::Approx(2.0 / std::pow(1.5, 3)).epsilon(1e-14));
  const auto sa = RadialProfile(sample(a, log_spaced_grid(1e-4, 60.0, 400)));
  CHECK(inner_product(sa, b) == doctest::Approx(2.0 / std::pow(1.5, 3)).epsilon(1e-6));
  CHECK(inner_product(sa, sa) == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(radial_moment(a, 3) == doctest::Approx(6.0).epsilon(1e-14));
  CHECK(radial_moment(sa, 3) == doctest::Approx(6.0).epsilon(1e-5));
}

TEST_CASE("linear combinations stay symbolic for closed forms") {
  const RadialProfile f = ExpMixture{{{1.0, 1.0}}};
  const RadialProfile g = PolyExpMixture{{{2.0, 1, 1.0}}};
  const auto h = linear_combination(2.0, f, -1.0, g);
  CHECK(h.kind() == ProfileKind::polyexp_mixture);
  CHECK(h.eval(0.7) == doctest::Approx(2.0 * f.eval(0.7) - g.eval(0.7)));
  const auto merged = merge_like_terms(PolyExpMixture{{{1.0, 0, 1.0}, {2.0, 0, 1.0}, {-1.0, 1, 2.0}, {1.0, 1, 2.0}}});
  REQUIRE(merged.terms.size() == 1);
  CHECK(merged.terms[0].coefficient == 3.0);
  CHECK(scale(f, 3.0).eval(1.0) == doctest::Approx(3.0 * std::exp(-1.0)));
}

TEST_CASE("tail rate estimate") {
  const auto grid = log_spaced_grid(0.01, 50.0, 300);
  std::vector<double> values;
  for (double r : grid) values.push_back(std::exp(-0.3 * r) + std::exp(-2.0 * r));
  CHECK(estimate_tail_rate(grid, values) == doctest::Approx(0.3).epsilon(1e-6));
  std::vector<double> flat(grid.size(), 1.0);
  CHECK(estimate_tail_rate(grid, flat) == doctest::Approx(1.0 / 50.0));
}

TEST_CASE("monotone data gives a monotone interpolant") {
  const std::vector<double> grid{0.1, 0.2, 0.25, 1.0, 3.0, 3.1};
  const std::vector<double> values{5.0, 4.0, 4.0, 1.0, 0.5, 0.49};
  const SampledProfile s(grid, values);
  double previous = s.eval(0.1);
  for (double r = 0.1; r <= 3.1; r += 0.001) {
    const double v = s.eval(r);
    CHECK(v <= previous + 1e-14);
    previous = v;
  }
}

#include <doctest.h>

#include <cmath>

#include "heatctl/errors.hpp"
#include "heatctl/io.hpp"

using namespace heatctl;

TEST_CASE("profiles round-trip through JSON") {
  const std::vector<RadialProfile> cases = {
      ExpMixture{{{-0.3, 1.0 / 30.0}, {0.1, 2.0}}},
      PolyExpMixture{{{1.0 / 3.0, 2, 0.7}}},
      SampledProfile({0.1, 0.5, 2.0}, {1.0, 0.6, 0.1}, 0.9),
  };
  for (const auto& g : cases) {
    const Json j = to_json(g);
    const auto back = profile_from_json(Json::parse(j.dump()));
    CHECK(back.kind() == g.kind());
    CHECK(to_json(back).dump() == j.dump());
    for (double r : {0.2, 1.0, 3.0}) CHECK(back.eval(r) == g.eval(r));
  }
  CHECK(to_json(cases[0])["kind"] == "exp_mixture");
  CHECK(to_json(cases[2]).contains("tail_rate"));
}

TEST_CASE("numbers may be decimal strings") {
  const Json j = Json::parse(R"({"kind":"exp_mixture","terms":[{"coefficient":"-0.3","rate":"0.1"}]})");
  CHECK(profile_from_json(j).eval(0.0) == -0.3);
  CHECK(read_number(Json("1e-3"), "x") == 1e-3);
  CHECK_THROWS_AS(read_number(Json("1.0abc"), "x"), ParseError);
  CHECK_THROWS_AS(read_number(Json(true), "x"), ParseError);
  CHECK_THROWS_AS(read_integer(Json(1.5), "n"), ParseError);
}

TEST_CASE("malformed profiles") {
  CHECK_THROWS_AS(profile_from_json(Json::parse(R"({"terms":[]})")), ParseError);
  CHECK_THROWS_AS(profile_from_json(Json::parse(R"({"kind":"spline"})")), ParseError);
  CHECK_THROWS_AS(profile_from_json(Json::parse(R"({"kind":"exp_mixture","terms":[{"rate":1}]})")), ParseError);
  CHECK_THROWS_AS(profile_from_json(Json::parse(R"({"kind":"exp_mixture","terms":[{"coefficient":1,"rate":-1}]})")),
                  PreconditionError);
}

TEST_CASE("controls, coefficients and moments") {
  const Control u(2.0, {0.0, 0.1, 2.0}, {4171487.587754723, 0.0});
  const auto back = control_from_json(Json::parse(to_json(u).dump()));
  CHECK(back.levels() == u.levels());
  CHECK(back.breakpoints() == u.breakpoints());
  CHECK(control_csv(u) == "t_start,t_end,level\n0,0.1,4171487.587754723\n0.1,2,0\n");

  const CoefficientVector c{3.0, {1.0, -0.5}, {0.5, 0.5}};
  const auto cb = coefficients_from_json(to_json(c));
  CHECK(cb.g == c.g);
  CHECK(cb.d == c.d);
  CHECK(to_json(c).dump() == R"({"T":3.0,"d":[0.5,0.5],"g":[1.0,-0.5]})");

  const MomentSequence m{1.0, {-6.283185307179586, 0.1}};
  CHECK(moments_from_json(to_json(m)).values == m.values);
}

TEST_CASE("reports") {
  EndStateReport r;
  r.residual_norm = 0.5;
  CHECK(to_json(r)["budget"].is_null());
  r.budget = ErrorBudget{0.1, 0.2, 0.30000000000000004};
  CHECK(to_json(r)["budget"]["total"].get<double>() == 0.30000000000000004);
}

TEST_CASE("shortest round-trip formatting") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(1e-300) == "1e-300");
  CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
  CHECK(profile_csv({1.0, 2.0}, {0.5, 0.25}) == "r,value\n1,0.5\n2,0.25\n");
}

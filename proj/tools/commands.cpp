#include "commands.hpp"

#include <CLI11.hpp>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "heatctl/basis.hpp"
#include "heatctl/control.hpp"
#include "heatctl/errors.hpp"
#include "heatctl/heat_solver.hpp"
#include "heatctl/io.hpp"
#include "heatctl/transform.hpp"

namespace heatctl::cli {

namespace {

namespace fs = std::filesystem;

struct GlobalOptions {
  double tol = 1e-8;
  int grid_points = 600;
  std::string out_dir = ".";
};

struct RegressionFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <typename... Args>
std::string format(const char* pattern, Args... args) {
  const int size = std::snprintf(nullptr, 0, pattern, args...);
  std::string text(static_cast<std::size_t>(size) + 1, '\0');
  std::snprintf(text.data(), text.size(), pattern, args...);
  text.pop_back();
  return text;
}

fs::path output_path(const GlobalOptions& global, const std::string& name) {
  const fs::path p(name);
  return p.is_absolute() ? p : fs::path(global.out_dir) / p;
}

std::vector<double> parse_grid_spec(const std::string& spec) {
  std::array<std::string, 3> parts;
  std::size_t index = 0;
  for (char c : spec) {
    if (c == ':') {
      if (++index >= parts.size()) throw ParseError("grid spec must be lo:hi:count");
    } else {
      parts[index] += c;
    }
  }
  if (index != 2) throw ParseError("grid spec must be lo:hi:count");
  try {
    return log_spaced_grid(std::stod(parts[0]), std::stod(parts[1]), std::stoi(parts[2]));
  } catch (const std::logic_error&) {
    throw ParseError("grid spec '" + spec + "' does not parse as lo:hi:count");
  }
}

void print_levels(std::ostream& out, const Control& u) {
  out << "  interval                                  level\n";
  const auto& b = u.breakpoints();
  for (std::size_t i = 0; i < u.segments(); ++i) {
    out << format("  (%-16.10g, %-16.10g)  %.16g\n", b[i], b[i + 1], u.levels()[i]);
  }
}

void print_budget(std::ostream& out, const ErrorBudget& budget) {
  out << format("error budget: tail %.10g + mollification %.10g = %.10g\n", budget.tail_term,
                budget.mollification_term, budget.total);
}

// synthesize ---------------------------------------------------------------

int cmd_synthesize(const GlobalOptions& global, const std::string& config_path, std::ostream& out) {
  const Json config = load_json_file(config_path);
  if (!config.is_object() || !config.contains("target")) throw ParseError("config needs a 'target' profile");
  const RadialProfile target = profile_from_json(config.at("target"));
  if (!config.contains("T") || !config.contains("N") || !config.contains("l")) {
    throw ParseError("config needs fields T, N and l");
  }
  const double T = read_number(config.at("T"), "T");
  const int N = read_integer(config.at("N"), "N");
  const int l = read_integer(config.at("l"), "l");
  std::string name = "control.json";
  if (config.contains("out")) {
    if (!config.at("out").is_string()) throw ParseError("'out' must be a string");
    name = config.at("out").get<std::string>();
  }

  const SynthesisPlan plan = plan_synthesis(target, T, N, l);
  const ErrorBudget budget = error_budget(target, T, N, l);

  const fs::path json_path = output_path(global, name);
  write_text_file(json_path, dump(to_json(plan.control)));
  fs::path csv_path = json_path;
  csv_path.replace_extension(".csv");
  write_text_file(csv_path, control_csv(plan.control));

  out << format("synthesized control: T = %g, N = %d, l = %d, sup norm %.10g\n", T, N, l, plan.control.sup_norm());
  print_levels(out, plan.control);
  print_budget(out, budget);
  out << "wrote " << json_path.string() << " and " << csv_path.string() << "\n";
  return kOk;
}

// simulate -----------------------------------------------------------------

struct SimulateOptions {
  std::string control;
  std::string initial;
  std::optional<std::string> target;
  std::optional<double> T;
  std::optional<std::string> grid;
  std::optional<int> N;
  std::optional<int> l;
};

int cmd_simulate(const GlobalOptions& global, const SimulateOptions& opts, std::ostream& out) {
  const Control u = control_from_json(load_json_file(opts.control));
  const RadialProfile g0 = profile_from_json(load_json_file(opts.initial));
  const RadialProfile target = opts.target ? profile_from_json(load_json_file(*opts.target)) : RadialProfile{};
  const std::vector<double> grid = opts.grid ? parse_grid_spec(*opts.grid) : std::vector<double>{};
  const double T = opts.T.value_or(u.horizon());
  if (opts.N.has_value() != opts.l.has_value()) throw ParseError("--N and --l must be given together");

  const std::vector<double> r = grid.empty() ? residual_grid(T, global.grid_points) : grid;
  const RadialProfile state = end_state(u, g0, T, r);
  // What the control has to produce: target minus the free flow of the initial state.
  const RadialProfile corrected = linear_combination(1.0, target, -1.0, free_evolution(g0, T));
  EndStateReport rep = measure(corrected, u, T, r);
  if (opts.N) rep.budget = error_budget(corrected, T, *opts.N, *opts.l);

  const fs::path csv_path = output_path(global, "end_state.csv");
  const fs::path report_path = output_path(global, "report.json");
  write_text_file(csv_path, profile_csv(r, state.as_sampled().values()));
  write_text_file(report_path, dump(to_json(rep)));

  out << format("end state at T = %g on %zu grid points\n", T, r.size());
  out << format("target norm %.10g, residual %.10g, plane residual %.10g\n", rep.target_norm, rep.residual_norm,
                rep.plane_residual);
  if (rep.budget) print_budget(out, *rep.budget);
  out << "wrote " << csv_path.string() << " and " << report_path.string() << "\n";
  return kOk;
}

// verify -------------------------------------------------------------------

struct VerifyOptions {
  std::string control;
  std::string target;
  std::optional<double> T;
  int n_max = 5;
  std::optional<double> L;
  double match_tol = 1e-6;
};

int cmd_verify(const GlobalOptions& global, const VerifyOptions& opts, std::ostream& out) {
  const Control u = control_from_json(load_json_file(opts.control));
  const RadialProfile g = profile_from_json(load_json_file(opts.target));
  const double T = opts.T.value_or(u.horizon());
  if (std::fabs(T - u.horizon()) > 1e-12 * T) throw PreconditionError("--T must equal the control horizon");
  const double L = opts.L.value_or(u.sup_norm());

  const double sup = necessary_condition(g, T);
  const double threshold = L / (2.0 * std::numbers::pi);
  const bool condition_holds = sup <= threshold;

  // Exponential-type bound on a 5x5 grid inside |z| <= 4/T.
  bool entire_holds = true;
  double worst_entire = 0.0;
  const double half = 4.0 / T / std::numbers::sqrt2;
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      const std::complex<double> z(-half + i * half / 2.0, -half + j * half / 2.0);
      const double value = std::abs(entire_eval(u, z));
      const double bound = entire_bound(L, T, z);
      if (bound > 0.0) worst_entire = std::max(worst_entire, value / bound);
      if (value > bound * (1.0 + 1e-12) + 1e-300) entire_holds = false;
    }
  }

  const auto target_moments = gamma_moments(g, T, opts.n_max);
  const auto control_mom = control_moments(u, opts.n_max);
  Json residuals = Json::array();
  bool moments_match = true;
  for (int n = 0; n <= opts.n_max; ++n) {
    const double a = target_moments.values[static_cast<std::size_t>(n)];
    const double b = control_mom.values[static_cast<std::size_t>(n)];
    const double residual = std::fabs(a - b);
    const double scale = std::max(std::fabs(a), std::fabs(b));
    if (residual > opts.match_tol * scale) moments_match = false;
    residuals.push_back(residual);
  }

  // Transform side: Phi g against the entire extension on the real axis.
  const RadialProfile transformed = phi(g, global.tol);
  double worst_transform = 0.0;
  double scale_transform = 0.0;
  for (double rho : log_spaced_grid(1e-3 / T, 20.0 / T, 60)) {
    const double a = transformed.eval(rho);
    const double b = entire_eval(u, rho).real();
    worst_transform = std::max(worst_transform, std::fabs(a - b));
    scale_transform = std::max({scale_transform, std::fabs(a), std::fabs(b)});
  }
  const bool transform_match = worst_transform <= opts.match_tol * scale_transform;

  out << format("necessary condition: sup %.10g vs L/(2 pi) = %.10g (L = %.10g): %s\n", sup, threshold, L,
                condition_holds ? "HOLDS" : "FAILS");
  out << format("entire bound on 5x5 grid: worst ratio %.6g: %s\n", worst_entire, entire_holds ? "HOLDS" : "FAILS");
  out << "moment residuals |gamma_n(target) - gamma_n(control)|:\n";
  for (int n = 0; n <= opts.n_max; ++n) {
    out << format("  n = %-2d  target %-22.15g control %-22.15g residual %.6g\n", n,
                  target_moments.values[static_cast<std::size_t>(n)], control_mom.values[static_cast<std::size_t>(n)],
                  residuals[static_cast<std::size_t>(n)].get<double>());
  }
  out << format("transform match: max |Phi g - G| = %.6g: %s\n", worst_transform,
                transform_match ? "MATCHES" : "FAILS");
  out << format("moment match: %s\n", moments_match ? "MATCHES" : "FAILS");

  Json summary{{"T", T},
               {"L", L},
               {"necessary_condition", {{"supremum", sup}, {"threshold", threshold}, {"holds", condition_holds}}},
               {"entire_bound", {{"worst_ratio", worst_entire}, {"holds", entire_holds}}},
               {"moments",
                {{"target", to_json(target_moments)},
                 {"control", to_json(control_mom)},
                 {"residuals", residuals},
                 {"match", moments_match}}},
               {"transform", {{"max_deviation", worst_transform}, {"match", transform_match}}}};
  write_text_file(output_path(global, "verify.json"), dump(summary));
  return kOk;
}

// example ------------------------------------------------------------------

struct ExampleCase {
  int N;
  int l;
  std::vector<double> levels;
};

const std::vector<ExampleCase>& example_cases() {
  static const std::vector<ExampleCase> cases = {
      {3, 20, {4171487.587754723, -11985246.36814925, 11476859.47814512, -3662827.493025041}},
      {4,
       60,
       {12268766670.45946, -48230066041.31739, 71097757825.27233, -46580177228.79937, 11443719610.35109}},
  };
  return cases;
}

int cmd_example(const GlobalOptions& global, std::ostream& out) {
  const double T = 3.0;
  // Initial state cosh(r/12T) e^{-r/4T} and target (3/14) e^{-r/7T}.
  const RadialProfile initial = ExpMixture{{{0.5, 1.0 / (6.0 * T)}, {0.5, 1.0 / (3.0 * T)}}};
  const RadialProfile final_state = ExpMixture{{{3.0 / 14.0, 1.0 / (7.0 * T)}}};
  const RadialProfile free = free_evolution(initial, T);
  const RadialProfile g = merge_like_terms(linear_combination(1.0, final_state, -1.0, free).as_polyexp());
  std::vector<std::string> failures;
  const auto check = [&](bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  };

  out << "free evolution at T = 3: " << to_json(free).dump() << "\n";
  out << "corrected target g: " << to_json(g).dump() << "\n";

  const BasisContext ctx(T);
  const int N_print = 12;
  const auto coeffs = expand(g, ctx, N_print);
  out << "\nLaguerre coefficients g_n:\n";
  for (int n = 0; n <= N_print; ++n) {
    const double expected = ((n % 2) ? 1.0 : -1.0) * std::pow(3.0 / 7.0, n + 1) * std::sqrt(2.0 * T);
    const double computed = coeffs.g[static_cast<std::size_t>(n)];
    const double rel = std::fabs(computed / expected - 1.0);
    out << format("  g_%-2d = %-24.17g closed form %-24.17g rel %.2e\n", n, computed, expected, rel);
    check(rel <= 1e-12, format("g_%d off by %.3g", n, rel));
  }

  Json cases = Json::array();
  double previous_residual = std::numeric_limits<double>::infinity();
  for (const auto& c : example_cases()) {
    const SynthesisPlan plan = plan_synthesis(g, T, c.N, c.l);
    const EndStateReport rep = report(g, plan.control, T, c.N, c.l, residual_grid(T, global.grid_points));
    const double tail_formula = 1.5 * std::sqrt(T / 5.0) * std::pow(3.0 / 7.0, c.N + 1);
    const std::string tag = format("N%d_l%d", c.N, c.l);

    out << format("\nN = %d, l = %d\n", c.N, c.l);
    out << "  d_k^N:";
    for (double d : plan.coefficients.d) out << format(" %.17g", d);
    out << "\n";
    for (std::size_t j = 0; j < c.levels.size(); ++j) {
      const double level = plan.control.levels()[j];
      const double rel = std::fabs(level / c.levels[j] - 1.0);
      out << format("  level %zu on (%g, %g): %-24.17g reference %-24.17g rel %.2e\n", j + 1,
                    plan.control.breakpoints()[j], plan.control.breakpoints()[j + 1], level, c.levels[j], rel);
      check(rel <= 1e-6, format("%s level %zu off by %.3g (interval-level reading of the reference values)",
                                tag.c_str(), j + 1, rel));
    }
    check(plan.control.segments() == c.levels.size() + 1 && plan.control.levels().back() == 0.0,
          tag + ": unexpected control layout");
    const double tail_rel = std::fabs(rep.budget->tail_term / tail_formula - 1.0);
    out << format("  tail term %.15g, closed form %.15g (rel %.2e)\n", rep.budget->tail_term, tail_formula, tail_rel);
    out << format("  residual ||g - Y(., T)|| = %.10g, plane residual %.10g\n", rep.residual_norm, rep.plane_residual);
    print_budget(out, *rep.budget);
    check(tail_rel <= 1e-8, tag + ": tail term disagrees with closed form");
    check(rep.residual_norm <= rep.budget->total, tag + ": residual exceeds the error budget");
    check(rep.residual_norm < previous_residual, tag + ": residual did not decrease");
    previous_residual = rep.residual_norm;

    write_text_file(output_path(global, "control_" + tag + ".csv"), control_csv(plan.control));
    write_text_file(output_path(global, "control_" + tag + ".json"), dump(to_json(plan.control)));

    // Sections of W^T - (W_0 + W_U) through the origin; the field is radial so both coincide.
    std::ostringstream sections;
    sections << "x,x2_zero,x1_zero\n";
    const double reach = std::sqrt(60.0 * T);
    const int count = 601;
    for (int i = 0; i < count; ++i) {
      const double x = -reach + 2.0 * reach * i / (count - 1);
      const double r = std::max(x * x, 1e-12 * T);
      const double value = g.eval(r) - controlled_term(plan.control, T, r);
      sections << format_number(x) << ',' << format_number(value) << ',' << format_number(value) << '\n';
    }
    write_text_file(output_path(global, "residual_sections_" + tag + ".csv"), sections.str());

    const auto r = residual_grid(T, global.grid_points);
    std::vector<double> values(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) values[i] = g.eval(r[i]) - controlled_term(plan.control, T, r[i]);
    write_text_file(output_path(global, "residual_profile_" + tag + ".csv"), profile_csv(r, values));

    cases.push_back({{"N", c.N},
                     {"l", c.l},
                     {"coefficients", to_json(plan.coefficients)},
                     {"control", to_json(plan.control)},
                     {"report", to_json(rep)}});
  }

  write_text_file(output_path(global, "example.json"),
                  dump(Json{{"T", T}, {"target", to_json(g)}, {"free_evolution", to_json(free)}, {"cases", cases}}));

  if (!failures.empty()) {
    std::ostringstream message;
    message << "regression mismatch:";
    for (const auto& f : failures) message << "\n  " << f;
    throw RegressionFailure(message.str());
  }
  out << "\nall regression checks passed\n";
  return kOk;
}

// transform / moments ------------------------------------------------------

int cmd_transform(const GlobalOptions& global, const std::string& profile_path, const std::optional<std::string>& out_name,
                  std::ostream& out) {
  const RadialProfile g = profile_from_json(load_json_file(profile_path));
  const std::string text = dump(to_json(phi(g, global.tol)));
  if (out_name) {
    write_text_file(output_path(global, *out_name), text);
  } else {
    out << text;
  }
  return kOk;
}

int cmd_moments(const std::string& profile_path, double T, int N, std::ostream& out) {
  const RadialProfile g = profile_from_json(load_json_file(profile_path));
  out << dump(to_json(gamma_moments(g, T, N)));
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Boundary control synthesis and verification for the planar heat equation"};
  app.require_subcommand(1);
  GlobalOptions global;
  app.add_option("--tol", global.tol, "Quadrature tolerance")->check(CLI::PositiveNumber);
  app.add_option("--grid-points", global.grid_points, "Points on the residual grid")->check(CLI::Range(2, 10000000));
  app.add_option("--out-dir", global.out_dir, "Directory for written artifacts");
  app.fallthrough();

  std::string config_path;
  auto* synth = app.add_subcommand("synthesize", "Build a control from a config file");
  synth->add_option("config", config_path, "Config JSON with target, T, N, l and optional out")->required();

  SimulateOptions sim;
  auto* simulate = app.add_subcommand("simulate", "Evaluate the end state of a control");
  simulate->add_option("--control", sim.control, "Control JSON")->required();
  simulate->add_option("--initial", sim.initial, "Initial profile JSON")->required();
  simulate->add_option("--target", sim.target, "Target profile JSON (zero when omitted)");
  simulate->add_option("--T", sim.T, "Horizon (defaults to the control horizon)");
  simulate->add_option("--grid", sim.grid, "Log grid lo:hi:count in r");
  simulate->add_option("--N", sim.N, "Expansion order for the error budget");
  simulate->add_option("--l", sim.l, "Mollifier scale for the error budget");

  VerifyOptions ver;
  auto* verify = app.add_subcommand("verify", "Check a control against a target profile");
  verify->add_option("--control", ver.control, "Control JSON")->required();
  verify->add_option("--target", ver.target, "Target profile JSON")->required();
  verify->add_option("--T", ver.T, "Horizon (must match the control)");
  verify->add_option("--N-max", ver.n_max, "Highest moment index")->check(CLI::Range(0, kMaxOrder));
  verify->add_option("--L", ver.L, "Sup-norm bound (defaults to the control's sup norm)");
  verify->add_option("--match-tol", ver.match_tol, "Relative tolerance for moment and transform matching");

  auto* example = app.add_subcommand("example", "Reproduce the worked example at T = 3");

  std::string transform_path;
  std::optional<std::string> transform_out;
  auto* transform = app.add_subcommand("transform", "Apply the Hankel-type transform to a profile");
  transform->add_option("profile", transform_path, "Profile JSON")->required();
  transform->add_option("--out", transform_out, "Output file (stdout when omitted)");

  std::string moments_path;
  double moments_T = 1.0;
  int moments_N = 5;
  auto* moments = app.add_subcommand("moments", "Print gamma_n of a profile");
  moments->add_option("profile", moments_path, "Profile JSON")->required();
  moments->add_option("--T", moments_T, "Horizon")->required();
  moments->add_option("--N", moments_N, "Highest index")->check(CLI::Range(0, kMaxOrder));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kParse;
  }

  try {
    if (*synth) return cmd_synthesize(global, config_path, out);
    if (*simulate) return cmd_simulate(global, sim, out);
    if (*verify) return cmd_verify(global, ver, out);
    if (*example) return cmd_example(global, out);
    if (*transform) return cmd_transform(global, transform_path, transform_out, out);
    if (*moments) return cmd_moments(moments_path, moments_T, moments_N, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const PreconditionError& e) {
    err << "precondition violated: " << e.what() << "\n";
    return kPrecondition;
  } catch (const DomainError& e) {
    err << "precondition violated: " << e.what() << "\n";
    return kPrecondition;
  } catch (const ConvergenceError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumerics;
  } catch (const RegressionFailure& e) {
    err << e.what() << "\n";
    return kRegression;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kFailure;
}

}  // namespace heatctl::cli

#include "heatctl/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "heatctl/errors.hpp"

namespace heatctl {

namespace {

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw ParseError(std::string("missing field '") + name + "'");
  return j.at(name);
}

std::vector<double> read_numbers(const Json& j, const std::string& what) {
  if (!j.is_array()) throw ParseError(what + " must be an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) out.push_back(read_number(v, what));
  return out;
}

Json number_array(const std::vector<double>& values) {
  Json out = Json::array();
  for (double v : values) out.push_back(v);
  return out;
}

}  // namespace

double read_number(const Json& j, const std::string& what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    double value = 0.0;
    const auto* begin = s.data();
    const auto* end = s.data() + s.size();
    if (begin != end && *begin == '+') ++begin;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec == std::errc() && ptr == end) return value;
    throw ParseError(what + ": '" + s + "' is not a decimal number");
  }
  throw ParseError(what + " must be a number or a decimal string");
}

int read_integer(const Json& j, const std::string& what) {
  const double v = read_number(j, what);
  if (v != std::floor(v) || std::fabs(v) > 1e9) throw ParseError(what + " must be an integer");
  return static_cast<int>(v);
}

std::string format_number(double v) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, v);
  return std::string(buffer, ptr);
}

Json to_json(const RadialProfile& g) {
  Json out;
  out["kind"] = std::string(to_string(g.kind()));
  switch (g.kind()) {
    case ProfileKind::exp_mixture: {
      Json terms = Json::array();
      for (const auto& t : std::get<ExpMixture>(g.representation()).terms) {
        terms.push_back({{"coefficient", t.coefficient}, {"rate", t.rate}});
      }
      out["terms"] = terms;
      break;
    }
    case ProfileKind::polyexp_mixture: {
      Json terms = Json::array();
      for (const auto& t : g.as_polyexp().terms) {
        terms.push_back({{"coefficient", t.coefficient}, {"power", t.power}, {"rate", t.rate}});
      }
      out["terms"] = terms;
      break;
    }
    case ProfileKind::sampled: {
      const auto& s = g.as_sampled();
      out["grid"] = number_array(s.grid());
      out["values"] = number_array(s.values());
      out["tail_rate"] = s.tail_rate();
      break;
    }
  }
  return out;
}

RadialProfile profile_from_json(const Json& j) {
  const Json& kind_field = field(j, "kind");
  if (!kind_field.is_string()) throw ParseError("profile kind must be a string");
  const auto kind = kind_field.get<std::string>();
  if (kind == "exp_mixture") {
    ExpMixture m;
    const Json& terms = field(j, "terms");
    if (!terms.is_array()) throw ParseError("terms must be an array");
    for (const auto& t : terms) {
      m.terms.push_back({read_number(field(t, "coefficient"), "coefficient"), read_number(field(t, "rate"), "rate")});
    }
    return m;
  }
  if (kind == "polyexp_mixture") {
    PolyExpMixture m;
    const Json& terms = field(j, "terms");
    if (!terms.is_array()) throw ParseError("terms must be an array");
    for (const auto& t : terms) {
      m.terms.push_back({read_number(field(t, "coefficient"), "coefficient"), read_integer(field(t, "power"), "power"),
                         read_number(field(t, "rate"), "rate")});
    }
    return m;
  }
  if (kind == "sampled") {
    std::optional<double> tail;
    if (j.contains("tail_rate") && !j.at("tail_rate").is_null()) tail = read_number(j.at("tail_rate"), "tail_rate");
    return SampledProfile(read_numbers(field(j, "grid"), "grid"), read_numbers(field(j, "values"), "values"), tail);
  }
  throw ParseError("unknown profile kind '" + kind + "'");
}

Json to_json(const Control& u) {
  return {{"T", u.horizon()}, {"breakpoints", number_array(u.breakpoints())}, {"levels", number_array(u.levels())}};
}

Control control_from_json(const Json& j) {
  return Control(read_number(field(j, "T"), "T"), read_numbers(field(j, "breakpoints"), "breakpoints"),
                 read_numbers(field(j, "levels"), "levels"));
}

Json to_json(const CoefficientVector& c) { return {{"T", c.T}, {"g", number_array(c.g)}, {"d", number_array(c.d)}}; }

CoefficientVector coefficients_from_json(const Json& j) {
  CoefficientVector c;
  c.T = read_number(field(j, "T"), "T");
  c.g = read_numbers(field(j, "g"), "g");
  c.d = read_numbers(field(j, "d"), "d");
  if (c.g.size() != c.d.size()) throw ParseError("g and d must have equal length");
  return c;
}

Json to_json(const MomentSequence& m) { return {{"T", m.T}, {"values", number_array(m.values)}}; }

MomentSequence moments_from_json(const Json& j) {
  return MomentSequence{read_number(field(j, "T"), "T"), read_numbers(field(j, "values"), "values")};
}

Json to_json(const ErrorBudget& b) {
  return {{"tail_term", b.tail_term}, {"mollification_term", b.mollification_term}, {"total", b.total}};
}

Json to_json(const EndStateReport& r) {
  Json out{{"target_norm", r.target_norm}, {"residual_norm", r.residual_norm}, {"plane_residual", r.plane_residual}};
  out["budget"] = r.budget ? to_json(*r.budget) : Json(nullptr);
  return out;
}

std::string control_csv(const Control& u) {
  std::ostringstream out;
  out << "t_start,t_end,level\n";
  const auto& b = u.breakpoints();
  for (std::size_t i = 0; i < u.segments(); ++i) {
    out << format_number(b[i]) << ',' << format_number(b[i + 1]) << ',' << format_number(u.levels()[i]) << '\n';
  }
  return out.str();
}

std::string profile_csv(const std::vector<double>& r, const std::vector<double>& values) {
  std::ostringstream out;
  out << "r,value\n";
  for (std::size_t i = 0; i < r.size() && i < values.size(); ++i) {
    out << format_number(r[i]) << ',' << format_number(values[i]) << '\n';
  }
  return out.str();
}

Json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace heatctl

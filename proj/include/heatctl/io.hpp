#pragma once

// JSON and CSV forms of the library types. Numbers are written in shortest
// round-trip form; readers accept JSON numbers or decimal strings.

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "heatctl/basis.hpp"
#include "heatctl/control.hpp"
#include "heatctl/heat_solver.hpp"
#include "heatctl/radial.hpp"

namespace heatctl {

using Json = nlohmann::json;

Json to_json(const RadialProfile& g);
Json to_json(const Control& u);
Json to_json(const CoefficientVector& c);
Json to_json(const MomentSequence& m);
Json to_json(const ErrorBudget& b);
Json to_json(const EndStateReport& r);

/// Readers throw ParseError on malformed or missing fields.
RadialProfile profile_from_json(const Json& j);
Control control_from_json(const Json& j);
CoefficientVector coefficients_from_json(const Json& j);
MomentSequence moments_from_json(const Json& j);

/// A JSON number or a decimal string.
double read_number(const Json& j, const std::string& what);
int read_integer(const Json& j, const std::string& what);

/// Shortest round-trip decimal text.
std::string format_number(double v);

/// Columns t_start,t_end,level.
std::string control_csv(const Control& u);
/// Columns r,value.
std::string profile_csv(const std::vector<double>& r, const std::vector<double>& values);

Json load_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);
/// Two-space indented dump with trailing newline.
std::string dump(const Json& j);

}  // namespace heatctl

#pragma once

#include <string>

#include "billiards/geometry/curve.hpp"
#include "billiards/report.hpp"

namespace billiards {

/// {"degree": d, "monomials": [{"i":..,"j":..,"k":..,"re":..,"im":..}, ...]}
Json curve_to_json(const PlaneCurve& c);
/// Throws InvalidArgument on a malformed document.
PlaneCurve curve_from_json(const Json& j);

PlaneCurve read_curve_file(const std::string& path);
void write_curve_file(const std::string& path, const PlaneCurve& c);

}  // namespace billiards

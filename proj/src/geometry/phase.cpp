#include "billiards/geometry/phase.hpp"

#include <algorithm>

#include "billiards/error.hpp"

namespace billiards {

double phase_distance(const PhasePoint& a, const PhasePoint& b) noexcept {
  return std::max(projective_distance(ProjectivePoint::affine(a.x), ProjectivePoint::affine(b.x)),
                  direction_distance(a.v, b.v));
}

double phase_distance(const PhasePoint& a, const CatalogPoint& b) noexcept {
  return std::max(projective_distance(ProjectivePoint::affine(a.x), b.x), direction_distance(a.v, b.v));
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json riemann_to_json(RiemannPoint w) {
  return w.is_infinite() ? Json("inf") : complex_to_json(w.value());
}

Json phase_to_json(const PhasePoint& p) {
  return {{"x", Json::array({complex_to_json(p.x[0]), complex_to_json(p.x[1])})},
          {"w", riemann_to_json(p.v.parameter())}};
}

namespace {

Complex complex_from(const Json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

}  // namespace

PhasePoint phase_from_json(const Json& j) {
  try {
    PhasePoint p;
    p.x = {complex_from(j.at("x").at(0)), complex_from(j.at("x").at(1))};
    const Json& w = j.at("w");
    if (w.is_string()) {
      if (w.get<std::string>() != "inf") throw Error(ErrorCode::InvalidArgument, "bad direction parameter");
      p.v = Direction(RiemannPoint::infinity());
    } else {
      p.v = Direction(RiemannPoint(complex_from(w)));
    }
    return p;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("malformed phase point: ") + e.what());
  }
}

}  // namespace billiards

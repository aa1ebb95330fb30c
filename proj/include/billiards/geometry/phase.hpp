#pragma once

#include "billiards/geometry/projective.hpp"
#include "billiards/geometry/quadratic_form.hpp"
#include "billiards/report.hpp"

namespace billiards {

/// (x, v) with x an affine point of the curve and v a unit direction.
struct PhasePoint {
  Vec2 x{};
  Direction v;
};

/// A phase point whose base may lie on the line at infinity; used for the
/// indeterminacy catalogs.
struct CatalogPoint {
  ProjectivePoint x;
  Direction v;
};

/// max(projective distance of bases, chordal distance of direction parameters).
double phase_distance(const PhasePoint& a, const PhasePoint& b) noexcept;
double phase_distance(const PhasePoint& a, const CatalogPoint& b) noexcept;

/// [re, im]
Json complex_to_json(Complex z);
/// [re, im], or the string "inf".
Json riemann_to_json(RiemannPoint w);
/// {"x": [[re, im], [re, im]], "w": ...}
Json phase_to_json(const PhasePoint& p);
/// Inverse of phase_to_json; throws InvalidArgument on a malformed document.
PhasePoint phase_from_json(const Json& j);

}  // namespace billiards

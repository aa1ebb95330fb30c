#pragma once

#include <vector>

#include "billiards/algebra/gaussian_rational.hpp"
#include "billiards/geometry/curve.hpp"
#include "billiards/geometry/phase.hpp"
#include "billiards/geometry/ternary_form.hpp"
#include "billiards/report.hpp"

namespace billiards {

using ExactForm = TernaryForm<GaussianRational>;

/// (X0 - i X1)^d + (X0 + i X1)^d - X2^d, expanded exactly.
ExactForm fermat_form(int d);
/// Z0^d + Z1^d - Z2^d
ExactForm standard_fermat_form(int d);
/// Floating copy of an exact form.
PlaneCurve to_curve(const ExactForm& f);

/// The Fermat hyperbola of degree d. Throws InvalidDegree for d < 2.
PlaneCurve fermat_hyperbola(int d);

/// [X0 : X1 : X2] -> [X0 - i X1 : X0 + i X1 : X2]
Mat3 j_matrix();
/// The linear part of J acting on affine points and tangent vectors.
Mat2 j_linear();
ProjectivePoint apply_J(const ProjectivePoint& p);
PlaneCurve apply_J_to_curve(const PlaneCurve& c);
/// Exact image J(C) of a curve given by an exact form.
ExactForm apply_J_exact(const ExactForm& f);

/// Image of a direction under a linear map l, re-encoded in the frame of dst.
/// Isotropic directions are sent to whichever isotropic direction of dst is
/// nearer to the image line.
Direction map_direction(const QuadraticForm& src, const Mat2& l, const QuadraticForm& dst,
                        const Direction& v);

/// The 2d points of isotropic tangency paired with the tangent isotropic
/// direction, for the Euclidean form: base (zeta/2, -i zeta/2) with w = 0 and
/// base (zeta/2, i zeta/2) with w = ∞, zeta = exp(2 pi i k / d).
std::vector<PhasePoint> isotropic_tangency_points(int d);

/// For each point x_∞ at infinity of c, the two unit directions of slope t(x_∞).
std::vector<CatalogPoint> secant_indeterminacy_points(const PlaneCurve& c, const QuadraticForm& theta);

/// Exact invariance of the Fermat hyperbola and the Euclidean form under the
/// rotation by 2 pi / d and the reflection X1 -> -X1, and transitivity of the
/// generated group on the isotropic tangency catalog.
Report symmetry_check(int d);

}  // namespace billiards

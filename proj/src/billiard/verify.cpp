#include "billiards/billiard/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "billiards/billiard/dynamics.hpp"
#include "billiards/geometry/fermat.hpp"

namespace billiards {

namespace {

double nearest(const ImageMultiset& m, const PhasePoint& p) {
  double best = std::numeric_limits<double>::infinity();
  for (const ImageEntry& e : m.entries) best = std::min(best, phase_distance(e.point, p));
  return best;
}

// sum |G_ij| |q_i| |q_j|, the rounding scale of Θ(q).
double theta_magnitude(const QuadraticForm& theta, const Vec2& q) {
  double m = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m += std::abs(theta.matrix()[i][j]) * std::abs(q[i]) * std::abs(q[j]);
  return m;
}

}  // namespace

Report verify_geometry(int d) {
  const PlaneCurve c = fermat_hyperbola(d);
  const QuadraticForm theta = QuadraticForm::euclidean();
  Report r;
  r.title = "fermat geometry, d = " + std::to_string(d);

  const std::vector<ProjectivePoint> inf = points_at_infinity(c);
  double iso_gap = 1.0;
  for (const ProjectivePoint& p : inf)
    for (const Complex s : {Complex(0.0, 1.0), Complex(0.0, -1.0)})
      iso_gap = std::min(iso_gap, projective_distance(p, ProjectivePoint(1.0, s, 0.0)));
  r.add("points_at_infinity", static_cast<int>(inf.size()) == d, {{"count", inf.size()}});
  r.add("not_isotropic", iso_gap > 1e-6, {{"min_distance", iso_gap}});

  const std::vector<PhasePoint> ind_r = isotropic_tangency_points(d);
  double worst_residual = 0.0, worst_lower = 0.0;
  int bad_order = 0;
  for (const PhasePoint& p : ind_r) {
    worst_residual = std::max(worst_residual, std::abs(c.affine(p.x)) / c.affine_magnitude(p.x));
    if (tangency_order(c, p.x) != d) ++bad_order;
    const ComplexPolynomial line = secant_polynomial(c, theta, p);
    const double lead = std::abs(line.coefficient(d));
    for (int k = 0; k < d; ++k)
      worst_lower = std::max(worst_lower, lead > 0.0 ? std::abs(line.coefficient(k)) / lead : 1.0);
  }
  r.add("ind_r_count", static_cast<int>(ind_r.size()) == 2 * d, {{"count", ind_r.size()}});
  r.add("ind_r_on_curve", worst_residual <= 1e-12, {{"max_residual", worst_residual}});
  r.add("tangency_order", bad_order == 0, {{"mismatches", bad_order}});
  r.add("secant_is_monomial", worst_lower <= 1e-9, {{"max_relative_lower", worst_lower}});

  const Report sym = symmetry_check(d);
  for (const Check& ch : sym.checks) r.checks.push_back(ch);
  r.notes = {{"d", d}};
  return r;
}

Report billiard_properties(const PropertySuiteOptions& o) {
  if (o.samples < 1) throw Error(ErrorCode::InvalidArgument, "samples must be >= 1");
  const PlaneCurve c = fermat_hyperbola(o.d);
  const QuadraticForm theta = QuadraticForm::euclidean();
  const IndeterminacyCatalog catalog = IndeterminacyCatalog::fermat(o.d);
  std::mt19937_64 rng(o.seed);

  double adjoint = 0.0, involution = 0.0, norm = 0.0, norm_abs = 0.0;
  int bad_multiplicity = 0, flagged = 0, rejected = 0, unresolved = 0;
  for (int s = 0; s < o.samples;) {
    const PhasePoint p = sample_phase_point(c, rng);
    if (catalog.classify(p).tag != IndeterminacyTag::Regular) {
      ++rejected;
      continue;
    }
    // Asymptotic lines, isotropic tangents and lines tangent to C (a multiple
    // secant image) make the sample non-regular; it is redrawn.
    double sample_adjoint = 0.0;
    PhasePoint q;
    ImageMultiset b;
    try {
      const ImageMultiset sec = secant_step(c, theta, p);
      if (std::any_of(sec.entries.begin(), sec.entries.end(), [](const ImageEntry& e) { return e.multiplicity > 1; })) {
        ++rejected;
        continue;
      }
      for (const ImageEntry& e : sec.entries)
        sample_adjoint = std::max(sample_adjoint, nearest(secant_step(c, theta, e.point), p));
      q = reflect_step(c, theta, p);
      b = billiard_step(c, theta, p);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::NonConvergence) {
        ++unresolved;
        ++s;
        continue;
      }
      if (e.code() != ErrorCode::IndeterminateSecant && e.code() != ErrorCode::IndeterminateReflection) throw;
      ++rejected;
      continue;
    }
    ++s;
    adjoint = std::max(adjoint, sample_adjoint);
    involution = std::max(involution, direction_distance(reflect_step(c, theta, q).v, p.v));
    const Vec2 u = q.v.vector(theta);
    const double dev = std::abs(theta.value(u) - 1.0);
    norm = std::max(norm, dev / theta_magnitude(theta, u));
    norm_abs = std::max(norm_abs, dev);
    if (b.total_multiplicity() != o.d - 1) ++bad_multiplicity;
    if (b.any_flagged()) ++flagged;
  }

  Report r;
  r.title = "billiard correspondence properties, d = " + std::to_string(o.d);
  r.add("secant_self_adjoint", adjoint <= o.adjoint_tol && unresolved == 0,
        {{"max_distance", adjoint}, {"unresolved_roots", unresolved}});
  r.add("reflection_involution", involution <= o.reflect_tol, {{"max_distance", involution}});
  r.add("theta_norm_preserved", norm <= o.reflect_tol, {{"max_relative_deviation", norm}, {"max_absolute_deviation", norm_abs}});
  r.add("billiard_multiplicity", bad_multiplicity == 0, {{"mismatches", bad_multiplicity}, {"flagged", flagged}});

  ConjugacyOptions co;
  co.samples = o.samples;
  co.seed = o.seed + 1;
  co.max_discrepancy = o.conjugacy_tol;
  const Report conj = conjugacy_check(c, theta, co);
  for (const Check& ch : conj.checks) r.add("conjugacy_" + ch.name, ch.passed, ch.witness);

  r.notes = {{"d", o.d}, {"samples", o.samples}, {"seed", o.seed}, {"rejected_non_regular", rejected}};
  return r;
}

}  // namespace billiards

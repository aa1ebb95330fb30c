#include <cmath>
#include <numbers>
#include <random>

#include "billiards/billiard/dynamics.hpp"
#include "billiards/billiard/verify.hpp"
#include "billiards/error.hpp"
#include "billiards/geometry/fermat.hpp"
#include "doctest.h"

using namespace billiards;

namespace {

const QuadraticForm kEuclid = QuadraticForm::euclidean();

PlaneCurve unit_circle() {
  return PlaneCurve(2, {{2, 0, 0, 1.0}, {0, 2, 0, 1.0}, {0, 0, 2, -1.0}});
}

// For the Euclidean form a real unit vector (c, s) has parameter c + i s.
Direction real_direction(double angle) { return Direction(RiemannPoint(std::polar(1.0, angle))); }

double residual(const PlaneCurve& c, const Vec2& x) { return std::abs(c.affine(x)) / c.affine_magnitude(x); }

bool contains_point(const ImageMultiset& m, const PhasePoint& p, double tol) {
  for (const ImageEntry& e : m.entries)
    if (phase_distance(e.point, p) <= tol) return true;
  return false;
}

// A point of fermat_hyperbola(d) near the point at infinity [1 : s : 0]:
// Newton for u in F(1, u, eps) = 0, then x = (1/eps, u/eps).
Vec2 near_infinity(const PlaneCurve& c, Complex s, double eps) {
  Complex u = s;
  for (int it = 0; it < 50; ++it) {
    const std::array<Complex, 3> z{1.0, u, eps};
    u -= c(z) / c.gradient(z)[1];
  }
  return {1.0 / eps, u / eps};
}

}  // namespace

TEST_CASE("secant_step: chord of the circle") {
  const PlaneCurve circle = unit_circle();
  const auto [v, v2] = Direction::from_slope(kEuclid, Slope{1.0, 1.0});
  for (const Direction& dir : {v, v2}) {
    const ImageMultiset m = secant_step(circle, kEuclid, {{1.0, 0.0}, dir});
    REQUIRE(m.entries.size() == 1);
    CHECK(m.total_multiplicity() == 1);
    // (1 + t/√2)^2 + (t/√2)^2 = 1 has the second root t = -√2, i.e. (0, -1).
    CHECK(std::abs(m.entries[0].point.x[0]) < 1e-14);
    CHECK(std::abs(m.entries[0].point.x[1] + 1.0) < 1e-14);
  }
}

TEST_CASE("secant_step: errors") {
  const PlaneCurve circle = unit_circle();
  try {
    secant_step(circle, kEuclid, {{0.5, 0.0}, real_direction(1.0)});
    FAIL("expected NotOnCurve");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotOnCurve);
  }
  // The hyperbola 2x^2 - 2y^2 = 1 through (1/√2, 0) with an asymptotic slope [1:1].
  const PlaneCurve h = fermat_hyperbola(2);
  const auto [v, v2] = Direction::from_slope(kEuclid, Slope{1.0, 1.0});
  try {
    secant_step(h, kEuclid, {{1.0 / std::sqrt(2.0), 0.0}, v});
    FAIL("expected IndeterminateSecant");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IndeterminateSecant);
  }
}

TEST_CASE("secant_step on Ind r returns the point itself with multiplicity d - 1") {
  for (int d = 2; d <= 8; ++d) {
    const PlaneCurve c = fermat_hyperbola(d);
    for (const PhasePoint& p : isotropic_tangency_points(d)) {
      const ImageMultiset m = secant_step(c, kEuclid, p);
      REQUIRE(m.entries.size() == 1);
      CHECK(m.entries[0].multiplicity == d - 1);
      CHECK(phase_distance(m.entries[0].point, p) < 1e-12);

      // Exceptionality: the line polynomial is c t^d.
      const ComplexPolynomial line = secant_polynomial(c, kEuclid, p);
      const double lead = std::abs(line.coefficient(d));
      REQUIRE(lead > 0.0);
      for (int k = 0; k < d; ++k) CHECK(std::abs(line.coefficient(k)) <= 1e-9 * lead);
    }
  }
}

TEST_CASE("secant_step: generic points of fermat_hyperbola(3)") {
  const PlaneCurve c = fermat_hyperbola(3);
  std::mt19937_64 rng(5);
  for (int s = 0; s < 50; ++s) {
    const PhasePoint p = sample_phase_point(c, rng);
    const ImageMultiset m = secant_step(c, kEuclid, p);
    CHECK(m.entries.size() == 2);
    for (const ImageEntry& e : m.entries) CHECK(residual(c, e.point.x) <= 1e-9);
  }
}

TEST_CASE("secant is self-adjoint") {
  std::mt19937_64 rng(11);
  for (int d = 2; d <= 6; ++d) {
    const PlaneCurve c = fermat_hyperbola(d);
    for (int s = 0; s < 40; ++s) {
      const PhasePoint p = sample_phase_point(c, rng);
      const ImageMultiset m = secant_step(c, kEuclid, p);
      CHECK(m.total_multiplicity() == d - 1);
      for (const ImageEntry& e : m.entries) CHECK(contains_point(secant_step(c, kEuclid, e.point), p, 1e-8));
    }
  }
}

TEST_CASE("reflect_step: mirror examples") {
  const PlaneCurve circle = unit_circle();
  const double a = std::numbers::pi / 4.0;
  const PhasePoint out = reflect_step(circle, kEuclid, {{1.0, 0.0}, real_direction(std::numbers::pi - a)});
  CHECK(direction_distance(out.v, real_direction(a)) < 1e-15);

  // Tangent directions are fixed.
  const auto [t1, t2] = Direction::from_slope(kEuclid, Slope{0.0, 1.0});
  CHECK(direction_distance(reflect_step(circle, kEuclid, {{1.0, 0.0}, t1}).v, t1) < 1e-15);
  CHECK(direction_distance(reflect_step(circle, kEuclid, {{1.0, 0.0}, t2}).v, t2) < 1e-15);

  // Isotropic directions are exchanged.
  const PhasePoint iso = reflect_step(circle, kEuclid, {{1.0, 0.0}, Direction(RiemannPoint(0.0))});
  CHECK(iso.v.parameter().is_infinite());
}

TEST_CASE("reflect_step is a Θ-preserving involution and matches the frame model") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 2; ++trial) {
    // Euclidean first, then a random complex symmetric form.
    const QuadraticForm theta =
        trial == 0 ? kEuclid
                   : QuadraticForm::from_matrix({{{Complex{1.3, 0.2}, Complex{0.4, -0.7}},
                                                  {Complex{0.4, -0.7}, Complex{-0.6, 1.1}}}});
    const PlaneCurve c = fermat_hyperbola(4);
    for (int s = 0; s < 500; ++s) {
      const PhasePoint p = sample_phase_point(c, rng);
      const PhasePoint r = reflect_step(c, theta, p);
      CHECK(std::abs(theta.value(r.v.vector(theta)) - 1.0) < 1e-10);
      CHECK(direction_distance(reflect_step(c, theta, r).v, p.v) < 1e-10);

      // Oracle: the Cartesian formula v - 2 B(v, n) / Θ(n, n) n, away from isotropic tangents.
      const Vec2 n = apply_linear(theta.inverse_matrix(), c.affine_gradient(p.x));
      const Complex nn = theta.value(n);
      if (std::abs(nn) < 1e-2 * theta.scale() * norm(n) * norm(n)) continue;
      const Vec2 u = p.v.vector(theta);
      const Complex k = 2.0 * theta.bilinear(u, n) / nn;
      const Direction expect = Direction::from_vector(theta, {u[0] - k * n[0], u[1] - k * n[1]});
      CHECK(direction_distance(r.v, expect) < 1e-10);
    }
  }
}

TEST_CASE("reflect_step flags isotropic tangents") {
  for (int d = 2; d <= 6; ++d) {
    const PlaneCurve c = fermat_hyperbola(d);
    for (const PhasePoint& p : isotropic_tangency_points(d)) {
      try {
        reflect_step(c, kEuclid, p);
        FAIL("expected IndeterminateReflection");
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::IndeterminateReflection);
      }
    }
  }
}

TEST_CASE("r fixes the tangent direction at Ind s, approached along C") {
  for (int d = 2; d <= 6; ++d) {
    const PlaneCurve c = fermat_hyperbola(d);
    const IndeterminacyCatalog cat = IndeterminacyCatalog::fermat(d);
    for (const CatalogPoint& q : cat.ind_s) {
      if (q.x[0] == Complex{}) continue;
      const Complex s = q.x[1] / q.x[0];
      const PhasePoint p{near_infinity(c, s, 1e-8), q.v};
      const PhasePoint r = reflect_step(c, kEuclid, p);
      CHECK(direction_distance(r.v, q.v) <= 1e-8);
      CHECK(cat.classify(p).tag == IndeterminacyTag::NearIndS);
    }
  }
}

TEST_CASE("billiard_step: circle drift and multiplicities") {
  const PlaneCurve circle = unit_circle();
  PhasePoint p{{1.0, 0.0}, real_direction(2.0)};
  for (int k = 0; k < 100; ++k) {
    const ImageMultiset m = billiard_step(circle, kEuclid, p);
    REQUIRE(m.entries.size() == 1);
    REQUIRE_FALSE(m.any_flagged());
    p = m.entries[0].point;
  }
  CHECK(std::abs(circle.affine(p.x)) <= 1e-8);

  std::mt19937_64 rng(3);
  for (int d = 3; d <= 6; ++d) {
    const PlaneCurve c = fermat_hyperbola(d);
    for (int s = 0; s < 30; ++s) {
      const ImageMultiset m = billiard_step(c, kEuclid, sample_phase_point(c, rng));
      CHECK(m.total_multiplicity() == d - 1);
      CHECK_FALSE(m.any_flagged());
    }
  }

  const PlaneCurve c3 = fermat_hyperbola(3);
  const ImageMultiset flagged = billiard_step(c3, kEuclid, isotropic_tangency_points(3)[0]);
  REQUIRE(flagged.entries.size() == 1);
  CHECK(flagged.entries[0].flag == ErrorCode::IndeterminateReflection);
  CHECK(flagged.total_multiplicity() == 2);
}

TEST_CASE("classify") {
  for (int d = 2; d <= 6; ++d) {
    const IndeterminacyCatalog cat = IndeterminacyCatalog::fermat(d);
    const IndeterminacyClass r = cat.classify(isotropic_tangency_points(d)[0]);
    CHECK(r.tag == IndeterminacyTag::NearIndR);
    CHECK(r.distance == 0.0);

    std::mt19937_64 rng(static_cast<unsigned>(d));
    const PlaneCurve c = fermat_hyperbola(d);
    for (int s = 0; s < 20; ++s) CHECK(cat.classify(sample_phase_point(c, rng)).tag == IndeterminacyTag::Regular);

    // The two catalogs are well separated.
    double sep = 1.0;
    for (const CatalogPoint& a : cat.ind_s)
      for (const PhasePoint& b : cat.ind_r) sep = std::min(sep, phase_distance(b, a));
    CHECK(sep > 0.1);
  }
}

TEST_CASE("orbit_tree") {
  const PlaneCurve c3 = fermat_hyperbola(3);
  std::mt19937_64 rng(8);
  const PhasePoint p = sample_phase_point(c3, rng);
  CHECK(orbit_tree(c3, kEuclid, p, {}).nodes.size() == 1);

  OrbitOptions opt;
  opt.depth = 4;
  const OrbitTree t = orbit_tree(c3, kEuclid, p, opt);
  CHECK(t.nodes.size() <= 31);
  CHECK(t.nodes.size() > 1);
  for (std::size_t k = 1; k < t.nodes.size(); ++k) {
    const OrbitNode& n = t.nodes[k];
    CHECK(t.nodes[static_cast<std::size_t>(n.parent)].depth == n.depth - 1);
  }
  const Json j = t.to_json();
  CHECK(j["nodes"].size() == t.nodes.size());

  opt.depth = 20;
  opt.node_budget = 1000;
  CHECK_THROWS_AS(orbit_tree(c3, kEuclid, p, opt), Error);

  // Chord from angle 0 to angle 2π/3 on the circle closes up after three bounces.
  const PlaneCurve circle = unit_circle();
  const Complex target = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  const double angle = std::arg(target - 1.0);
  const PhasePoint start{{1.0, 0.0}, real_direction(angle)};
  OrbitOptions o3;
  o3.depth = 3;
  const OrbitTree tri = orbit_tree(circle, kEuclid, start, o3);
  REQUIRE(tri.nodes.size() == 4);
  CHECK(phase_distance(tri.nodes[3].point, start) < 1e-6);
  CHECK(phase_distance(tri.nodes[1].point, start) > 0.1);

  // An Ind r root yields a single flagged leaf of multiplicity d - 1.
  OrbitOptions o1;
  o1.depth = 2;
  const OrbitTree ir = orbit_tree(c3, kEuclid, isotropic_tangency_points(3)[1], o1);
  REQUIRE(ir.nodes.size() == 2);
  CHECK(ir.nodes[1].multiplicity == 2);
  CHECK(ir.nodes[1].flag == ErrorCode::IndeterminateReflection);
}

TEST_CASE("conjugacy_check") {
  for (int d = 2; d <= 5; ++d) {
    ConjugacyOptions opt;
    opt.samples = 100;
    opt.seed = static_cast<std::uint64_t>(d);
    const Report r = conjugacy_check(fermat_hyperbola(d), kEuclid, opt);
    CHECK_MESSAGE(r.passed(), r.to_json().dump());
  }

  ConjugacyOptions id;
  id.samples = 20;
  id.transform = identity2();
  const Report r = conjugacy_check(fermat_hyperbola(3), kEuclid, id);
  CHECK(r.find("max_discrepancy")->witness["value"].get<double>() == 0.0);

  // Both sides flag at Ind r.
  const PlaneCurve c = fermat_hyperbola(4);
  const Mat2 l = j_linear();
  const PlaneCurve jc = apply_J_to_curve(c);
  const QuadraticForm jt = kEuclid.pushforward(l);
  for (const PhasePoint& p : isotropic_tangency_points(4)) {
    const ImageMultiset a = billiard_step(c, kEuclid, p);
    const ImageMultiset b = billiard_step(jc, jt, {apply_linear(l, p.x), p.v});
    CHECK(a.any_flagged());
    CHECK(b.any_flagged());
  }
}

TEST_CASE("verify_geometry") {
  for (int d = 2; d <= 8; ++d) {
    const Report r = verify_geometry(d);
    CHECK_MESSAGE(r.passed(), r.to_json().dump());
    CHECK(r.find("xi_fixes_curve") != nullptr);
  }
  CHECK_THROWS_AS(verify_geometry(1), Error);
}

TEST_CASE("billiard_properties") {
  PropertySuiteOptions o;
  o.samples = 100;
  for (int d : {2, 3, 5}) {
    o.d = d;
    const Report r = billiard_properties(o);
    CHECK_MESSAGE(r.passed(), r.to_json().dump());
    CHECK(r.find("conjugacy_max_discrepancy") != nullptr);
  }
}

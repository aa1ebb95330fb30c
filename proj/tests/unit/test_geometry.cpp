#include <cmath>
#include <numbers>
#include <random>

#include "billiards/error.hpp"
#include "billiards/geometry/curve.hpp"
#include "billiards/geometry/curve_io.hpp"
#include "billiards/geometry/fermat.hpp"
#include "doctest.h"

using namespace billiards;

namespace {

PlaneCurve unit_circle() {
  return PlaneCurve(2, {{2, 0, 0, 1.0}, {0, 2, 0, 1.0}, {0, 0, 2, -1.0}});
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

// Coefficient of X0^(d-j) X1^j in (X0 - i X1)^d + (X0 + i X1)^d: C(d,j)((-i)^j + i^j).
double fermat_oracle(int d, int j) {
  const double re_ij[4] = {1.0, 0.0, -1.0, 0.0};
  return 2.0 * binomial(d, j) * re_ij[j % 4];
}

bool same_slope(const Slope& a, Complex t0, Complex t1, double tol) {
  return slope_distance(a, Slope::normalized(t0, t1)) <= tol;
}

}  // namespace

TEST_CASE("fermat_hyperbola: expansion against the binomial oracle") {
  const PlaneCurve c2 = fermat_hyperbola(2);
  CHECK(c2.coefficient(2, 0, 0) == Complex(2.0));
  CHECK(c2.coefficient(0, 2, 0) == Complex(-2.0));
  CHECK(c2.coefficient(0, 0, 2) == Complex(-1.0));
  CHECK(c2.monomials().size() == 3);

  const PlaneCurve c3 = fermat_hyperbola(3);
  CHECK(c3.coefficient(3, 0, 0) == Complex(2.0));
  CHECK(c3.coefficient(1, 2, 0) == Complex(-6.0));
  CHECK(c3.coefficient(0, 0, 3) == Complex(-1.0));
  CHECK(c3.monomials().size() == 3);

  for (int d = 2; d <= 10; ++d) {
    const PlaneCurve c = fermat_hyperbola(d);
    CHECK(c.is_real());
    for (int j = 0; j <= d; ++j) {
      CHECK(c.coefficient(d - j, j, 0).real() == doctest::Approx(fermat_oracle(d, j)));
      if (j % 2 == 1) CHECK(c.coefficient(d - j, j, 0) == Complex{});
    }
  }
  CHECK_THROWS_AS(fermat_hyperbola(1), Error);
}

TEST_CASE("J: isotropic points and the standard Fermat curve") {
  const ProjectivePoint a = apply_J({1.0, kI, 0.0});
  CHECK(projective_distance(a, {1.0, 0.0, 0.0}) < 1e-15);
  const ProjectivePoint b = apply_J({1.0, -kI, 0.0});
  CHECK(projective_distance(b, {0.0, 1.0, 0.0}) < 1e-15);

  for (int d = 2; d <= 8; ++d) {
    CHECK(apply_J_exact(fermat_form(d)) == standard_fermat_form(d));
    const PlaneCurve jc = apply_J_to_curve(fermat_hyperbola(d));
    CHECK(jc.monomials().size() == 3);
    CHECK(std::abs(jc.coefficient(d, 0, 0) - 1.0) < 1e-12);
    CHECK(std::abs(jc.coefficient(0, d, 0) - 1.0) < 1e-12);
    CHECK(std::abs(jc.coefficient(0, 0, d) + 1.0) < 1e-12);
  }
}

TEST_CASE("J maps sampled points of C onto the standard Fermat curve") {
  std::mt19937_64 rng(17);
  for (int d = 2; d <= 6; ++d) {
    const PlaneCurve c = fermat_hyperbola(d);
    const PlaneCurve std_c = to_curve(standard_fermat_form(d));
    for (int s = 0; s < 100; ++s) {
      const Vec2 x = c.sample_point(rng);
      const ProjectivePoint z = apply_J(ProjectivePoint::affine(x));
      CHECK(std::abs(std_c(z.coords())) <= 1e-10 * std_c.magnitude(z.coords()));
    }
  }
}

TEST_CASE("tangent_slope") {
  const PlaneCurve circle = unit_circle();
  CHECK(same_slope(tangent_slope(circle, ProjectivePoint::affine(1.0, 0.0)), 0.0, 1.0, 1e-15));
  CHECK(same_slope(tangent_slope(circle, ProjectivePoint::affine(0.0, 1.0)), 1.0, 0.0, 1e-15));
  CHECK_THROWS_AS(tangent_slope(circle, ProjectivePoint::affine(0.5, 0.0)), Error);

  // x0 x1 = 0 is singular at the origin.
  const PlaneCurve cross(2, {{1, 1, 0, 1.0}});
  try {
    tangent_slope(cross, ProjectivePoint::affine(0.0, 0.0));
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SingularPoint);
  }

  for (int d = 2; d <= 8; ++d) {
    const PlaneCurve c = fermat_hyperbola(d);
    for (int k = 0; k < d; ++k) {
      const Complex z = std::polar(1.0, 2.0 * std::numbers::pi * k / d);
      CHECK(same_slope(tangent_slope(c, ProjectivePoint::affine(z / 2.0, -kI * z / 2.0)), 1.0, kI, 1e-12));
      CHECK(same_slope(tangent_slope(c, ProjectivePoint::affine(z / 2.0, kI * z / 2.0)), 1.0, -kI, 1e-12));
    }
  }
}

TEST_CASE("points_at_infinity") {
  const auto p2 = points_at_infinity(fermat_hyperbola(2));
  REQUIRE(p2.size() == 2);
  auto has = [](const std::vector<ProjectivePoint>& v, ProjectivePoint p) {
    for (const auto& q : v)
      if (projective_distance(p, q) < 1e-12) return true;
    return false;
  };
  CHECK(has(p2, {1.0, 1.0, 0.0}));
  CHECK(has(p2, {1.0, -1.0, 0.0}));

  for (int d = 2; d <= 8; ++d) {
    const PlaneCurve c = fermat_hyperbola(d);
    const auto pts = points_at_infinity(c);
    CHECK(pts.size() == static_cast<std::size_t>(d));
    CHECK_FALSE(has(pts, {1.0, kI, 0.0}));
    CHECK_FALSE(has(pts, {1.0, -kI, 0.0}));
    for (const auto& x : pts) {
      CHECK(std::abs(c(x.coords())) < 1e-12);
      CHECK(same_slope(tangent_slope(c, x), x[0], x[1], 1e-12));
    }
  }

  // x1^2 x2 - x0^3: the binary form x0^3 has a triple root.
  const PlaneCurve cusp(3, {{0, 2, 1, 1.0}, {3, 0, 0, -1.0}});
  CHECK_THROWS_AS(points_at_infinity(cusp), Error);
}

TEST_CASE("isotropic_tangency_points and tangency order") {
  const QuadraticForm theta = QuadraticForm::euclidean();
  for (int d = 2; d <= 8; ++d) {
    const PlaneCurve c = fermat_hyperbola(d);
    const auto pts = isotropic_tangency_points(d);
    CHECK(pts.size() == static_cast<std::size_t>(2 * d));
    for (const PhasePoint& p : pts) {
      CHECK(std::abs(c.affine(p.x)) <= 1e-10);
      const Slope t = tangent_slope(c, ProjectivePoint::affine(p.x));
      CHECK(slope_distance(t, p.v.slope(theta)) < 1e-12);
      CHECK(tangency_order(c, p.x) == d);
    }
  }
  CHECK(tangency_order(unit_circle(), {1.0, 0.0}) == 2);

  std::mt19937_64 rng(4);
  const PlaneCurve c3 = fermat_hyperbola(3);
  for (int s = 0; s < 20; ++s) CHECK(tangency_order(c3, c3.sample_point(rng)) == 2);
}

TEST_CASE("symmetry_check") {
  for (int d = 2; d <= 8; ++d) {
    const Report r = symmetry_check(d);
    INFO(r.to_json().dump());
    CHECK(r.passed());
    CHECK(r.find("transitive_on_catalog")->witness["orbit_size"] == 2 * d);
  }
}

TEST_CASE("cyclotomic substitution is not vacuous") {
  const int d = 5;
  const CyclotomicElement x = CyclotomicElement::power_of_x(d, 1), xinv = CyclotomicElement::power_of_x(d, -1);
  const CyclotomicElement c = CyclotomicElement(GaussianRational(Rational(1, 2))) * (x + xinv);
  const CyclotomicElement s = CyclotomicElement(GaussianRational(0, Rational(-1, 2))) * (x - xinv);
  TernaryForm<CyclotomicElement>::Matrix3 xi{{{c, -s, 0}, {s, c, 0}, {0, 0, 1}}};
  const auto f = TernaryForm<CyclotomicElement>::monomial({d, 0, 0}, 1);
  CHECK_FALSE(f.substitute(xi) == f);
  // x evaluates to exp(2 pi i / d) and the ring relation x^d = 1 holds.
  CHECK(std::abs(x.to_complex() - std::polar(1.0, 2.0 * std::numbers::pi / d)) < 1e-15);
  CyclotomicElement p = 1;
  for (int k = 0; k < d; ++k) p *= x;
  CHECK(p == CyclotomicElement(1));
  CHECK(std::abs(c.to_complex() - std::cos(2.0 * std::numbers::pi / d)) < 1e-15);
}

TEST_CASE("smoothness certificate for Fermat hyperbolas") {
  for (int d = 2; d <= 12; ++d) {
    const auto cert = certify_smooth(fermat_hyperbola(d), 100 + d);
    CHECK(cert.samples >= 10 * d * d);
    CHECK(cert.passed);
  }
}

TEST_CASE("direction encoding round trip") {
  const QuadraticForm theta = QuadraticForm::euclidean();
  std::mt19937_64 rng(21);
  std::normal_distribution<double> g;
  for (int s = 0; s < 1000; ++s) {
    const Complex y{g(rng), g(rng)};
    const Vec2 q = Direction(RiemannPoint(y)).vector(theta);
    // Independent formulas q0 = (y + 1/y)/2, q1 = (y - 1/y)/(2i).
    CHECK(std::abs(q[0] - (y + 1.0 / y) / 2.0) <= 1e-12 * std::max(1.0, std::abs(y) + 1.0 / std::abs(y)));
    CHECK(std::abs(q[1] - (y - 1.0 / y) / (2.0 * kI)) <= 1e-12 * std::max(1.0, std::abs(y) + 1.0 / std::abs(y)));
    CHECK(std::abs(theta.value(q) - 1.0) <= 1e-12 * (1.0 + std::norm(y) + 1.0 / std::norm(y)));
    const Direction back = Direction::from_vector(theta, q);
    CHECK(std::abs(back.parameter().value() - y) <= 1e-12 * std::max(1.0, std::abs(y)));
  }
  // y = 0 and y = ∞ span the isotropic slopes [1 : i] and [1 : -i].
  CHECK(slope_distance(Direction(RiemannPoint(0.0)).slope(theta), Slope::normalized(1.0, kI)) < 1e-15);
  CHECK(slope_distance(Direction(RiemannPoint::infinity()).slope(theta), Slope::normalized(1.0, -kI)) < 1e-15);
}

TEST_CASE("quadratic form pushforward under J") {
  const QuadraticForm theta = QuadraticForm::euclidean();
  const QuadraticForm pushed = theta.pushforward(j_linear());
  // y0 y1: matrix [[0, 1/2], [1/2, 0]].
  CHECK(std::abs(pushed.matrix()[0][0]) < 1e-15);
  CHECK(std::abs(pushed.matrix()[0][1] - 0.5) < 1e-15);
  CHECK(std::abs(pushed.matrix()[1][1]) < 1e-15);
  const QuadraticForm solved = QuadraticForm::from_matrix(pushed.matrix());
  CHECK(std::abs(2.0 * solved.bilinear(solved.frame_a(), solved.frame_b()) - 1.0) < 1e-14);
  CHECK(std::abs(solved.value(solved.frame_a())) < 1e-14);
}

TEST_CASE("curve JSON round trip") {
  const PlaneCurve c = fermat_hyperbola(4);
  const PlaneCurve back = curve_from_json(Json::parse(curve_to_json(c).dump()));
  CHECK(back.degree() == 4);
  CHECK(back.monomials().size() == c.monomials().size());
  for (const Monomial& m : c.monomials()) CHECK(back.coefficient(m.i, m.j, m.k) == m.c);
  CHECK_THROWS_AS(curve_from_json(Json::parse(R"({"degree": 2})")), Error);
  CHECK_THROWS_AS(curve_from_json(Json::parse(R"({"degree": 2, "monomials": [{"i":1,"j":0,"k":0,"re":1}]})")),
                  Error);
}

#include <cmath>
#include <numbers>

#include "billiards/error.hpp"
#include "billiards/ivrii/real_billiard.hpp"
#include "billiards/ivrii/reflectivity.hpp"
#include "doctest.h"

using namespace billiards;

namespace {

constexpr double kPi = std::numbers::pi;

double dist(const RealVec& a, const RealVec& b) { return std::hypot(a[0] - b[0], a[1] - b[1]); }

}  // namespace

TEST_CASE("tables") {
  const RealTable circle = ellipse_table(1.0, 1.0);
  CHECK(circle.interior_sign == -1);
  CHECK(std::abs(circle.diameter - 2.0 * std::sqrt(2.0) * std::cos(kPi / 32)) < 1e-12);
  CHECK(dist(boundary_point(circle, 0.3), {std::cos(0.3), std::sin(0.3)}) < 1e-14);
  const RealVec n = inward_normal(circle, {1.0, 0.0});
  CHECK(dist(n, {-1.0, 0.0}) < 1e-15);

  // A hyperbola has no bounded component around the origin.
  const PlaneCurve hyperbola(2, {{2, 0, 0, 1.0}, {0, 2, 0, -1.0}, {0, 0, 2, -1.0}});
  CHECK_THROWS_AS(make_table(hyperbola, {0.0, 0.0}), Error);
  const PlaneCurve complex_curve(2, {{2, 0, 0, Complex(1.0, 1.0)}, {0, 2, 0, 1.0}, {0, 0, 2, -1.0}});
  CHECK_THROWS_AS(make_table(complex_curve, {0.0, 0.0}), Error);
  CHECK_THROWS_AS(make_table(circle.curve, {1.0, 0.0}), Error);
}

TEST_CASE("real_billiard_step on the unit circle") {
  const RealTable circle = ellipse_table(1.0, 1.0);
  const RealBilliardState s = real_billiard_step(circle, {{1.0, 0.0}, {-1.0, 0.0}});
  CHECK(dist(s.x, {-1.0, 0.0}) < 1e-14);
  CHECK(dist(s.v, {1.0, 0.0}) < 1e-14);

  // Chord at angle phi from the tangent advances the polar angle by 2 phi.
  for (double phi : {0.2, 0.9, 1.5, 2.7}) {
    const RealBilliardState a = state_from_angles(circle, 0.4, phi);
    const RealBilliardState b = real_billiard_step(circle, a);
    CHECK(dist(b.x, {std::cos(0.4 + 2 * phi), std::sin(0.4 + 2 * phi)}) < 1e-12);
    const RealVec nb = inward_normal(circle, b.x);
    // The outgoing angle from the tangent equals the incoming one.
    const RealVec tb = {nb[1], -nb[0]};
    const double out_angle = std::atan2(b.v[0] * nb[0] + b.v[1] * nb[1], b.v[0] * tb[0] + b.v[1] * tb[1]);
    CHECK(std::abs(out_angle - phi) < 1e-10);
  }
  CHECK_THROWS_AS(real_billiard_step(circle, {{0.5, 0.0}, {1.0, 0.0}}), Error);
}

TEST_CASE("grazing and escaping rays") {
  const RealTable circle = ellipse_table(1.0, 1.0);
  try {
    real_billiard_step(circle, {{1.0, 0.0}, {0.0, 1.0}});
    FAIL("expected EscapedDomain");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EscapedDomain);
  }

  // Cassini oval (x^2 + y^2)^2 - 2 (x^2 - y^2) = 0.2: a peanut whose top
  // dimple (0, yd), yd^2 = sqrt(1.2) - 1, is touched from inside by the line
  // y = yd, which meets the boundary again at x^2 = 2 - 2 yd^2.
  const PlaneCurve cassini(4, {{4, 0, 0, 1.0}, {2, 2, 0, 2.0}, {0, 4, 0, 1.0},
                               {2, 0, 2, -2.0}, {0, 2, 2, 2.0}, {0, 0, 4, -0.2}});
  const RealTable peanut = make_table(cassini, {1.0, 0.0});
  const double y2 = std::sqrt(1.2) - 1.0;
  const RealBilliardState s{{-std::sqrt(2.0 - 2.0 * y2), std::sqrt(y2)}, {1.0, 0.0}};
  try {
    real_billiard_step(peanut, s);
    FAIL("expected TangentialHit");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TangentialHit);
  }
  const TrajectoryRecord rec = simulate(peanut, s, 3);
  CHECK(rec.flag == ErrorCode::TangentialHit);
  CHECK(rec.states.size() == 1);
}

TEST_CASE("ellipse trajectories conserve the caustic parameter") {
  const RealTable ell = ellipse_table(2.0, 1.0);
  PropertyOptions o;
  o.ellipse = std::array<double, 2>{2.0, 1.0};
  const Report r = real_property_suite(ell, o);
  CHECK_MESSAGE(r.passed(), r.to_json().dump());

  // A trajectory along the major axis bounces back and forth with parameter b^2 - 0 = 1.
  const RealBilliardState axis{{2.0, 0.0}, {-1.0, 0.0}};
  CHECK(std::abs(ellipse_caustic_parameter(2.0, 1.0, axis) - 1.0) < 1e-15);
  const TrajectoryRecord rec = simulate(ell, axis, 4);
  CHECK_FALSE(rec.flag);
  CHECK(std::abs(rec.total_length - 16.0) < 1e-9);
  CHECK(dist(rec.states.back().x, {2.0, 0.0}) < 1e-9);
}

TEST_CASE("chord_valid") {
  const RealTable circle = ellipse_table(1.0, 1.0);
  CHECK(chord_valid(circle, {1.0, 0.0}, {-1.0, 0.0}));
  CHECK_FALSE(chord_valid(circle, {1.0, 0.0}, {3.0, 0.0}));
}

TEST_CASE("near_periodic_scan on the circle scales linearly") {
  const RealTable circle = ellipse_table(1.0, 1.0);
  const NearPeriodicResult r = near_periodic_scan(circle, 2, {16, 4096}, {0.01, 0.02, 0.04, 0.08, 0.16});
  CHECK(r.flagged == 0);
  CHECK(r.exponent >= 0.8);
  CHECK(r.exponent <= 1.2);
  for (std::size_t i = 1; i < r.measure.size(); ++i) CHECK(r.measure[i] >= r.measure[i - 1]);
  CHECK(r.to_csv().rfind("theta,phi,distance,flag\n", 0) == 0);
  CHECK(r.to_json()["measures"].size() == 5);
  CHECK_THROWS_AS(near_periodic_scan(circle, 0, {}, {0.1}), Error);
}

TEST_CASE("near_periodic_scan on the ellipse and the quartic") {
  const NearPeriodicResult e = near_periodic_scan(ellipse_table(2.0, 1.0), 2, {32, 2048}, {0.01, 0.02, 0.04, 0.08});
  CHECK(e.exponent >= 1.0 - 0.2);
  const RealTable q = transcendental_quartic_table();
  CHECK(q.interior_sign == -1);
  const NearPeriodicResult qr = near_periodic_scan(q, 2, {32, 512}, {0.02, 0.04, 0.08, 0.16});
  CHECK(qr.exponent >= 0.8);
}

TEST_CASE("render_svg") {
  const RealTable ell = ellipse_table(2.0, 1.0);
  const std::string svg = render_svg(ell, {simulate(ell, state_from_angles(ell, 0.3, 1.1), 10)}, 90);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("<polygon") != std::string::npos);
  CHECK(svg.find("<polyline") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
}

TEST_CASE("circle positive control") {
  for (int period = 2; period <= 6; ++period) {
    const Report r = circle_positive_control(period);
    CHECK_MESSAGE(r.passed(), r.to_json().dump());
  }
  // A period-5 star (k = 2) also returns at 5.
  const std::vector<ReturnCount> star = scan_returns(PlaneCurve(2, {{2, 0, 0, 1.0}, {0, 2, 0, 1.0}, {0, 0, 2, -1.0}}),
                                                     QuadraticForm::euclidean(), {circle_rotation_start(5, 2)}, 5, 1e-6);
  CHECK(star[4].returns == 1);
  CHECK(star[1].returns == 0);
}

TEST_CASE("reflective_scan_complex") {
  ReflectiveScanOptions o;
  o.d = 3;
  o.n = 3;
  o.samples = 100;
  const Report r3 = reflective_scan_complex(o);
  CHECK_MESSAGE(r3.passed(), r3.to_json().dump());
  CHECK(r3.notes["periods"].size() == 3);
  o.d = 4;
  o.n = 3;
  o.samples = 50;
  CHECK(reflective_scan_complex(o).passed());

  // Soundness: a return is never reported when the closest node is farther than the tolerance.
  for (const Json& p : r3.notes["periods"]) CHECK(p["min_distance"].get<double>() > o.tol);
}

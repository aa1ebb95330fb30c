#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "billiards/error.hpp"
#include "billiards/geometry/curve.hpp"
#include "billiards/report.hpp"

namespace billiards {

using RealVec = std::array<double, 2>;

/// A bounded component of a real curve {f = 0}, given by an interior seed.
struct RealTable {
  PlaneCurve curve;
  RealVec seed{};
  /// Sign of f inside the component.
  int interior_sign = 1;
  /// Diameter of the bounding box of the boundary hits seen from the seed.
  double diameter = 0.0;
  /// Roots of the ray polynomial at t <= t_min are the current bounce point.
  double t_min = 0.0;
};

/// Checks real coefficients, f(seed) != 0 and boundedness by casting 32 rays
/// from the seed. Throws InvalidArgument or EscapedDomain.
RealTable make_table(const PlaneCurve& curve, const RealVec& seed);

/// The curve x^2/a^2 + y^2/b^2 = 1 seeded at the origin.
RealTable ellipse_table(double a, double b);

struct RealBilliardState {
  RealVec x{};
  /// Unit vector pointing into the table.
  RealVec v{};
};

/// First boundary point on the ray from the seed at the given angle.
RealVec boundary_point(const RealTable& table, double angle);

/// Unit normal at a boundary point pointing into the table.
RealVec inward_normal(const RealTable& table, const RealVec& x);

/// State at boundary_point(theta) leaving at angle phi in (0, pi) measured
/// from the tangent, counterclockwise towards the inward normal.
RealBilliardState state_from_angles(const RealTable& table, double theta, double phi);

/// Moves to the nearest boundary hit along x + t v (t > t_min) and reflects
/// across the tangent. Throws NotOnCurve when |f(s.x)| exceeds tol relative to
/// its scale, EscapedDomain when there is no hit and TangentialHit when the
/// hit is a double root (grazing).
RealBilliardState real_billiard_step(const RealTable& table, const RealBilliardState& s, double tol = 1e-9);

struct TrajectoryRecord {
  std::vector<RealBilliardState> states;
  std::vector<double> chord_lengths;
  double total_length = 0.0;
  /// Set if the run stopped early.
  std::optional<ErrorCode> flag;
};

TrajectoryRecord simulate(const RealTable& table, const RealBilliardState& start, int bounces, double tol = 1e-9);

/// f keeps the interior sign at 64 interior points of the segment a-b.
bool chord_valid(const RealTable& table, const RealVec& a, const RealVec& b);

/// max(|dx|, diameter * |dv|) / diameter.
double return_distance(const RealTable& table, const RealBilliardState& a, const RealBilliardState& b);

/// a^2 v1^2 + b^2 v0^2 - (x0 v1 - x1 v0)^2: the parameter of the confocal
/// conic tangent to the line of the state. Constant along ellipse trajectories.
double ellipse_caustic_parameter(double a, double b, const RealBilliardState& s);

/// Checks the reflection law, unit speed, chord validity and (for an ellipse)
/// caustic drift over a trajectory.
struct PropertyOptions {
  int bounces = 100;
  int trajectories = 20;
  std::uint64_t seed = 1;
  double law_tol = 1e-10;
  double norm_tol = 1e-12;
  double caustic_tol = 1e-6;
  /// Semi-axes when the table is the ellipse x^2/a^2 + y^2/b^2 = 1.
  std::optional<std::array<double, 2>> ellipse;
};

Report real_property_suite(const RealTable& table, const PropertyOptions& options);

struct GridSpec {
  int theta_cells = 64;
  int angle_cells = 4096;
};

struct CellRecord {
  double theta = 0.0;
  double phi = 0.0;
  /// +inf when flagged.
  double distance = 0.0;
  std::optional<ErrorCode> flag;
};

struct NearPeriodicResult {
  int n = 0;
  GridSpec grid;
  std::vector<CellRecord> cells;
  std::vector<double> eps;
  /// Phase-space area (2 pi x pi) times the fraction of cells below each eps.
  std::vector<double> measure;
  /// Least-squares slope of log measure against log eps over nonzero measures.
  double exponent = 0.0;
  int flagged = 0;

  std::string to_csv() const;
  Json to_json() const;
};

/// Runs n bounces from every cell center and records the return distance.
NearPeriodicResult near_periodic_scan(const RealTable& table, int n, const GridSpec& grid,
                                      const std::vector<double>& eps);

/// The boundary (dense angular sweep from the seed) with trajectories as polylines.
std::string render_svg(const RealTable& table, const std::vector<TrajectoryRecord>& trajectories,
                       int boundary_samples = 720);

/// The quartic with coefficients e^sqrt(k), whose bounded component has a
/// seed near (12.25, -23.9).
RealTable transcendental_quartic_table();

}  // namespace billiards

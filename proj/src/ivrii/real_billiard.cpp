#include "billiards/ivrii/real_billiard.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <tuple>

#include "billiards/util/parallel.hpp"

namespace billiards {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRealRootTol = 1e-7;

double dot(const RealVec& a, const RealVec& b) { return a[0] * b[0] + a[1] * b[1]; }
double norm(const RealVec& a) { return std::hypot(a[0], a[1]); }
RealVec sub(const RealVec& a, const RealVec& b) { return {a[0] - b[0], a[1] - b[1]}; }
RealVec axpy(const RealVec& x, double t, const RealVec& v) { return {x[0] + t * v[0], x[1] + t * v[1]}; }
Vec2 to_complex(const RealVec& a) { return {a[0], a[1]}; }

double f_real(const RealTable& table, const RealVec& x) { return table.curve.affine(to_complex(x)).real(); }

struct Hit {
  double t = kInf;
  int multiplicity = 0;
};

// Smallest real root of f(x + t v) above t_low.
Hit first_hit(const PlaneCurve& curve, const RealVec& x, const RealVec& v, double t_low) {
  const ComplexPolynomial p = curve.restrict_to_line(to_complex(x), to_complex(v));
  Hit best;
  if (p.degree() < 1) return best;
  for (const Root& r : find_roots(p)) {
    const double t = r.value.real();
    if (std::abs(r.value.imag()) > kRealRootTol * std::max(1.0, std::abs(t))) continue;
    if (t > t_low && t < best.t) best = {t, r.multiplicity};
  }
  if (std::isfinite(best.t) && best.multiplicity == 1) {
    const ComplexPolynomial dp = p.derivative();
    for (int it = 0; it < 3; ++it) {
      const Complex d = dp(best.t);
      if (d == Complex{}) break;
      best.t -= (p(best.t) / d).real();
    }
  }
  return best;
}

}  // namespace

RealTable make_table(const PlaneCurve& curve, const RealVec& seed) {
  if (!curve.is_real()) throw Error(ErrorCode::InvalidArgument, "table curve must have real coefficients");
  RealTable table;
  table.curve = curve;
  table.seed = seed;
  const double f0 = f_real(table, seed);
  if (f0 == 0.0) throw Error(ErrorCode::InvalidArgument, "seed lies on the curve");
  table.interior_sign = f0 > 0 ? 1 : -1;
  double lo0 = kInf, hi0 = -kInf, lo1 = kInf, hi1 = -kInf;
  for (int k = 0; k < 32; ++k) {
    const RealVec x = boundary_point(table, 2.0 * std::numbers::pi * (k + 0.5) / 32.0);
    lo0 = std::min(lo0, x[0]);
    hi0 = std::max(hi0, x[0]);
    lo1 = std::min(lo1, x[1]);
    hi1 = std::max(hi1, x[1]);
  }
  table.diameter = std::hypot(hi0 - lo0, hi1 - lo1);
  table.t_min = 1e-9 * table.diameter;
  return table;
}

RealTable ellipse_table(double a, double b) {
  if (!(a > 0 && b > 0)) throw Error(ErrorCode::InvalidArgument, "semi-axes must be positive");
  const PlaneCurve c(2, {{2, 0, 0, 1.0 / (a * a)}, {0, 2, 0, 1.0 / (b * b)}, {0, 0, 2, -1.0}});
  return make_table(c, {0.0, 0.0});
}

RealVec boundary_point(const RealTable& table, double angle) {
  const RealVec u = {std::cos(angle), std::sin(angle)};
  const Hit h = first_hit(table.curve, table.seed, u, 0.0);
  if (!std::isfinite(h.t)) throw Error(ErrorCode::EscapedDomain, "ray from the seed does not meet the curve");
  return axpy(table.seed, h.t, u);
}

RealVec inward_normal(const RealTable& table, const RealVec& x) {
  const Vec2 g = table.curve.affine_gradient(to_complex(x));
  const RealVec n = {g[0].real(), g[1].real()};
  const double len = norm(n);
  if (len == 0.0) throw Error(ErrorCode::SingularPoint, "gradient vanishes on the boundary");
  const double s = table.interior_sign / len;
  return {s * n[0], s * n[1]};
}

RealBilliardState state_from_angles(const RealTable& table, double theta, double phi) {
  const RealVec x = boundary_point(table, theta);
  const RealVec n = inward_normal(table, x);
  const RealVec t = {n[1], -n[0]};
  return {x, {std::cos(phi) * t[0] + std::sin(phi) * n[0], std::cos(phi) * t[1] + std::sin(phi) * n[1]}};
}

RealBilliardState real_billiard_step(const RealTable& table, const RealBilliardState& s, double tol) {
  if (!table.curve.contains(to_complex(s.x), tol)) throw Error(ErrorCode::NotOnCurve, "state is off the boundary");
  const Hit h = first_hit(table.curve, s.x, s.v, table.t_min);
  if (!std::isfinite(h.t)) throw Error(ErrorCode::EscapedDomain, "no boundary hit ahead");
  if (h.multiplicity % 2 == 0) throw Error(ErrorCode::TangentialHit, "grazing hit");
  const RealVec x = axpy(s.x, h.t, s.v);
  const RealVec n = inward_normal(table, x);
  const double vn = dot(s.v, n);
  RealVec v = axpy(s.v, -2.0 * vn, n);
  const double len = norm(v);
  v = {v[0] / len, v[1] / len};
  return {x, v};
}

TrajectoryRecord simulate(const RealTable& table, const RealBilliardState& start, int bounces, double tol) {
  TrajectoryRecord rec;
  rec.states.push_back(start);
  try {
    for (int k = 0; k < bounces; ++k) {
      const RealBilliardState next = real_billiard_step(table, rec.states.back(), tol);
      const double len = norm(sub(next.x, rec.states.back().x));
      rec.chord_lengths.push_back(len);
      rec.total_length += len;
      rec.states.push_back(next);
    }
  } catch (const Error& e) {
    rec.flag = e.code();
  }
  return rec;
}

bool chord_valid(const RealTable& table, const RealVec& a, const RealVec& b) {
  const RealVec d = sub(b, a);
  for (int k = 1; k <= 64; ++k) {
    const RealVec p = axpy(a, k / 65.0, d);
    const double f = f_real(table, p);
    if (f * table.interior_sign < 0 && std::abs(f) > 1e-9 * table.curve.affine_magnitude(to_complex(p))) return false;
  }
  return true;
}

double return_distance(const RealTable& table, const RealBilliardState& a, const RealBilliardState& b) {
  return std::max(norm(sub(a.x, b.x)), table.diameter * norm(sub(a.v, b.v))) / table.diameter;
}

double ellipse_caustic_parameter(double a, double b, const RealBilliardState& s) {
  const double l = s.x[0] * s.v[1] - s.x[1] * s.v[0];
  return a * a * s.v[1] * s.v[1] + b * b * s.v[0] * s.v[0] - l * l;
}

Report real_property_suite(const RealTable& table, const PropertyOptions& options) {
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> theta(0.0, 2.0 * std::numbers::pi), phi(0.05, std::numbers::pi - 0.05);
  double law = 0.0, speed = 0.0, drift = 0.0;
  int invalid_chords = 0, flagged = 0, bounces = 0;
  for (int k = 0; k < options.trajectories; ++k) {
    const TrajectoryRecord rec = simulate(table, state_from_angles(table, theta(rng), phi(rng)), options.bounces);
    if (rec.flag) ++flagged;
    const double c0 = options.ellipse ? ellipse_caustic_parameter((*options.ellipse)[0], (*options.ellipse)[1], rec.states[0]) : 0.0;
    for (std::size_t i = 1; i < rec.states.size(); ++i) {
      const RealBilliardState& in = rec.states[i - 1];
      const RealBilliardState& out = rec.states[i];
      const RealVec n = inward_normal(table, out.x);
      const RealVec t = {n[1], -n[0]};
      law = std::max({law, std::abs(dot(out.v, n) + dot(in.v, n)), std::abs(dot(out.v, t) - dot(in.v, t))});
      speed = std::max(speed, std::abs(norm(out.v) - 1.0));
      if (!chord_valid(table, in.x, out.x)) ++invalid_chords;
      if (options.ellipse)
        drift = std::max(drift, std::abs(ellipse_caustic_parameter((*options.ellipse)[0], (*options.ellipse)[1], out) - c0));
      ++bounces;
    }
  }
  Report r;
  r.title = "real billiard properties";
  r.add("reflection_law", law <= options.law_tol, {{"max_error", law}, {"tol", options.law_tol}});
  r.add("unit_speed", speed <= options.norm_tol, {{"max_error", speed}, {"tol", options.norm_tol}});
  r.add("chord_validity", invalid_chords == 0, {{"invalid", invalid_chords}});
  r.add("complete_trajectories", flagged == 0, {{"flagged", flagged}});
  if (options.ellipse) r.add("caustic_drift", drift <= options.caustic_tol, {{"max_drift", drift}, {"tol", options.caustic_tol}});
  r.notes = {{"trajectories", options.trajectories}, {"bounces", bounces}, {"seed", options.seed}};
  return r;
}

NearPeriodicResult near_periodic_scan(const RealTable& table, int n, const GridSpec& grid, const std::vector<double>& eps) {
  if (n < 1 || grid.theta_cells < 1 || grid.angle_cells < 1)
    throw Error(ErrorCode::InvalidArgument, "n and grid sizes must be >= 1");
  NearPeriodicResult res;
  res.n = n;
  res.grid = grid;
  res.eps = eps;
  const std::size_t total = static_cast<std::size_t>(grid.theta_cells) * static_cast<std::size_t>(grid.angle_cells);
  res.cells.resize(total);
  parallel_for(total, [&](std::size_t idx) {
    CellRecord& cell = res.cells[idx];
    const auto i = static_cast<int>(idx / static_cast<std::size_t>(grid.angle_cells));
    const auto j = static_cast<int>(idx % static_cast<std::size_t>(grid.angle_cells));
    cell.theta = 2.0 * std::numbers::pi * (i + 0.5) / grid.theta_cells;
    cell.phi = std::numbers::pi * (j + 0.5) / grid.angle_cells;
    try {
      const RealBilliardState start = state_from_angles(table, cell.theta, cell.phi);
      const TrajectoryRecord rec = simulate(table, start, n);
      if (rec.flag) {
        cell.flag = rec.flag;
        cell.distance = kInf;
      } else {
        cell.distance = return_distance(table, start, rec.states.back());
      }
    } catch (const Error& e) {
      cell.flag = e.code();
      cell.distance = kInf;
    }
  });
  for (const CellRecord& c : res.cells)
    if (c.flag) ++res.flagged;

  const double area = 2.0 * std::numbers::pi * std::numbers::pi;
  std::vector<double> lx, ly;
  for (double e : eps) {
    const auto count = std::count_if(res.cells.begin(), res.cells.end(), [&](const CellRecord& c) { return c.distance < e; });
    const double m = area * static_cast<double>(count) / static_cast<double>(total);
    res.measure.push_back(m);
    if (m > 0) {
      lx.push_back(std::log(e));
      ly.push_back(std::log(m));
    }
  }
  if (lx.size() >= 2) {
    const double k = static_cast<double>(lx.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      sx += lx[i];
      sy += ly[i];
      sxx += lx[i] * lx[i];
      sxy += lx[i] * ly[i];
    }
    res.exponent = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  } else {
    res.exponent = std::numeric_limits<double>::quiet_NaN();
  }
  return res;
}

std::string NearPeriodicResult::to_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "theta,phi,distance,flag\n";
  for (const CellRecord& c : cells) {
    os << c.theta << ',' << c.phi << ',';
    if (std::isfinite(c.distance)) os << c.distance;
    else os << "inf";
    os << ',' << (c.flag ? std::string(to_string(*c.flag)) : std::string()) << '\n';
  }
  return os.str();
}

Json NearPeriodicResult::to_json() const {
  Json m = Json::array();
  for (std::size_t i = 0; i < eps.size(); ++i) m.push_back({{"eps", eps[i]}, {"measure", measure[i]}});
  return {{"n", n},
          {"theta_cells", grid.theta_cells},
          {"angle_cells", grid.angle_cells},
          {"flagged", flagged},
          {"measures", std::move(m)},
          {"exponent", std::isfinite(exponent) ? Json(exponent) : Json(nullptr)}};
}

std::string render_svg(const RealTable& table, const std::vector<TrajectoryRecord>& trajectories, int boundary_samples) {
  std::vector<RealVec> boundary;
  for (int k = 0; k < boundary_samples; ++k) {
    try {
      boundary.push_back(boundary_point(table, 2.0 * std::numbers::pi * k / boundary_samples));
    } catch (const Error&) {
    }
  }
  double lo0 = kInf, hi0 = -kInf, lo1 = kInf, hi1 = -kInf;
  for (const RealVec& p : boundary) {
    lo0 = std::min(lo0, p[0]);
    hi0 = std::max(hi0, p[0]);
    lo1 = std::min(lo1, p[1]);
    hi1 = std::max(hi1, p[1]);
  }
  const double w = hi0 - lo0, h = hi1 - lo1, pad = 0.05 * std::max(w, h);
  std::ostringstream os;
  os.precision(9);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << lo0 - pad << ' ' << -hi1 - pad << ' ' << w + 2 * pad
     << ' ' << h + 2 * pad << "\" width=\"800\" height=\"" << static_cast<int>(800 * (h + 2 * pad) / (w + 2 * pad))
     << "\">\n";
  const double stroke = 0.003 * std::max(w, h);
  auto polyline = [&](const std::vector<RealVec>& pts, const char* color, bool closed) {
    os << (closed ? "<polygon" : "<polyline") << " fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << stroke
       << "\" points=\"";
    for (const RealVec& p : pts) os << p[0] << ',' << -p[1] << ' ';
    os << "\"/>\n";
  };
  polyline(boundary, "black", true);
  const char* colors[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
  for (std::size_t i = 0; i < trajectories.size(); ++i) {
    std::vector<RealVec> pts;
    for (const RealBilliardState& s : trajectories[i].states) pts.push_back(s.x);
    polyline(pts, colors[i % 6], false);
  }
  os << "</svg>\n";
  return os.str();
}

RealTable transcendental_quartic_table() {
  auto e = [](double k) { return std::exp(std::sqrt(k)); };
  // Exponents (i, j) of x^i y^j with their coefficients; X2 fills degree 4.
  const std::vector<std::tuple<int, int, double>> terms = {
      {4, 0, e(2)},  {3, 1, 0.3 * e(3)}, {2, 2, e(5)},  {1, 3, e(6)},  {0, 4, 0.3 * e(7)},
      {3, 0, e(10)}, {2, 1, e(11)},      {1, 2, e(13)}, {0, 3, e(14)}, {2, 0, e(15)},
      {1, 1, e(17)}, {0, 2, e(19)},      {1, 0, e(21)}, {0, 1, 0.3 * e(22)}, {0, 0, 0.3 * e(23)}};
  std::vector<Monomial> mono;
  for (const auto& [i, j, c] : terms) mono.push_back({i, j, 4 - i - j, c});
  return make_table(PlaneCurve(4, std::move(mono)), {12.25, -23.9});
}

}  // namespace billiards

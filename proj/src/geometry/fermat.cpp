#include "billiards/geometry/fermat.hpp"

#include <algorithm>
#include <deque>
#include <numbers>

#include "billiards/error.hpp"

namespace billiards {

namespace {

using GR = GaussianRational;
using CE = CyclotomicElement;

ExactForm power_form(const GR& a0, const GR& a1, const GR& a2, int d) {
  return ExactForm::linear(a0, a1, a2).pow(d);
}

TernaryForm<CE> to_cyclotomic(const ExactForm& f) {
  TernaryForm<CE> out;
  for (const auto& [e, c] : f.terms()) out.add_term(e, CE(c));
  return out;
}

Complex root_of_unity(int d, int k) { return std::polar(1.0, 2.0 * std::numbers::pi * k / d); }

struct Symmetry {
  std::string name;
  Mat2 linear;
};

}  // namespace

ExactForm fermat_form(int d) {
  if (d < 2) throw Error(ErrorCode::InvalidDegree, "Fermat hyperbola needs d >= 2");
  const GR i = GR::i();
  ExactForm f = power_form(1, -i, 0, d) + power_form(1, i, 0, d);
  f.add_term({0, 0, d}, -1);
  return f;
}

ExactForm standard_fermat_form(int d) {
  if (d < 2) throw Error(ErrorCode::InvalidDegree, "Fermat curve needs d >= 2");
  ExactForm f = ExactForm::monomial({d, 0, 0}, 1);
  f.add_term({0, d, 0}, 1);
  f.add_term({0, 0, d}, -1);
  return f;
}

PlaneCurve to_curve(const ExactForm& f) {
  std::vector<Monomial> mono;
  for (const auto& [e, c] : f.terms()) mono.push_back({e[0], e[1], e[2], c.to_complex()});
  return PlaneCurve(f.degree(), std::move(mono));
}

PlaneCurve fermat_hyperbola(int d) {
  const ExactForm f = fermat_form(d);
  for (const auto& [e, c] : f.terms()) {
    if (!c.is_real()) throw Error(ErrorCode::InvalidArgument, "imaginary parts failed to cancel");
  }
  return to_curve(f);
}

Mat3 j_matrix() {
  return {{{1.0, -kI, 0.0}, {1.0, kI, 0.0}, {0.0, 0.0, 1.0}}};
}

Mat2 j_linear() { return {{{1.0, -kI}, {1.0, kI}}}; }

ProjectivePoint apply_J(const ProjectivePoint& p) {
  return {p[0] - kI * p[1], p[0] + kI * p[1], p[2]};
}

PlaneCurve apply_J_to_curve(const PlaneCurve& c) { return c.pushforward(j_matrix()); }

ExactForm apply_J_exact(const ExactForm& f) {
  // J^{-1}: X0 = (Z0 + Z1)/2, X1 = i (Z0 - Z1)/2.
  const GR half(Rational(1, 2));
  const GR ihalf(0, Rational(1, 2));
  ExactForm::Matrix3 jinv{{{half, half, 0}, {ihalf, -ihalf, 0}, {0, 0, 1}}};
  return f.substitute(jinv);
}

Direction map_direction(const QuadraticForm& src, const Mat2& l, const QuadraticForm& dst,
                        const Direction& v) {
  if (!v.is_isotropic()) return Direction::from_vector(dst, apply_linear(l, v.vector(src)));
  const Vec2 u = apply_linear(l, v.line_vector(src));
  const Complex a = 2.0 * dst.bilinear(u, dst.frame_b());
  const Complex b = 2.0 * dst.bilinear(u, dst.frame_a());
  return std::abs(b) <= std::abs(a) ? Direction(RiemannPoint(0.0)) : Direction(RiemannPoint::infinity());
}

std::vector<PhasePoint> isotropic_tangency_points(int d) {
  if (d < 2) throw Error(ErrorCode::InvalidDegree, "need d >= 2");
  std::vector<PhasePoint> out;
  for (int k = 0; k < d; ++k) {
    const Complex z = root_of_unity(d, k);
    out.push_back({{z / 2.0, -kI * z / 2.0}, Direction(RiemannPoint(0.0))});
    out.push_back({{z / 2.0, kI * z / 2.0}, Direction(RiemannPoint::infinity())});
  }
  return out;
}

std::vector<CatalogPoint> secant_indeterminacy_points(const PlaneCurve& c, const QuadraticForm& theta) {
  std::vector<CatalogPoint> out;
  for (const ProjectivePoint& x : points_at_infinity(c)) {
    const auto [v1, v2] = Direction::from_slope(theta, tangent_slope(c, x));
    out.push_back({x, v1});
    out.push_back({x, v2});
  }
  return out;
}

Report symmetry_check(int d) {
  if (d < 2) throw Error(ErrorCode::InvalidDegree, "need d >= 2");
  Report rep;
  rep.title = "symmetry_check";
  const ExactForm f = fermat_form(d);

  // Rotation by 2 pi / d in the group ring: cos = (x + 1/x)/2, sin = (x - 1/x)/(2i).
  const CE x = CE::power_of_x(d, 1), xinv = CE::power_of_x(d, -1);
  const CE half(GR(Rational(1, 2)));
  const CE c = half * (x + xinv);
  const CE s = CE(GR(0, Rational(-1, 2))) * (x - xinv);
  TernaryForm<CE>::Matrix3 xi{{{c, -s, 0}, {s, c, 0}, {0, 0, 1}}};
  const TernaryForm<CE> fc = to_cyclotomic(f);
  rep.add("xi_fixes_curve", fc.substitute(xi) == fc, {{"terms", fc.terms().size()}});

  ExactForm::Matrix3 phi{{{1, 0, 0}, {0, -1, 0}, {0, 0, 1}}};
  rep.add("phi_fixes_curve", f.substitute(phi) == f);

  // M^T M = I for the linear part, i.e. the Euclidean form is preserved.
  const CE m[2][2] = {{c, -s}, {s, c}};
  bool orthogonal = true;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      const CE entry = m[0][a] * m[0][b] + m[1][a] * m[1][b];
      orthogonal = orthogonal && entry == CE(a == b ? 1 : 0);
    }
  rep.add("xi_preserves_form", orthogonal);
  const GR p2[2][2] = {{1, 0}, {0, -1}};
  bool phi_orthogonal = true;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      phi_orthogonal = phi_orthogonal && p2[0][a] * p2[0][b] + p2[1][a] * p2[1][b] == GR(a == b ? 1 : 0);
  rep.add("phi_preserves_form", phi_orthogonal);

  // Transitivity on the isotropic tangency catalog, with zeta = exp(2 pi i / d).
  const QuadraticForm theta = QuadraticForm::euclidean();
  const auto catalog = isotropic_tangency_points(d);
  const double ang = 2.0 * std::numbers::pi / d;
  const std::vector<Symmetry> gens{
      {"xi", {{{std::cos(ang), -std::sin(ang)}, {std::sin(ang), std::cos(ang)}}}},
      {"phi", {{{1.0, 0.0}, {0.0, -1.0}}}}};
  auto locate = [&](const PhasePoint& p) -> int {
    for (std::size_t k = 0; k < catalog.size(); ++k)
      if (phase_distance(p, catalog[k]) < 1e-9) return static_cast<int>(k);
    return -1;
  };
  std::vector<char> seen(catalog.size(), 0);
  std::deque<int> queue{0};
  seen[0] = 1;
  bool closed = true;
  while (!queue.empty()) {
    const PhasePoint p = catalog[static_cast<std::size_t>(queue.front())];
    queue.pop_front();
    for (const Symmetry& g : gens) {
      const PhasePoint q{apply_linear(g.linear, p.x), map_direction(theta, g.linear, theta, p.v)};
      const int k = locate(q);
      if (k < 0) {
        closed = false;
        continue;
      }
      if (!seen[static_cast<std::size_t>(k)]) {
        seen[static_cast<std::size_t>(k)] = 1;
        queue.push_back(k);
      }
    }
  }
  const long orbit = std::count(seen.begin(), seen.end(), 1);
  rep.add("catalog_size", static_cast<int>(catalog.size()) == 2 * d, {{"size", catalog.size()}});
  rep.add("catalog_closed_under_group", closed);
  rep.add("transitive_on_catalog", orbit == static_cast<long>(catalog.size()), {{"orbit_size", orbit}});
  return rep;
}

}  // namespace billiards

#include "billiards/geometry/quadratic_form.hpp"

#include <algorithm>

#include "billiards/error.hpp"

namespace billiards {

Vec2 apply_linear(const Mat2& m, const Vec2& v) noexcept {
  return {m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]};
}

Mat2 multiply(const Mat2& a, const Mat2& b) noexcept {
  Mat2 c{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return c;
}

Mat2 transpose(const Mat2& m) noexcept { return {{{m[0][0], m[1][0]}, {m[0][1], m[1][1]}}}; }

Complex determinant(const Mat2& m) noexcept { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

Mat2 inverse(const Mat2& m) {
  const Complex det = determinant(m);
  if (det == Complex{}) throw Error(ErrorCode::InvalidArgument, "singular 2x2 matrix");
  return {{{m[1][1] / det, -m[0][1] / det}, {-m[1][0] / det, m[0][0] / det}}};
}

Mat2 identity2() noexcept { return {{{1.0, 0.0}, {0.0, 1.0}}}; }

double norm(const Vec2& v) noexcept { return std::sqrt(std::norm(v[0]) + std::norm(v[1])); }

QuadraticForm QuadraticForm::euclidean() {
  QuadraticForm q;
  q.g_ = identity2();
  q.ginv_ = identity2();
  q.ea_ = {0.5, 0.5 * kI};
  q.eb_ = {0.5, -0.5 * kI};
  return q;
}

QuadraticForm QuadraticForm::from_matrix(const Mat2& g, double tol) {
  if (std::abs(g[0][1] - g[1][0]) > tol * (std::abs(g[0][1]) + std::abs(g[1][0]) + 1.0))
    throw Error(ErrorCode::InvalidArgument, "quadratic form matrix not symmetric");
  QuadraticForm q;
  q.g_ = g;
  q.g_[1][0] = q.g_[0][1];
  const double s = std::max({std::abs(g[0][0]), std::abs(g[0][1]), std::abs(g[1][1])});
  if (s == 0.0 || std::abs(determinant(q.g_)) <= tol * s * s)
    throw Error(ErrorCode::InvalidArgument, "degenerate quadratic form");
  q.ginv_ = inverse(q.g_);

  const Complex a = q.g_[0][0], b = q.g_[0][1], c = q.g_[1][1];
  const Complex disc = std::sqrt(b * b - a * c);
  Vec2 e1, e2;
  if (a == Complex{} && c == Complex{}) {
    e1 = {1.0, 0.0};
    e2 = {0.0, 1.0};
  } else if (std::abs(c) >= std::abs(a)) {
    // c t^2 + 2 b t + a = 0 for e = (1, t)
    e1 = {1.0, (-b + disc) / c};
    e2 = {1.0, (-b - disc) / c};
  } else {
    e1 = {(-b + disc) / a, 1.0};
    e2 = {(-b - disc) / a, 1.0};
  }
  const Complex pair = 2.0 * q.bilinear(e1, e2);
  q.ea_ = e1;
  q.eb_ = {e2[0] / pair, e2[1] / pair};
  return q;
}

double QuadraticForm::scale() const noexcept {
  return std::max({std::abs(g_[0][0]), std::abs(g_[0][1]), std::abs(g_[1][1])});
}

Complex QuadraticForm::bilinear(const Vec2& u, const Vec2& v) const noexcept {
  return u[0] * (g_[0][0] * v[0] + g_[0][1] * v[1]) + u[1] * (g_[1][0] * v[0] + g_[1][1] * v[1]);
}

QuadraticForm QuadraticForm::pushforward(const Mat2& l) const {
  const Mat2 linv = inverse(l);
  QuadraticForm q;
  q.g_ = multiply(transpose(linv), multiply(g_, linv));
  q.ginv_ = multiply(l, multiply(ginv_, transpose(l)));
  q.ea_ = apply_linear(l, ea_);
  q.eb_ = apply_linear(l, eb_);
  return q;
}

Direction Direction::from_vector(const QuadraticForm& theta, const Vec2& q) {
  const Complex a = 2.0 * theta.bilinear(q, theta.frame_b());
  const Complex b = 2.0 * theta.bilinear(q, theta.frame_a());
  if (a == Complex{} && b == Complex{}) throw Error(ErrorCode::InvalidArgument, "zero direction vector");
  if (a == Complex{}) return Direction(RiemannPoint::infinity());
  // For a unit vector a b = 1; the larger coordinate carries no cancellation.
  if (std::abs(b) >= std::abs(a)) return Direction(RiemannPoint(b));
  return Direction(RiemannPoint(1.0 / a));
}

std::pair<Direction, Direction> Direction::from_slope(const QuadraticForm& theta, const Slope& t) {
  const Vec2 v{t.t0, t.t1};
  const Complex a = 2.0 * theta.bilinear(v, theta.frame_b());
  const Complex b = 2.0 * theta.bilinear(v, theta.frame_a());
  if (std::abs(a * b) <= 1e-14 * theta.scale() * (std::norm(t.t0) + std::norm(t.t1)))
    throw Error(ErrorCode::IndeterminateReflection, "isotropic slope has no unit direction");
  const Complex w = std::sqrt(b / a);
  return {Direction(RiemannPoint(w)), Direction(RiemannPoint(-w))};
}

Vec2 Direction::vector(const QuadraticForm& theta) const {
  if (is_isotropic()) throw Error(ErrorCode::InvalidArgument, "isotropic direction has no unit vector");
  const Complex w = w_.value();
  const Vec2& ea = theta.frame_a();
  const Vec2& eb = theta.frame_b();
  return {ea[0] / w + w * eb[0], ea[1] / w + w * eb[1]};
}

Vec2 Direction::line_vector(const QuadraticForm& theta) const {
  const Vec2& ea = theta.frame_a();
  const Vec2& eb = theta.frame_b();
  Vec2 v;
  if (w_.is_infinite()) {
    v = eb;
  } else {
    const Complex w = w_.value();
    if (std::abs(w) <= 1.0) {
      v = {ea[0] + w * w * eb[0], ea[1] + w * w * eb[1]};
    } else {
      const Complex r = 1.0 / (w * w);
      v = {r * ea[0] + eb[0], r * ea[1] + eb[1]};
    }
  }
  const double n = norm(v);
  return {v[0] / n, v[1] / n};
}

Slope Direction::slope(const QuadraticForm& theta) const {
  const Vec2 v = line_vector(theta);
  return Slope::normalized(v[0], v[1]);
}

}  // namespace billiards

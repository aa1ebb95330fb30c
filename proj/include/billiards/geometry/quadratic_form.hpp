#pragma once

#include <array>
#include <utility>

#include "billiards/algebra/complex.hpp"
#include "billiards/geometry/projective.hpp"

namespace billiards {

using Mat2 = std::array<std::array<Complex, 2>, 2>;

Vec2 apply_linear(const Mat2& m, const Vec2& v) noexcept;
Mat2 multiply(const Mat2& a, const Mat2& b) noexcept;
Mat2 transpose(const Mat2& m) noexcept;
Complex determinant(const Mat2& m) noexcept;
/// Throws InvalidArgument when singular.
Mat2 inverse(const Mat2& m);
Mat2 identity2() noexcept;
double norm(const Vec2& v) noexcept;

/// Nondegenerate quadratic form Θ(q) = q^T G q on the tangent plane, together
/// with an isotropic frame (ea, eb) normalized by B(ea, eb) = 1/2. In that frame
/// Θ(a ea + b eb) = ab, and the unit conic is parametrized by
/// w -> (1/w) ea + w eb. For the Euclidean form w = q0 + i q1.
class QuadraticForm {
 public:
  /// q0^2 + q1^2 with ea = (1, i)/2, eb = (1, -i)/2.
  static QuadraticForm euclidean();
  /// Frame ordering is determined by the solver; throws InvalidArgument when
  /// det G is below tol relative to the entries.
  static QuadraticForm from_matrix(const Mat2& g, double tol = 1e-12);

  const Mat2& matrix() const noexcept { return g_; }
  const Mat2& inverse_matrix() const noexcept { return ginv_; }
  const Vec2& frame_a() const noexcept { return ea_; }
  const Vec2& frame_b() const noexcept { return eb_; }
  double scale() const noexcept;

  Complex value(const Vec2& q) const noexcept { return bilinear(q, q); }
  Complex bilinear(const Vec2& u, const Vec2& v) const noexcept;

  /// The form Θ∘L^{-1} with frame (L ea, L eb), so the parameter w of a
  /// direction is unchanged by L.
  QuadraticForm pushforward(const Mat2& l) const;

 private:
  Mat2 g_{};
  Mat2 ginv_{};
  Vec2 ea_{};
  Vec2 eb_{};
};

/// A point of the unit conic D, encoded by the frame parameter w in C ∪ {∞}.
/// w = 0 and w = ∞ are the isotropic directions [ea] and [eb].
class Direction {
 public:
  Direction() : w_(1.0) {}
  explicit Direction(RiemannPoint w) : w_(w) {}

  /// Inverse of vector(); uses whichever frame coordinate is better conditioned.
  static Direction from_vector(const QuadraticForm& theta, const Vec2& q);
  /// The two unit directions with the given slope. Throws IndeterminateReflection
  /// when the slope is isotropic (no unit vector has it).
  static std::pair<Direction, Direction> from_slope(const QuadraticForm& theta, const Slope& t);

  RiemannPoint parameter() const noexcept { return w_; }
  bool is_isotropic() const noexcept {
    return w_.is_infinite() || w_.value() == Complex{};
  }

  /// (1/w) ea + w eb; throws InvalidArgument for isotropic directions.
  Vec2 vector(const QuadraticForm& theta) const;
  /// Unit-Hermitian-norm vector spanning the line of the direction, defined
  /// for every w including 0 and ∞.
  Vec2 line_vector(const QuadraticForm& theta) const;
  Slope slope(const QuadraticForm& theta) const;

 private:
  RiemannPoint w_;
};

/// Chordal distance between parameters on the Riemann sphere.
inline double direction_distance(const Direction& a, const Direction& b) noexcept {
  return chordal_distance(a.parameter(), b.parameter());
}

}  // namespace billiards

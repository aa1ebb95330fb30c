#pragma once

#include <array>
#include <string>

#include "billiards/algebra/complex.hpp"

namespace billiards {

using Vec2 = std::array<Complex, 2>;

/// [X0 : X1 : X2], scaled so the largest-magnitude coordinate equals 1.
class ProjectivePoint {
 public:
  ProjectivePoint() : x_{Complex{}, Complex{}, Complex{1.0, 0.0}} {}
  /// Throws InvalidArgument when all coordinates vanish or one is not finite.
  ProjectivePoint(Complex x0, Complex x1, Complex x2);

  static ProjectivePoint affine(Complex x0, Complex x1) { return {x0, x1, 1.0}; }
  static ProjectivePoint affine(const Vec2& x) { return {x[0], x[1], 1.0}; }

  Complex operator[](int k) const noexcept { return x_[static_cast<std::size_t>(k)]; }
  const std::array<Complex, 3>& coords() const noexcept { return x_; }

  bool is_at_infinity(double tol = 1e-12) const noexcept { return std::abs(x_[2]) <= tol; }
  /// (X0/X2, X1/X2); throws InvalidArgument at infinity.
  Vec2 to_affine() const;
  std::string str() const;

 private:
  std::array<Complex, 3> x_;
};

/// Sine of the Hermitian angle between representatives; 0 iff equal points.
double projective_distance(const ProjectivePoint& a, const ProjectivePoint& b) noexcept;

/// A point [t0 : t1] of P^1, normalized like ProjectivePoint.
struct Slope {
  Complex t0;
  Complex t1;

  static Slope normalized(Complex t0, Complex t1);
  /// Sine of the Hermitian angle, as for projective points.
  friend double slope_distance(const Slope& a, const Slope& b) noexcept;
};

}  // namespace billiards

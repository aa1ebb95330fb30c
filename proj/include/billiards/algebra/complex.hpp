#pragma once

#include <cmath>
#include <complex>
#include <limits>

namespace billiards {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

inline bool is_finite(Complex z) noexcept {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// A point of the Riemann sphere C ∪ {∞}. Infinity is an explicit state,
/// never a large finite number.
class RiemannPoint {
 public:
  constexpr RiemannPoint() = default;
  constexpr RiemannPoint(Complex z) : z_(z) {}  // NOLINT(google-explicit-constructor)
  constexpr RiemannPoint(double x) : z_(x, 0.0) {}  // NOLINT(google-explicit-constructor)

  static constexpr RiemannPoint infinity() {
    RiemannPoint p;
    p.infinite_ = true;
    return p;
  }

  constexpr bool is_infinite() const noexcept { return infinite_; }
  constexpr Complex value() const noexcept { return z_; }

  /// |z|, with +inf for the point at infinity.
  double modulus() const noexcept {
    return infinite_ ? std::numeric_limits<double>::infinity() : std::abs(z_);
  }

  RiemannPoint reciprocal() const noexcept {
    if (infinite_) return RiemannPoint(Complex{0.0, 0.0});
    if (z_ == Complex{0.0, 0.0}) return infinity();
    return RiemannPoint(1.0 / z_);
  }

  RiemannPoint conj() const noexcept {
    return infinite_ ? *this : RiemannPoint(std::conj(z_));
  }

 private:
  Complex z_{};
  bool infinite_ = false;
};

/// Chordal distance on the Riemann sphere; 0 between two copies of ∞.
inline double chordal_distance(RiemannPoint a, RiemannPoint b) noexcept {
  if (a.is_infinite() && b.is_infinite()) return 0.0;
  if (a.is_infinite()) return 2.0 / std::sqrt(1.0 + std::norm(b.value()));
  if (b.is_infinite()) return 2.0 / std::sqrt(1.0 + std::norm(a.value()));
  return 2.0 * std::abs(a.value() - b.value()) /
         std::sqrt((1.0 + std::norm(a.value())) * (1.0 + std::norm(b.value())));
}

/// Euclidean distance in C; +inf when exactly one side is ∞.
inline double plane_distance(RiemannPoint a, RiemannPoint b) noexcept {
  if (a.is_infinite() && b.is_infinite()) return 0.0;
  if (a.is_infinite() || b.is_infinite()) return std::numeric_limits<double>::infinity();
  return std::abs(a.value() - b.value());
}

}  // namespace billiards

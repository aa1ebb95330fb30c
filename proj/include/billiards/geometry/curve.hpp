#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "billiards/algebra/polynomial.hpp"
#include "billiards/geometry/projective.hpp"
#include "billiards/geometry/quadratic_form.hpp"

namespace billiards {

/// c X0^i X1^j X2^k
struct Monomial {
  int i = 0;
  int j = 0;
  int k = 0;
  Complex c;
};

using Mat3 = std::array<std::array<Complex, 3>, 3>;

/// Projective plane curve {F = 0} for a homogeneous ternary form F of degree d.
/// The affine form is f(x0, x1) = F(x0, x1, 1).
class PlaneCurve {
 public:
  PlaneCurve() = default;
  /// Merges repeated exponents and drops zero coefficients. Throws
  /// InvalidDegree for d < 1 or an exponent triple of the wrong degree, and
  /// InvalidArgument when every coefficient is zero.
  PlaneCurve(int degree, std::vector<Monomial> monomials);

  int degree() const noexcept { return d_; }
  const std::vector<Monomial>& monomials() const noexcept { return mono_; }
  Complex coefficient(int i, int j, int k) const noexcept;
  double max_abs_coefficient() const noexcept;
  bool is_real(double tol = 0.0) const noexcept;

  Complex operator()(const std::array<Complex, 3>& x) const noexcept;
  std::array<Complex, 3> gradient(const std::array<Complex, 3>& x) const noexcept;
  /// sum |c| |X0|^i |X1|^j |X2|^k, the scale for residuals of F at x.
  double magnitude(const std::array<Complex, 3>& x) const noexcept;

  Complex affine(const Vec2& x) const noexcept { return (*this)({x[0], x[1], 1.0}); }
  /// (df/dx0, df/dx1)
  Vec2 affine_gradient(const Vec2& x) const noexcept;
  double affine_magnitude(const Vec2& x) const noexcept { return magnitude({x[0], x[1], 1.0}); }
  /// |f(x)| <= tol * affine_magnitude(x)
  bool contains(const Vec2& x, double tol) const noexcept;

  /// f(x + t q) as a polynomial in t.
  ComplexPolynomial restrict_to_line(const Vec2& x, const Vec2& q) const;
  /// F(1, s, 0) as a polynomial in s; missing degree means roots at [0:1:0].
  ComplexPolynomial restrict_to_infinity() const;

  /// The curve {F(M X) = 0}, i.e. the image of this curve under M^{-1}.
  PlaneCurve pullback(const Mat3& m) const;
  /// The image of this curve under the projective map M.
  PlaneCurve pushforward(const Mat3& m) const;

  /// A random affine point on the curve: a random root of f along a random
  /// complex Gaussian line, refined by Newton.
  Vec2 sample_point(std::mt19937_64& rng) const;

 private:
  int d_ = 0;
  std::vector<Monomial> mono_;
};

Mat3 inverse(const Mat3& m);

/// Tangent slope [-dF/dX1 : dF/dX0] at x, which may lie at infinity. Throws
/// NotOnCurve when |F(x)| is above tol relative to its scale and SingularPoint
/// when both partials vanish to tol.
Slope tangent_slope(const PlaneCurve& c, const ProjectivePoint& x, double tol = 1e-9);

/// Up to three Newton projections y -> y - f(y) conj(g) / |g|^2, g = grad f,
/// each kept only if it reduces |f|. Repairs points formed as x + t q with
/// cancellation, which are common near points at infinity.
Vec2 project_to_curve(const PlaneCurve& c, Vec2 y);

/// Order of vanishing at t = 0 of f(x + t w), w along the tangent slope.
int tangency_order(const PlaneCurve& c, const Vec2& x, double tol = 1e-9);

/// The roots of F(X0, X1, 0). Throws NonReducedInfinity on a repeated root.
std::vector<ProjectivePoint> points_at_infinity(const PlaneCurve& c, double tol = 1e-9);

struct SmoothnessCertificate {
  int samples = 0;
  /// min over samples of |grad F| / (d * magnitude scale).
  double min_relative_gradient = 0.0;
  bool passed = false;
};

/// Samples at least 10 d^2 curve points and checks the homogeneous gradient.
SmoothnessCertificate certify_smooth(const PlaneCurve& c, std::uint64_t seed, int samples = 0,
                                     double tol = 1e-8);

}  // namespace billiards

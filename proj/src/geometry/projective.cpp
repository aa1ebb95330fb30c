#include "billiards/geometry/projective.hpp"

#include <algorithm>
#include <sstream>

#include "billiards/error.hpp"

namespace billiards {

namespace {

template <std::size_t N>
double hermitian_sine(const std::array<Complex, N>& a, const std::array<Complex, N>& b) {
  // Lagrange identity: |a|^2 |b|^2 - |<a,b>|^2 = sum_{j<k} |a_j b_k - a_k b_j|^2.
  double na = 0.0, nb = 0.0, wedge = 0.0;
  for (std::size_t j = 0; j < N; ++j) {
    na += std::norm(a[j]);
    nb += std::norm(b[j]);
    for (std::size_t k = j + 1; k < N; ++k) wedge += std::norm(a[j] * b[k] - a[k] * b[j]);
  }
  return std::sqrt(wedge / (na * nb));
}

}  // namespace

ProjectivePoint::ProjectivePoint(Complex x0, Complex x1, Complex x2) : x_{x0, x1, x2} {
  std::size_t big = 0;
  for (std::size_t k = 0; k < 3; ++k) {
    if (!is_finite(x_[k])) throw Error(ErrorCode::InvalidArgument, "non-finite projective coordinate");
    if (std::abs(x_[k]) > std::abs(x_[big])) big = k;
  }
  if (x_[big] == Complex{}) throw Error(ErrorCode::InvalidArgument, "all projective coordinates zero");
  const Complex s = x_[big];
  for (Complex& c : x_) c /= s;
  x_[big] = 1.0;
}

Vec2 ProjectivePoint::to_affine() const {
  if (x_[2] == Complex{}) throw Error(ErrorCode::InvalidArgument, "point at infinity has no affine form");
  return {x_[0] / x_[2], x_[1] / x_[2]};
}

std::string ProjectivePoint::str() const {
  std::ostringstream os;
  os << "[" << x_[0] << " : " << x_[1] << " : " << x_[2] << "]";
  return os.str();
}

double projective_distance(const ProjectivePoint& a, const ProjectivePoint& b) noexcept {
  return hermitian_sine(a.coords(), b.coords());
}

Slope Slope::normalized(Complex t0, Complex t1) {
  if (!is_finite(t0) || !is_finite(t1)) throw Error(ErrorCode::InvalidArgument, "non-finite slope");
  const Complex s = std::abs(t0) >= std::abs(t1) ? t0 : t1;
  if (s == Complex{}) throw Error(ErrorCode::InvalidArgument, "zero slope vector");
  Slope r{t0 / s, t1 / s};
  (std::abs(t0) >= std::abs(t1) ? r.t0 : r.t1) = 1.0;
  return r;
}

double slope_distance(const Slope& a, const Slope& b) noexcept {
  return hermitian_sine(std::array<Complex, 2>{a.t0, a.t1}, std::array<Complex, 2>{b.t0, b.t1});
}

}  // namespace billiards

#include "billiards/algebra/gaussian_rational.hpp"

#include "billiards/error.hpp"

namespace billiards {

double to_double(const Rational& q) { return q.convert_to<double>(); }

std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

GaussianRational GaussianRational::inverse() const {
  Rational n = norm();
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "division by zero Gaussian rational");
  return {re_ / n, -im_ / n};
}

std::string GaussianRational::str() const {
  if (im_ == 0) return to_string(re_);
  if (re_ == 0) return to_string(im_) + "i";
  std::string sign = im_ < 0 ? " - " : " + ";
  Rational a = im_ < 0 ? Rational(-im_) : im_;
  return "(" + to_string(re_) + sign + to_string(a) + "i)";
}

}  // namespace billiards

#include "billiards/geometry/ternary_form.hpp"

#include <numbers>

#include "billiards/error.hpp"

namespace billiards {

CyclotomicElement CyclotomicElement::power_of_x(int n, int k) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "cyclotomic order must be positive");
  CyclotomicElement e;
  e.n_ = n;
  e.c_.assign(static_cast<std::size_t>(n), GaussianRational());
  e.c_[static_cast<std::size_t>(((k % n) + n) % n)] = 1;
  return e;
}

void CyclotomicElement::widen(int n) {
  if (n == 0 || n_ == n) return;
  if (n_ != 0) throw Error(ErrorCode::InvalidArgument, "mixing cyclotomic rings of different order");
  GaussianRational s = c_[0];
  c_.assign(static_cast<std::size_t>(n), GaussianRational());
  c_[0] = std::move(s);
  n_ = n;
}

bool CyclotomicElement::is_zero() const {
  for (const auto& c : c_)
    if (!c.is_zero()) return false;
  return true;
}

Complex CyclotomicElement::to_complex() const {
  if (n_ == 0) return c_[0].to_complex();
  Complex acc{};
  for (int k = 0; k < n_; ++k)
    acc += c_[static_cast<std::size_t>(k)].to_complex() * std::polar(1.0, 2.0 * std::numbers::pi * k / n_);
  return acc;
}

CyclotomicElement& CyclotomicElement::operator+=(const CyclotomicElement& o) {
  widen(o.n_);
  if (o.n_ == 0) {
    c_[0] += o.c_[0];
  } else {
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
  }
  return *this;
}

CyclotomicElement& CyclotomicElement::operator*=(const CyclotomicElement& o) {
  if (o.n_ == 0) {
    for (auto& c : c_) c *= o.c_[0];
    return *this;
  }
  if (n_ == 0) {
    const GaussianRational s = c_[0];
    *this = o;
    for (auto& c : c_) c *= s;
    return *this;
  }
  widen(o.n_);
  std::vector<GaussianRational> r(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) {
    if (c_[static_cast<std::size_t>(i)].is_zero()) continue;
    for (int j = 0; j < n_; ++j) {
      if (o.c_[static_cast<std::size_t>(j)].is_zero()) continue;
      r[static_cast<std::size_t>((i + j) % n_)] += c_[static_cast<std::size_t>(i)] * o.c_[static_cast<std::size_t>(j)];
    }
  }
  c_ = std::move(r);
  return *this;
}

CyclotomicElement operator-(const CyclotomicElement& a) {
  CyclotomicElement r = a;
  for (auto& c : r.c_) c = -c;
  return r;
}

bool operator==(const CyclotomicElement& a, const CyclotomicElement& b) {
  return (a - b).is_zero();
}

}  // namespace billiards

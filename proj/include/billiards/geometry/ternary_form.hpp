#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "billiards/algebra/gaussian_rational.hpp"

namespace billiards {

/// Element of the group ring Q(i)[x]/(x^n - 1). Substituting x = exp(2 pi i / n)
/// is a ring map onto Q(i, zeta), so an identity proved here holds for zeta.
/// A default or scalar-constructed element has n = 0 and mixes with any n.
class CyclotomicElement {
 public:
  CyclotomicElement() : c_{GaussianRational()} {}
  CyclotomicElement(GaussianRational scalar) : c_{std::move(scalar)} {}  // NOLINT
  CyclotomicElement(long long scalar) : c_{GaussianRational(scalar)} {}  // NOLINT

  /// x^k in the ring of order n.
  static CyclotomicElement power_of_x(int n, int k);

  int order() const noexcept { return n_; }
  bool is_zero() const;
  /// Evaluates at x = exp(2 pi i / n).
  Complex to_complex() const;

  CyclotomicElement& operator+=(const CyclotomicElement& o);
  CyclotomicElement& operator*=(const CyclotomicElement& o);
  friend CyclotomicElement operator+(CyclotomicElement a, const CyclotomicElement& b) { return a += b; }
  friend CyclotomicElement operator*(CyclotomicElement a, const CyclotomicElement& b) { return a *= b; }
  friend CyclotomicElement operator-(const CyclotomicElement& a);
  friend CyclotomicElement operator-(const CyclotomicElement& a, const CyclotomicElement& b) {
    return a + (-b);
  }
  friend bool operator==(const CyclotomicElement& a, const CyclotomicElement& b);

 private:
  void widen(int n);
  int n_ = 0;
  std::vector<GaussianRational> c_;
};

using Exponent = std::array<int, 3>;

/// Homogeneous polynomial in X0, X1, X2 over a commutative ring T.
template <class T>
class TernaryForm {
 public:
  using Matrix3 = std::array<std::array<T, 3>, 3>;

  TernaryForm() = default;

  static TernaryForm monomial(Exponent e, T c) {
    TernaryForm f;
    f.add_term(e, std::move(c));
    return f;
  }
  /// a0 X0 + a1 X1 + a2 X2
  static TernaryForm linear(T a0, T a1, T a2) {
    TernaryForm f;
    f.add_term({1, 0, 0}, std::move(a0));
    f.add_term({0, 1, 0}, std::move(a1));
    f.add_term({0, 0, 1}, std::move(a2));
    return f;
  }

  const std::map<Exponent, T>& terms() const noexcept { return terms_; }
  T coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? T() : it->second;
  }
  /// Total degree of the first stored term; -1 for zero.
  int degree() const {
    if (terms_.empty()) return -1;
    const Exponent& e = terms_.begin()->first;
    return e[0] + e[1] + e[2];
  }
  bool is_homogeneous() const {
    const int d = degree();
    for (const auto& [e, c] : terms_)
      if (e[0] + e[1] + e[2] != d) return false;
    return true;
  }

  void add_term(const Exponent& e, T c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  TernaryForm pow(int k) const {
    TernaryForm r = monomial({0, 0, 0}, T(1));
    for (int i = 0; i < k; ++i) r = r * *this;
    return r;
  }

  /// f(M X): each X_a is replaced by sum_b M[a][b] X_b.
  TernaryForm substitute(const Matrix3& m) const {
    std::array<TernaryForm, 3> lin;
    for (int a = 0; a < 3; ++a) lin[static_cast<std::size_t>(a)] = linear(m[a][0], m[a][1], m[a][2]);
    TernaryForm out;
    for (const auto& [e, c] : terms_) {
      TernaryForm term = monomial({0, 0, 0}, c);
      for (int a = 0; a < 3; ++a) term = term * lin[static_cast<std::size_t>(a)].pow(e[static_cast<std::size_t>(a)]);
      out += term;
    }
    return out;
  }

  TernaryForm& operator+=(const TernaryForm& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  friend TernaryForm operator+(TernaryForm a, const TernaryForm& b) { return a += b; }
  friend TernaryForm operator-(TernaryForm a, const TernaryForm& b) {
    for (const auto& [e, c] : b.terms_) a.add_term(e, T(-1) * c);
    return a;
  }
  friend TernaryForm operator*(const TernaryForm& a, const TernaryForm& b) {
    TernaryForm r;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_)
        r.add_term({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
    return r;
  }
  friend bool operator==(const TernaryForm& a, const TernaryForm& b) { return a.terms_ == b.terms_; }

 private:
  std::map<Exponent, T> terms_;
};

}  // namespace billiards

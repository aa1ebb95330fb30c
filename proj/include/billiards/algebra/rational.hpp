#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "billiards/algebra/gaussian_rational.hpp"
#include "billiards/algebra/polynomial.hpp"

namespace billiards {

/// Exact univariate polynomial over Q, ascending coefficients, no trailing zeros.
class RationalPolynomial {
 public:
  RationalPolynomial() = default;
  explicit RationalPolynomial(std::vector<Rational> ascending);
  RationalPolynomial(std::initializer_list<long long> ascending);

  /// x - a
  static RationalPolynomial linear_root(const Rational& a);

  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  const std::vector<Rational>& coefficients() const noexcept { return c_; }
  Rational coefficient(int k) const;
  const Rational& leading() const;

  Rational operator()(const Rational& x) const;
  RationalPolynomial derivative() const;
  RationalPolynomial monic() const;
  ComplexPolynomial to_complex() const;

  /// Descending, e.g. "x^3 - 3*x^2 + 2".
  std::string str(const std::string& var = "x") const;

  friend RationalPolynomial operator+(const RationalPolynomial& a, const RationalPolynomial& b);
  friend RationalPolynomial operator-(const RationalPolynomial& a, const RationalPolynomial& b);
  friend RationalPolynomial operator*(const RationalPolynomial& a, const RationalPolynomial& b);
  friend bool operator==(const RationalPolynomial& a, const RationalPolynomial& b) {
    return a.c_ == b.c_;
  }

 private:
  void normalize();
  std::vector<Rational> c_;
};

struct PolyDivision {
  RationalPolynomial quotient;
  RationalPolynomial remainder;
};

PolyDivision divide(const RationalPolynomial& a, const RationalPolynomial& b);
/// Monic gcd; gcd(0, 0) = 0.
RationalPolynomial gcd(RationalPolynomial a, RationalPolynomial b);
/// p / gcd(p, p'), monic.
RationalPolynomial squarefree_part(const RationalPolynomial& p);

/// Square n×n matrix of exact rationals, row-major.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  explicit RationalMatrix(int n);
  /// Rows of integers; throws InvalidArgument unless square.
  RationalMatrix(std::initializer_list<std::initializer_list<long long>> rows);

  static RationalMatrix identity(int n);
  /// Builds the matrix whose k-th column is cols[k].
  static RationalMatrix from_columns(const std::vector<std::vector<long long>>& cols);

  int size() const noexcept { return n_; }
  Rational& operator()(int i, int j) { return a_[static_cast<std::size_t>(i * n_ + j)]; }
  const Rational& operator()(int i, int j) const {
    return a_[static_cast<std::size_t>(i * n_ + j)];
  }

  Rational trace() const;
  /// Fraction-free Bareiss elimination.
  Rational determinant() const;
  RationalMatrix transpose() const;
  std::vector<Rational> apply(const std::vector<Rational>& x) const;
  std::string str() const;

  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator*(const Rational& s, RationalMatrix m);
  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
    return a.n_ == b.n_ && a.a_ == b.a_;
  }

 private:
  int n_ = 0;
  std::vector<Rational> a_;
};

/// det(xI - M), monic of degree n, by Berkowitz's division-free recursion.
RationalPolynomial char_poly(const RationalMatrix& m);

/// p(M) by Horner's rule.
RationalMatrix evaluate(const RationalPolynomial& p, const RationalMatrix& m);

/// max |root| of p. Roots are taken from the exact square-free part so that
/// they are simple, located by find_roots and refined by Newton in long double.
double spectral_radius(const RationalPolynomial& p, double tol = 1e-12);

}  // namespace billiards

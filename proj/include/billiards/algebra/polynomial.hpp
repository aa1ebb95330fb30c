#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "billiards/algebra/complex.hpp"

namespace billiards {

/// Default root tolerance, relative to the largest coefficient magnitude.
inline constexpr double kDefaultRootTol = 1e-10;

/// Univariate polynomial with complex coefficients, ascending degree.
class ComplexPolynomial {
 public:
  ComplexPolynomial() = default;
  explicit ComplexPolynomial(std::vector<Complex> ascending) : c_(std::move(ascending)) {}

  static ComplexPolynomial from_roots(std::span<const Complex> roots, Complex leading = 1.0);

  /// Index of the last stored coefficient; -1 for the empty polynomial.
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Complex>& coefficients() const noexcept { return c_; }
  Complex coefficient(int k) const noexcept {
    return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : Complex{};
  }

  Complex operator()(Complex z) const noexcept;
  ComplexPolynomial derivative() const;
  double max_abs_coefficient() const noexcept;
  /// sum_k |a_k| |z|^k, the natural scale for residuals at z.
  double magnitude_at(Complex z) const noexcept;

  /// Drops leading coefficients with |a_k| <= rel_tol * max|a|.
  ComplexPolynomial trimmed(double rel_tol) const;

  friend ComplexPolynomial operator*(const ComplexPolynomial& a, const ComplexPolynomial& b);
  friend ComplexPolynomial operator+(const ComplexPolynomial& a, const ComplexPolynomial& b);
  friend ComplexPolynomial operator-(const ComplexPolynomial& a, const ComplexPolynomial& b);
  friend ComplexPolynomial operator*(Complex s, ComplexPolynomial p);

 private:
  std::vector<Complex> c_;
};

struct Root {
  Complex value;
  int multiplicity = 1;
};

using RootMultiset = std::vector<Root>;

/// Roots of p with multiplicity.
///
/// Coefficients below tol * max|a| at the top are treated as zero (lowering
/// the degree) and at the bottom as exact zero roots. The rest is solved by
/// Aberth-Ehrlich simultaneous iteration with randomized restarts; roots
/// closer than max(1,|c|) * tol^(1/m) for a cluster of m are merged and the
/// merged value is polished by Newton on p^(m-1).
///
/// Throws DegeneratePolynomial when every coefficient is below tol, and
/// NonConvergence when the iteration budget is exhausted.
RootMultiset find_roots(const ComplexPolynomial& p, double tol = kDefaultRootTol);

int total_multiplicity(const RootMultiset& roots) noexcept;
std::vector<Complex> flatten(const RootMultiset& roots);

}  // namespace billiards

#pragma once

#include <string>
#include <vector>

#include "billiards/algebra/rational.hpp"
#include "billiards/report.hpp"

namespace billiards {

// Classes are integer 4-vectors in the basis (C0, D0, E_inf, F_{d-1}).
// Matrices act on columns: column k is the image of the k-th basis class.

struct PushforwardSet {
  int d = 0;
  RationalMatrix r_bar;
  RationalMatrix s_bar;
  /// r_bar * s_bar.
  RationalMatrix b_bar_product;
  /// The b-matrix as printed alongside r_bar and s_bar, kept for comparison.
  RationalMatrix b_bar_printed;
};

PushforwardSet build_matrices(int d);

/// (p + sqrt(disc)) / 2 with p = 2d^2 - 3d and disc = p^2 - 4(d-1), the larger
/// root of x^2 - p x + (d-1).
struct Lambda1 {
  int d = 0;
  BigInt p;
  BigInt disc;
  RationalPolynomial quadratic;
  double value = 0.0;

  /// Exact form with square factors pulled out of the radical, e.g.
  /// "(9 + sqrt(73))/2"; integers are printed bare.
  std::string surd() const;
  /// Exact test of value >= bound.
  bool at_least(const BigInt& bound) const;
};

Lambda1 lambda1(int d);

struct DegreeGrowth {
  int d = 0;
  /// a_n = (1,1,0,0) b^n (1,1,0,0)^T for n = 0..n_max.
  std::vector<BigInt> a;
  /// a_{n+1} / a_n.
  std::vector<double> ratios;
  /// Spectral radius of char_poly(b_bar_product).
  double radius = 0.0;
};

DegreeGrowth degree_growth(int d, int n_max);

/// (x - (d-1))^2 (x^2 - (2d^3 - 2d) x + d - 1), as displayed with the printed matrix.
RationalPolynomial displayed_char_poly(int d);
/// (x - (d-1))^2 (x^2 - (2d^2 - 3d) x + d - 1), the factorization matching lambda1.
RationalPolynomial substitute_char_poly(int d);

/// Compares r_bar*s_bar, the printed b-matrix and the two factorizations:
/// traces, determinants, characteristic polynomials and entries. The only
/// assertion is that every candidate has trace 2d^2 - d - 2; the comparison
/// table is in notes.
Report consistency_report(int d);

/// [[1,0],[d(d-1),1]] * [[d-1,2],[0,d-1]].
RationalMatrix naive_product(int d);
/// Spectral radius of naive_product(d).
double naive_bound(int d);

/// x^3 - (2d^2 - d - 3) x^2 + (2d^2 - 4d + 3) x - (d - 1).
RationalPolynomial conjecture_poly(int d);
/// Largest root modulus of conjecture_poly(d).
double conjecture_rho(int d);

/// Everything the dd subcommand prints for one degree.
Json dd_summary(int d);

}  // namespace billiards

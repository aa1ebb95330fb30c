#pragma once

#include <optional>
#include <string>
#include <vector>

#include "billiards/algebra/complex.hpp"
#include "billiards/algebra/gaussian_rational.hpp"

namespace billiards {

/// Power series in z with exact Q(i) coefficients, truncated modulo z^(N+1).
class TruncatedSeries {
 public:
  TruncatedSeries() = default;
  /// Zero series of order N.
  explicit TruncatedSeries(int order);
  /// Coefficients 0..N; missing entries are zero, extra entries are dropped.
  TruncatedSeries(int order, std::vector<GaussianRational> coeffs);

  static TruncatedSeries constant(int order, const GaussianRational& c);
  /// The series z.
  static TruncatedSeries variable(int order);

  int order() const noexcept { return n_; }
  const GaussianRational& operator[](int k) const { return c_[static_cast<std::size_t>(k)]; }
  GaussianRational& operator[](int k) { return c_[static_cast<std::size_t>(k)]; }
  const std::vector<GaussianRational>& coefficients() const noexcept { return c_; }

  bool is_zero() const;
  /// Index of the first nonzero coefficient; nullopt for the zero series.
  std::optional<int> valuation() const;

  TruncatedSeries derivative() const;
  /// Integer power; negative powers need a unit constant term.
  TruncatedSeries pow(int e) const;
  Complex evaluate(Complex z) const;
  std::string str(const std::string& var = "z") const;

  TruncatedSeries& operator+=(const TruncatedSeries& o);
  TruncatedSeries& operator-=(const TruncatedSeries& o);
  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  friend TruncatedSeries operator-(const TruncatedSeries& a);
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator*(const GaussianRational& s, TruncatedSeries a);
  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.n_ == b.n_ && a.c_ == b.c_;
  }

 private:
  int n_ = 0;
  std::vector<GaussianRational> c_;
};

/// Orders must agree; throws InvalidArgument otherwise.
TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b);
/// Throws NonUnitSeries when a(0) = 0.
TruncatedSeries series_inverse(const TruncatedSeries& a);
/// a(b(z)); throws InvalidArgument unless b(0) = 0.
TruncatedSeries series_compose(const TruncatedSeries& a, const TruncatedSeries& b);

/// Series in (z, z') with exact coefficients, truncated modulo total degree N+1.
/// Storage is triangular: (i, j) with i + j <= N.
class BivariateTruncatedSeries {
 public:
  BivariateTruncatedSeries() = default;
  explicit BivariateTruncatedSeries(int order);

  /// f(z) and f(z') lifted from a univariate series of the same order.
  static BivariateTruncatedSeries from_z(const TruncatedSeries& f);
  static BivariateTruncatedSeries from_zprime(const TruncatedSeries& f);

  int order() const noexcept { return n_; }
  /// Coefficient of z^i z'^j; zero when i + j > N.
  GaussianRational coefficient(int i, int j) const;
  GaussianRational& at(int i, int j);

  bool is_zero() const;
  /// Smallest total degree carrying a nonzero coefficient; nullopt for zero.
  std::optional<int> min_total_degree() const;
  /// Homogeneous component of total degree t as coefficients of z^i z'^(t-i), i = 0..t.
  std::vector<GaussianRational> stratum(int t) const;

  /// (z, z') -> (z', z).
  BivariateTruncatedSeries swapped() const;
  /// g(z) = F(z, z).
  TruncatedSeries diagonal() const;

  /// F / (z' - z). The recurrence is exact modulo total degree N, so the
  /// result has order N - 1. Throws NotDivisible when F does not vanish on
  /// the diagonal.
  BivariateTruncatedSeries divide_by_difference() const;

  Complex evaluate(Complex z, Complex zp) const;

  friend BivariateTruncatedSeries operator+(const BivariateTruncatedSeries& a,
                                            const BivariateTruncatedSeries& b);
  friend BivariateTruncatedSeries operator-(const BivariateTruncatedSeries& a,
                                            const BivariateTruncatedSeries& b);
  friend BivariateTruncatedSeries operator*(const BivariateTruncatedSeries& a,
                                            const BivariateTruncatedSeries& b);
  friend BivariateTruncatedSeries operator*(const GaussianRational& s, BivariateTruncatedSeries a);
  friend bool operator==(const BivariateTruncatedSeries& a, const BivariateTruncatedSeries& b) {
    return a.n_ == b.n_ && a.c_ == b.c_;
  }

 private:
  std::size_t index(int i, int j) const noexcept;
  int n_ = 0;
  std::vector<GaussianRational> c_;
};

}  // namespace billiards

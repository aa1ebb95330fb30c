#pragma once

#include <cstdint>
#include <utility>

#include "billiards/algebra/polynomial.hpp"
#include "billiards/algebra/series.hpp"
#include "billiards/report.hpp"

namespace billiards {

/// The branch z1 = B(z0) of z0^d + (1 + z1)^d = 1 through the origin.
struct SeriesB {
  int d = 0;
  TruncatedSeries series;
};

/// Exact solution modulo z^(N+1). Throws InvalidArgument unless d >= 2 and N >= d.
SeriesB solve_B(int d, int n);

/// U = (1 + B)^(-(d-1)), the unit in r: (y, z) -> (z^(d-1) U(z) / y, z).
/// Requires N >= 2d.
TruncatedSeries local_r_unit(int d, int n);

/// Q(z, z') = -d (B(z') - B(z)) / (z' - z), of order N - 1.
BivariateTruncatedSeries local_s_quotient(int d, int n);

/// A = Q - sum_{i<d} z^i z'^(d-1-i). Requires N >= 2d.
BivariateTruncatedSeries local_s_residual(int d, int n);

struct ChartPoint {
  int k = 0;
  Complex u;
  Complex v;

  /// pi_k(u, v) = (u v^k, v)
  std::pair<Complex, Complex> to_yz() const;
};

/// Restriction of r to the exceptional divisors: (k, u) -> (d-1-k, 1/u).
/// Throws ZeroInput for u = 0 and InvalidArgument for k outside [0, d-1].
std::pair<int, Complex> micro_r(int d, int k, Complex u);

/// Restriction of s to E_k for (d-1)/2 <= k <= d-1: the values u / alpha^k
/// over the roots of 1 + alpha + ... + alpha^(d-1) + w_k d u^2, with w_k = 1
/// exactly when 2k = d-1. Coincident images are merged within tol.
RootMultiset micro_s(int d, int k, Complex u, double tol = kDefaultRootTol);

struct ChartOptions {
  int d = 3;
  int n = 0;  ///< series order; 0 selects 2d + 2
  int samples = 50;
  std::uint64_t seed = 1;
  /// Acceptance bound for the r-chart deviation at |v| = 1e-4.
  double bound = 1e-6;
};

/// Compares the series-level r and s, pushed through pi_k and pulled back
/// through the target chart, with micro_r and micro_s at |v| = 1e-3, 1e-4,
/// 1e-5, and fits the convergence order.
Report verify_chart_consistency(const ChartOptions& options);

/// Exact checks of solve_B, local_r_unit and local_s_residual for one d.
Report verify_series(int d, int n);

}  // namespace billiards

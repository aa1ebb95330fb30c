#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "billiards/algebra/complex.hpp"
#include "billiards/report.hpp"

namespace billiards {

/// Branch counts reach (d-1)^n; 128 bits covers d = 8 beyond 45 levels.
using Multiplicity = unsigned __int128;

std::string to_string(Multiplicity m);

struct MidEntry {
  RiemannPoint u;
  Multiplicity multiplicity = 1;
};

using MidMultiset = std::vector<MidEntry>;

Multiplicity total_multiplicity(const MidMultiset& m) noexcept;

/// 1/u with 0 and ∞ exchanged.
RiemannPoint rho(RiemannPoint u) noexcept;

/// Odd d >= 3, k = (d-1)/2: {u / alpha^k : 1 + alpha + ... + alpha^(d-1) + d u^2 = 0},
/// and sigma(∞) = {u^2 = -1/d}, each with multiplicity k. A root alpha = 0 gives ∞.
MidMultiset sigma(int d, RiemannPoint u);
/// {alpha^k / u : same alpha}; beta(∞) = {u^2 = -d}, beta(0) = {∞} with multiplicity d-1.
MidMultiset beta(int d, RiemannPoint u);

/// Even d >= 2: {u / alpha^(d-1) : 1 + ... + alpha^(d-1) + d u = 0}, sigma_plus(∞) = {-1/d}.
MidMultiset sigma_plus(int d, RiemannPoint u);
/// {alpha^(d-1) / u : same alpha}; beta_plus(∞) = {-d}, beta_plus(0) = {∞}.
MidMultiset beta_plus(int d, RiemannPoint u);

/// beta for odd d, beta_plus for even d.
MidMultiset lifted_step(int d, RiemannPoint u);

struct IndExcPoints {
  std::vector<Complex> ind;
  std::vector<Complex> exc;
};

/// Odd: ind {u^2 = -1/d}, exc {u^2 = -d}. Even: ind {-1/d}, exc {-d}.
IndExcPoints ind_exc_points(int d);

/// Merges states closer than radius * max(1, |u|), summing multiplicities.
MidMultiset dedupe(MidMultiset m, double radius);

struct LevelBudget {
  std::size_t per_level = 100000;
  double dedupe_radius = 1e-9;
  /// When false, exceeding per_level throws BudgetExceeded instead of pruning.
  bool prune = true;
};

struct LevelStats {
  int level = 0;
  std::size_t states = 0;
  Multiplicity total = 0;
  /// Multiplicity at this level descending from pruned states.
  Multiplicity pruned = 0;
  double min_modulus = 0.0;
  double max_modulus = 0.0;
  double min_ind_distance = 0.0;
  bool has_infinity = false;
};

struct MidOrbit {
  int d = 0;
  std::vector<LevelStats> stats;
  /// Only filled when requested.
  std::vector<MidMultiset> levels;

  Json to_json() const;
  std::string to_csv() const;
};

/// Applies lifted_step to every state for the given number of levels. When a
/// level has more distinct states than the budget, the states of smallest
/// and largest modulus are kept (half each) and the rest counted as pruned.
MidOrbit iterate_levels(int d, MidMultiset start, int levels, const LevelBudget& budget,
                        bool keep_levels = false);

struct InvarianceOptions {
  int d = 3;
  int samples = 10000;
  int iters = 10;
  double tol = 1e-9;
  std::uint64_t seed = 1;
  /// Seeds on |u| = 1 instead of 1 <= |u| <= 10.
  bool boundary = false;
  LevelBudget budget;
};

/// Iterates all seeds jointly and checks min |u| >= 1 - tol over every level.
Report invariance_scan(const InvarianceOptions& options, MidOrbit* orbit = nullptr);

/// Iterates the exc points and checks every state stays (1 - 1/sqrt(d))/2 away
/// from the ind points.
Report stability_orbit(int d, int steps, const LevelBudget& budget = {}, MidOrbit* orbit = nullptr);

/// Iterates u0 = ∞ and checks that ∞ never reappears and |u| >= 1 - 1e-9.
Report nonreflectivity_witness(int d, int n, const LevelBudget& budget = {}, MidOrbit* orbit = nullptr);

}  // namespace billiards

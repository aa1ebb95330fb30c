#pragma once

#include <cstdint>
#include <vector>

#include "billiards/billiard/dynamics.hpp"

namespace billiards {

struct ReflectiveScanOptions {
  int d = 3;
  /// Largest period examined; every depth 1..n of the tree is checked.
  int n = 4;
  int samples = 500;
  double tol = 1e-6;
  std::uint64_t seed = 1;
  std::size_t node_budget = kDefaultNodeBudget;
};

struct ReturnCount {
  int period = 0;
  /// Samples with some node at this depth within tol of the start.
  int returns = 0;
  /// Smallest phase distance to the start over those nodes and samples.
  double min_distance = 0.0;
  int flagged_nodes = 0;
};

/// Depth-n orbit trees from the given starts; each node carries a pointwise
/// image, so a return means some branch composite comes back.
std::vector<ReturnCount> scan_returns(const PlaneCurve& c, const QuadraticForm& theta,
                                      const std::vector<PhasePoint>& starts, int n, double tol,
                                      std::size_t node_budget = kDefaultNodeBudget);

/// Random regular phase points on the Fermat hyperbola of degree d; expects
/// no returns at any period up to n.
Report reflective_scan_complex(const ReflectiveScanOptions& options);

/// The unit circle with the Euclidean form: the phase point at (1, 0) whose
/// chord subtends 2 pi k / period, perturbed by detune in angle.
PhasePoint circle_rotation_start(int period, int k = 1, double detune = 0.0);

/// Runs scan_returns on circle_rotation_start(period) with depth
/// period + 1 and checks the first return is at exactly the period; a
/// detuned start must not return.
Report circle_positive_control(int period, double tol = 1e-6);

}  // namespace billiards

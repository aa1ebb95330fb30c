#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "billiards/error.hpp"
#include "billiards/geometry/curve.hpp"
#include "billiards/geometry/phase.hpp"
#include "billiards/report.hpp"

namespace billiards {

inline constexpr double kStepTol = 1e-9;
inline constexpr double kIndeterminacyThreshold = 1e-6;
inline constexpr double kDedupeRadius = 1e-7;
inline constexpr std::size_t kDefaultNodeBudget = 100000;

struct ImageEntry {
  PhasePoint point;
  int multiplicity = 1;
  /// Set when this branch could not be completed; point then holds the last
  /// state reached (the secant image, before reflection).
  std::optional<ErrorCode> flag;
};

struct ImageMultiset {
  std::vector<ImageEntry> entries;

  int total_multiplicity() const noexcept;
  bool any_flagged() const noexcept;
};

/// f(x + t q) for q = p.v.line_vector(theta).
ComplexPolynomial secant_polynomial(const PlaneCurve& c, const QuadraticForm& theta, const PhasePoint& p);

/// The other intersections of the line through p.x in direction p.v with the
/// curve, each with the direction p.v.
///
/// Throws NotOnCurve when |f(x)| > tol * scale, NoZeroRoot when the line
/// polynomial does not vanish at t = 0 to tol, and IndeterminateSecant when
/// its t^d coefficient is below tol relative to the top-degree form's
/// magnitude at the line direction.
ImageMultiset secant_step(const PlaneCurve& c, const QuadraticForm& theta, const PhasePoint& p,
                          double tol = kStepTol);

/// Reflection of p.v across the tangent line at p.x with respect to theta:
/// v' = v - 2 B(v, n) / Theta(n, n) n with n = G^{-1} grad f, evaluated in the
/// isotropic frame as w -> w_t^2 / w. Isotropic directions are exchanged.
///
/// Throws SingularPoint when grad f vanishes to tol, and
/// IndeterminateReflection when the normalized |Theta(n, n)| is below
/// threshold (isotropic tangent).
PhasePoint reflect_step(const PlaneCurve& c, const QuadraticForm& theta, const PhasePoint& p,
                        double tol = kStepTol, double threshold = kIndeterminacyThreshold);

/// Reflection applied to every secant image. Branches whose reflection fails
/// are kept with their error code in flag.
ImageMultiset billiard_step(const PlaneCurve& c, const QuadraticForm& theta, const PhasePoint& p,
                            double tol = kStepTol, double threshold = kIndeterminacyThreshold);

enum class IndeterminacyTag { Regular, NearIndS, NearIndR };

const char* to_string(IndeterminacyTag tag) noexcept;

struct IndeterminacyClass {
  IndeterminacyTag tag = IndeterminacyTag::Regular;
  /// Distance to the matched catalog, or to the nearer one when Regular.
  double distance = 0.0;
  double distance_s = 0.0;
  double distance_r = 0.0;
};

/// Ind s and Ind r of the Fermat hyperbola of degree d with the Euclidean form.
struct IndeterminacyCatalog {
  int degree = 0;
  std::vector<CatalogPoint> ind_s;
  std::vector<PhasePoint> ind_r;

  static IndeterminacyCatalog fermat(int d);
  IndeterminacyClass classify(const PhasePoint& p, double threshold = kIndeterminacyThreshold) const;
};

IndeterminacyClass classify(const PhasePoint& p, int d, double threshold = kIndeterminacyThreshold);

struct OrbitNode {
  PhasePoint point;
  int parent = -1;
  int depth = 0;
  /// Multiplicity of the branch from the parent, summed over merged siblings.
  int multiplicity = 1;
  /// Product of multiplicities along the path from the root.
  std::uint64_t weight = 1;
  /// Why this node was not expanded further, if it was cut short.
  std::optional<ErrorCode> flag;
};

struct OrbitTree {
  std::vector<OrbitNode> nodes;
  int depth = 0;

  const OrbitNode& root() const { return nodes.front(); }
  Json to_json() const;
};

struct OrbitOptions {
  int depth = 0;
  double tol = kStepTol;
  double threshold = kIndeterminacyThreshold;
  double dedupe_radius = kDedupeRadius;
  std::size_t node_budget = kDefaultNodeBudget;
};

/// Breadth-first expansion of billiard_step. Throws BudgetExceeded when
/// 1 + (d-1) + ... + (d-1)^depth exceeds the node budget.
OrbitTree orbit_tree(const PlaneCurve& c, const QuadraticForm& theta, const PhasePoint& p,
                     const OrbitOptions& options);

/// Greedy matching distance between two multisets expanded by multiplicity;
/// +inf when the totals or the flag patterns differ.
double multiset_distance(const ImageMultiset& a, const ImageMultiset& b);

struct ConjugacyOptions {
  int samples = 100;
  std::uint64_t seed = 1;
  /// Linear map on affine coordinates; J by default.
  std::optional<Mat2> transform;
  double tol = kStepTol;
  double max_discrepancy = 1e-8;
};

/// Samples phase points of c, steps them on (c, theta) and pushes the images
/// through L x L_*, and compares with stepping the pushed points on
/// (L(c), L_* theta).
Report conjugacy_check(const PlaneCurve& c, const QuadraticForm& theta, const ConjugacyOptions& options);

/// A random phase point of c with a complex Gaussian direction parameter.
PhasePoint sample_phase_point(const PlaneCurve& c, std::mt19937_64& rng);

}  // namespace billiards

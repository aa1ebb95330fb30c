#pragma once

#include <cstdint>

#include "billiards/report.hpp"

namespace billiards {

/// Points at infinity, the isotropic tangency catalog (membership, tangency
/// order d, secant polynomial c t^d) and the symmetry group of the Fermat
/// hyperbola of degree d.
Report verify_geometry(int d);

struct PropertySuiteOptions {
  int d = 3;
  int samples = 1000;
  std::uint64_t seed = 1;
  double adjoint_tol = 1e-8;
  double reflect_tol = 1e-10;
  double conjugacy_tol = 1e-8;
};

/// Self-adjointness of s, involution and Θ-norm preservation of r, the
/// multiplicity of billiard_step and J-conjugacy, on random regular samples of
/// the Fermat hyperbola with the Euclidean form. The Θ-norm deviation is taken
/// relative to sum |G_ij| |q_i| |q_j|.
Report billiard_properties(const PropertySuiteOptions& options);

}  // namespace billiards

#pragma once

#include <span>
#include <vector>

#include <json.hpp>

#include "degsol/potential.hpp"
#include "degsol/spinor_field.hpp"

namespace degsol {

enum class DegeneracyClass { degenerate, nondegenerate, indeterminate };

enum class Helicity { positive, negative };

// Classifies a spinor function by the criterion bilinear over sample points:
// degenerate if |psi^dag (g0 + g0 g5) psi| <= 1e-10 |psi|^2 everywhere,
// nondegenerate if > 1e-6 |psi|^2 everywhere, indeterminate otherwise.
// Requires at least 10 points.
DegeneracyClass is_degenerate(const SpinorField& psi,
                              std::span<const SpacetimePoint> pts);

// Closed-form degeneracy direction from the transpose bilinears. Normalized
// so the time component is exactly 1. Throws SingularDenominator when
// |psi^T g2 psi| <= 1e-10 |psi|^2.
Vec4 theta_direction(const Spinor4& psi);

// Two-component analogue from Pauli expectations; the spatial sign flips with
// helicity (minus for positive, plus for negative). Throws ZeroSpinor.
Vec4 phi_direction(const Spinor2& psi, Helicity helicity);

// Unique-potential inverse for nondegenerate spinors. Requires the criterion
// denominator |psibar g5 psi| > 1e-10 |psi|^2 and exact derivatives.
// Throws SingularDenominator or NonRealPotential.
Vec4 blj_potential(const SpinorField& psi, const SpacetimePoint& pt);

struct InferenceResult {
  Vec4 particular{};                 // minimum-norm solution
  std::vector<Vec4> nullspace;       // orthonormal basis
  double residual_floor = 0.0;       // least-squares residual
  std::array<double, 4> singular_values{};
  double scale = 0.0;                // magnitude the floor is compared against

  nlohmann::json to_json() const;
};

// Pointwise least-squares recovery of all real 4-potentials compatible with
// the four-component equation at pt: the equation is linear in a_mu, giving
// eight real equations in four unknowns. Null-space vectors are the singular
// directions below 1e-8 * sigma_max. Throws NoSolution when the residual
// floor exceeds 1e-6 * scale.
InferenceResult infer_potentials(const SpinorField& psi, double mass,
                                 const SpacetimePoint& pt);

// Same recovery against one of the two-component equation forms.
InferenceResult infer_weyl_potentials(const WeylSpinorField& psi, WeylForm form,
                                      const SpacetimePoint& pt);

// b_mu = a_mu + s * dir_mu, kept tree-backed so derived fields stay exact.
FourPotential extend_potential(const FourPotential& a, const ScalarField& s,
                               const DirectionField& dir);

struct DirectionMatch {
  Vec4 closed_form{};
  Vec4 nullspace_direction{};
  bool matched = false;
  double max_component_diff = 0.0;
  int nullspace_dimension = 0;
};

// Cross-validates a published closed-form direction against the inference
// null space at one point. On mismatch the null space is authoritative and
// `matched` reports the disagreement; nothing is patched.
DirectionMatch validate_direction(const SpinorField& psi, double mass,
                                  const DirectionField& dir,
                                  const SpacetimePoint& pt, double tol = 1e-8);

}  // namespace degsol

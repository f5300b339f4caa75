#pragma once

#include <array>
#include <functional>
#include <optional>

#include "degsol/scalar_field.hpp"

namespace degsol {

using Vec4 = std::array<double, 4>;
// jac[mu][nu] = d a_mu / d x_nu, axis order (t, x, y, z).
using Mat4x4 = std::array<std::array<double, 4>, 4>;

// Real electromagnetic 4-potential a_mu = q A_mu in natural units. Usually
// tree-backed (exact Jacobian); opaque callables fall back to central
// differences when differentiated.
class FourPotential {
 public:
  FourPotential();  // identically zero

  explicit FourPotential(std::array<ScalarField, 4> comps);
  explicit FourPotential(std::function<Vec4(const SpacetimePoint&)> fn);

  Vec4 value(const SpacetimePoint& p) const;
  Mat4x4 jacobian(const SpacetimePoint& p) const;

  bool has_exact_jacobian() const { return comps_.has_value(); }
  const std::array<ScalarField, 4>& components() const;

 private:
  std::optional<std::array<ScalarField, 4>> comps_;
  std::array<std::array<ScalarField, 4>, 4> jac_;
  std::function<Vec4(const SpacetimePoint&)> fn_;
};

// Degeneracy direction field theta_mu(p), normalized so theta_0 = 1. The
// components may vary over spacetime (wave-like families) and stay
// tree-backed so extended potentials keep exact derivatives.
class DirectionField {
 public:
  DirectionField();  // (1, 0, 0, 0)

  explicit DirectionField(std::array<ScalarField, 4> comps);
  static DirectionField constant(double d1, double d2, double d3);

  Vec4 value(const SpacetimePoint& p) const;
  const std::array<ScalarField, 4>& components() const { return comps_; }

 private:
  std::array<ScalarField, 4> comps_;
};

}  // namespace degsol

#pragma once

#include <array>
#include <functional>
#include <optional>

#include "degsol/algebra.hpp"
#include "degsol/errors.hpp"
#include "degsol/scalar_field.hpp"

namespace degsol {

enum class WeylForm { positive, negative };

// Spacetime-dependent four-spinor. Tree-backed fields carry exact gradients;
// opaque callables are supported for cross-checks and fall back to
// DerivativeUnavailable when an exact gradient is requested.
class SpinorField {
 public:
  explicit SpinorField(std::array<ScalarField, 4> comps)
      : comps_(std::move(comps)) {
    for (int mu = 0; mu < 4; ++mu)
      for (int i = 0; i < 4; ++i)
        grads_[mu][i] = (*comps_)[i].derivative(mu);
  }

  explicit SpinorField(std::function<Spinor4(const SpacetimePoint&)> fn)
      : fn_(std::move(fn)) {}

  Spinor4 value(const SpacetimePoint& p) const {
    if (comps_) {
      Spinor4 v;
      for (int i = 0; i < 4; ++i) v[i] = (*comps_)[i](p);
      return v;
    }
    return fn_(p);
  }

  bool has_exact_gradient() const { return comps_.has_value(); }

  // gradient(p)[mu] = d_mu psi, axis order (t, x, y, z).
  std::array<Spinor4, 4> gradient(const SpacetimePoint& p) const {
    if (!comps_)
      throw DerivativeUnavailable(
          "spinor field is opaque; exact derivatives unavailable");
    std::array<Spinor4, 4> g;
    for (int mu = 0; mu < 4; ++mu)
      for (int i = 0; i < 4; ++i) g[mu][i] = grads_[mu][i](p);
    return g;
  }

  const std::array<ScalarField, 4>& components() const {
    if (!comps_) throw DerivativeUnavailable("spinor field is opaque");
    return *comps_;
  }

 private:
  std::optional<std::array<ScalarField, 4>> comps_;
  std::array<std::array<ScalarField, 4>, 4> grads_;
  std::function<Spinor4(const SpacetimePoint&)> fn_;
};

class WeylSpinorField {
 public:
  explicit WeylSpinorField(std::array<ScalarField, 2> comps)
      : comps_(std::move(comps)) {
    for (int mu = 0; mu < 4; ++mu)
      for (int i = 0; i < 2; ++i)
        grads_[mu][i] = (*comps_)[i].derivative(mu);
  }

  explicit WeylSpinorField(std::function<Spinor2(const SpacetimePoint&)> fn)
      : fn_(std::move(fn)) {}

  Spinor2 value(const SpacetimePoint& p) const {
    if (comps_) return {(*comps_)[0](p), (*comps_)[1](p)};
    return fn_(p);
  }

  bool has_exact_gradient() const { return comps_.has_value(); }

  std::array<Spinor2, 4> gradient(const SpacetimePoint& p) const {
    if (!comps_)
      throw DerivativeUnavailable(
          "weyl spinor field is opaque; exact derivatives unavailable");
    std::array<Spinor2, 4> g;
    for (int mu = 0; mu < 4; ++mu)
      for (int i = 0; i < 2; ++i) g[mu][i] = grads_[mu][i](p);
    return g;
  }

  // Four-spinor embedding: (psi, psi) for the positive-helicity form,
  // (psi, -psi) for the negative one. The embedding solves the massless
  // four-component equation whenever psi solves its two-component form.
  SpinorField embed(WeylForm form) const;

 private:
  std::optional<std::array<ScalarField, 2>> comps_;
  std::array<std::array<ScalarField, 2>, 4> grads_;
  std::function<Spinor2(const SpacetimePoint&)> fn_;
};

}  // namespace degsol

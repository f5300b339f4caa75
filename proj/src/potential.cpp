#include "degsol/potential.hpp"

#include "degsol/errors.hpp"

namespace degsol {

namespace {

// Central-difference step for opaque potentials.
double fd_step(double coord) { return 1e-5 * std::max(1.0, std::abs(coord)); }

}  // namespace

FourPotential::FourPotential()
    : FourPotential(std::array<ScalarField, 4>{}) {}

FourPotential::FourPotential(std::array<ScalarField, 4> comps)
    : comps_(std::move(comps)) {
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu)
      jac_[mu][nu] = (*comps_)[mu].derivative(nu);
}

FourPotential::FourPotential(std::function<Vec4(const SpacetimePoint&)> fn)
    : fn_(std::move(fn)) {}

Vec4 FourPotential::value(const SpacetimePoint& p) const {
  if (comps_) {
    Vec4 v;
    for (int mu = 0; mu < 4; ++mu) v[mu] = (*comps_)[mu].real_at(p, 1e-9);
    return v;
  }
  return fn_(p);
}

Mat4x4 FourPotential::jacobian(const SpacetimePoint& p) const {
  Mat4x4 j;
  if (comps_) {
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu) j[mu][nu] = jac_[mu][nu].real_at(p, 1e-9);
    return j;
  }
  for (int nu = 0; nu < 4; ++nu) {
    const double h = fd_step(p[nu]);
    SpacetimePoint hi = p, lo = p;
    hi[nu] += h;
    lo[nu] -= h;
    const Vec4 vh = fn_(hi), vl = fn_(lo);
    for (int mu = 0; mu < 4; ++mu) j[mu][nu] = (vh[mu] - vl[mu]) / (2.0 * h);
  }
  return j;
}

const std::array<ScalarField, 4>& FourPotential::components() const {
  if (!comps_)
    throw DerivativeUnavailable("potential is opaque; no expression trees");
  return *comps_;
}

DirectionField::DirectionField() {
  comps_[0] = ScalarField::constant(1.0);
}

DirectionField::DirectionField(std::array<ScalarField, 4> comps)
    : comps_(std::move(comps)) {}

DirectionField DirectionField::constant(double d1, double d2, double d3) {
  return DirectionField({ScalarField::constant(1.0), ScalarField::constant(d1),
                         ScalarField::constant(d2), ScalarField::constant(d3)});
}

Vec4 DirectionField::value(const SpacetimePoint& p) const {
  Vec4 v;
  for (int mu = 0; mu < 4; ++mu) v[mu] = comps_[mu].real_at(p, 1e-9);
  return v;
}

}  // namespace degsol

#include "degsol/spinor_field.hpp"

namespace degsol {

SpinorField WeylSpinorField::embed(WeylForm form) const {
  const double sign = form == WeylForm::positive ? 1.0 : -1.0;
  if (comps_) {
    const auto& c = *comps_;
    return SpinorField({c[0], c[1], sign * c[0], sign * c[1]});
  }
  auto fn = fn_;
  return SpinorField([fn, sign](const SpacetimePoint& p) {
    const Spinor2 v = fn(p);
    return Spinor4{v[0], v[1], sign * v[0], sign * v[1]};
  });
}

}  // namespace degsol

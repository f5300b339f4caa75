#pragma once

#include <array>
#include <cstdint>
#include <memory>

#include <json.hpp>

#include "degsol/core.hpp"

namespace degsol {

// Closed-form scalar function of four coordinates, stored as an expression
// tree over {const, var, +, *, pow<=4, sin, cos, exp, gaussian}. The node set
// is closed under differentiation, so first and second derivatives are exact.
//
// Coordinates are abstract: axis 0..3 usually binds to (t, x, y, z), but
// family constructors rebind them (e.g. to transformed coordinates) via
// substitute(). Constants may be complex; evaluation propagates complex
// values through every node.
class ScalarField {
 public:
  ScalarField();  // identically zero

  static ScalarField constant(cd value);
  static ScalarField var(int axis);

  // c0*t + c1*x + c2*y + c3*z + offset
  static ScalarField linear(cd c0, cd c1, cd c2, cd c3, cd offset = 0.0);

  // Seeded random field from a bounded smooth catalog: a few sinusoid and
  // gaussian terms with O(1) amplitudes and wavenumbers. Real-valued.
  static ScalarField random_catalog(std::uint64_t& state);

  ScalarField pow(int exponent) const;  // exponent in 2..4

  cd operator()(const SpacetimePoint& p) const;
  cd eval(const std::array<cd, 4>& args) const;

  // Evaluates and checks that the imaginary part is below tol * (1 + |value|).
  double real_at(const SpacetimePoint& p, double tol = 1e-10) const;

  ScalarField derivative(int axis) const;
  ScalarField substitute(const std::array<ScalarField, 4>& repl) const;

  bool depends_on(int axis) const;
  bool is_structural_zero() const;

  nlohmann::json to_json() const;
  static ScalarField from_json(const nlohmann::json& j);

  friend ScalarField operator+(const ScalarField& a, const ScalarField& b);
  friend ScalarField operator-(const ScalarField& a, const ScalarField& b);
  friend ScalarField operator*(const ScalarField& a, const ScalarField& b);
  friend ScalarField operator-(const ScalarField& a);
  friend ScalarField sin(const ScalarField& a);
  friend ScalarField cos(const ScalarField& a);
  friend ScalarField exp(const ScalarField& a);
  friend ScalarField gaussian(const ScalarField& a);  // exp(-a^2)

  struct Node;

 private:
  explicit ScalarField(std::shared_ptr<const Node> root);
  std::shared_ptr<const Node> root_;
};

inline ScalarField operator*(cd s, const ScalarField& f) {
  return ScalarField::constant(s) * f;
}
inline ScalarField operator*(const ScalarField& f, cd s) {
  return ScalarField::constant(s) * f;
}
inline ScalarField operator+(cd s, const ScalarField& f) {
  return ScalarField::constant(s) + f;
}
inline ScalarField operator+(const ScalarField& f, cd s) {
  return ScalarField::constant(s) + f;
}
inline ScalarField operator-(const ScalarField& f, cd s) {
  return f - ScalarField::constant(s);
}
inline ScalarField operator-(cd s, const ScalarField& f) {
  return ScalarField::constant(s) - f;
}

}  // namespace degsol

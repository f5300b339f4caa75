#pragma once

#include <functional>
#include <span>

#include <json.hpp>

#include "degsol/potential.hpp"

namespace degsol {

// Electromagnetic field values in Gaussian units with c = 1. The scalar and
// vector potentials are U = a0/q and A = -(a1, a2, a3)/q; the minus sign is
// tied to the sign convention of the governing equation.
struct FieldSample {
  Vec3 E;
  Vec3 B;
};

FieldSample em_fields(const FourPotential& a, double q,
                      const SpacetimePoint& pt);

// Printed closed-form field families, evaluated directly (no differentiation
// of the potential). Each kind uses the subset of parameters listed below.
enum class ClosedFormKind {
  massless_shift,      // angles theta/phi + shift function s
  copropagating_wave,  // plane wave along +z: e_w*, delta_w*, k_w
  barrier_shift,       // shift function s along (1,0,1,0)
  transverse_wave,     // plane wave along -y: e_w*, delta_w*, k_w
  wavelike_base,       // mass, alpha, beta
  wavelike_shift,      // mass, alpha, beta, constant shift s_const
  localized_weyl,      // angle schedules theta_t, phi_t
};

struct ClosedFormSpec {
  ClosedFormKind kind = ClosedFormKind::massless_shift;
  double q = 1.0;
  double theta = 0.0, phi = 0.0;
  ScalarField s;
  double e_w1 = 0.0, e_w2 = 0.0, delta_w1 = 0.0, delta_w2 = 0.0, k_w = 1.0;
  double mass = 0.0, alpha = 0.0, beta = 0.0, s_const = 0.0;
  ScalarField theta_t, phi_t;
};

FieldSample closed_form_fields(const ClosedFormSpec& spec,
                               const SpacetimePoint& pt);

// Energy flux S = E x B / (4 pi).
Vec3 poynting(const Vec3& e, const Vec3& b);

struct MaxwellReport {
  double max_div_e = 0.0;
  double max_div_b = 0.0;
  double max_faraday = 0.0;  // |curl E + dB/dt|
  double max_ampere = 0.0;   // |curl B - dE/dt|
  double scale = 0.0;        // derivative magnitude the residuals compare to

  double max_relative() const {
    const double m = std::max({max_div_e, max_div_b, max_faraday, max_ampere});
    return scale > 0.0 ? m / scale : m;
  }
  nlohmann::json to_json() const;
};

using FieldFunction = std::function<Vec3(const SpacetimePoint&)>;

// Source-free Maxwell residuals of a candidate (E, B) pair, via fourth-order
// central differences with step h * max(1, |coord|).
MaxwellReport maxwell_vacuum_check(const FieldFunction& e_field,
                                   const FieldFunction& b_field,
                                   std::span<const SpacetimePoint> pts,
                                   double step = 1e-3);

// Longitudinal magnetic field shaping a positive transverse density profile
// f(x, y): B = -(1/q) [ (df/dx)^2 + (df/dy)^2 - f (d2f/dx2 + d2f/dy2) ] / f^2 k.
FieldSample profile_field(const ScalarField& f, double q,
                          const SpacetimePoint& pt);

}  // namespace degsol

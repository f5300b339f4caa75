#include "degsol/fields.hpp"

#include <cmath>

#include "degsol/errors.hpp"

namespace degsol {

namespace {

Vec3 direction_unit(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
          std::cos(theta)};
}

// d/dcoord of a field component by fourth-order central differences.
double fd4(const std::function<double(const SpacetimePoint&)>& f,
           SpacetimePoint p, int axis, double step) {
  const double h = step * std::max(1.0, std::abs(p[axis]));
  SpacetimePoint p1 = p, p2 = p, p3 = p, p4 = p;
  p1[axis] += 2 * h;
  p2[axis] += h;
  p3[axis] -= h;
  p4[axis] -= 2 * h;
  return (-f(p1) + 8 * f(p2) - 8 * f(p3) + f(p4)) / (12 * h);
}

}  // namespace

FieldSample em_fields(const FourPotential& a, double q,
                      const SpacetimePoint& pt) {
  if (q == 0.0) throw Error("em_fields: charge must be nonzero");
  const Mat4x4 j = a.jacobian(pt);  // j[mu][nu] = d a_mu / d x_nu
  FieldSample f;
  // E_i = -d_i U - d_t A_i = (-d_i a0 + d_t a_i) / q
  f.E = {(-j[0][1] + j[1][0]) / q, (-j[0][2] + j[2][0]) / q,
         (-j[0][3] + j[3][0]) / q};
  // B = curl A with A_i = -a_i / q
  f.B = {(-j[3][2] + j[2][3]) / q, (-j[1][3] + j[3][1]) / q,
         (-j[2][1] + j[1][2]) / q};
  return f;
}

FieldSample closed_form_fields(const ClosedFormSpec& spec,
                               const SpacetimePoint& pt) {
  const double q = spec.q;
  if (q == 0.0) throw Error("closed_form_fields: charge must be nonzero");

  switch (spec.kind) {
    case ClosedFormKind::massless_shift: {
      const Vec3 n = direction_unit(spec.theta, spec.phi);
      const double st = spec.s.derivative(0).real_at(pt) / q;
      const Vec3 grad{spec.s.derivative(1).real_at(pt) / q,
                      spec.s.derivative(2).real_at(pt) / q,
                      spec.s.derivative(3).real_at(pt) / q};
      FieldSample f;
      f.E = (-1.0) * grad - st * n;
      f.B = cross(grad, n);
      return f;
    }
    case ClosedFormKind::copropagating_wave: {
      const double c1 = std::cos(spec.k_w * (pt.z - pt.t) + spec.delta_w1);
      const double c2 = std::cos(spec.k_w * (pt.z - pt.t) + spec.delta_w2);
      return {{spec.e_w1 * c1, spec.e_w2 * c2, 0.0},
              {-spec.e_w2 * c2, spec.e_w1 * c1, 0.0}};
    }
    case ClosedFormKind::barrier_shift: {
      const double st = spec.s.derivative(0).real_at(pt) / q;
      const double sx = spec.s.derivative(1).real_at(pt) / q;
      const double sy = spec.s.derivative(2).real_at(pt) / q;
      const double sz = spec.s.derivative(3).real_at(pt) / q;
      return {{-sx, st - sy, -sz}, {sz, 0.0, -sx}};
    }
    case ClosedFormKind::transverse_wave: {
      const double c1 = std::cos(spec.k_w * (pt.y + pt.t) + spec.delta_w1);
      const double c2 = std::cos(spec.k_w * (pt.y + pt.t) + spec.delta_w2);
      return {{spec.e_w1 * c1, 0.0, spec.e_w2 * c2},
              {-spec.e_w2 * c2, 0.0, spec.e_w1 * c1}};
    }
    case ClosedFormKind::wavelike_base:
    case ClosedFormKind::wavelike_shift: {
      const double m = spec.mass, al = spec.alpha, be = spec.beta;
      const double cA = std::cos(al), cB = std::cos(be);
      const double csc_m = 1.0 / std::sin(al - be);
      const double csc_p = 1.0 / std::sin(al + be);
      const double sec_p = 1.0 / std::cos(al + be);
      const double omega = 4.0 * m / (std::cos(2 * al) - std::cos(2 * be));
      const double kz = omega * std::cos(al + be);
      const double d = omega * pt.t - kz * pt.z;
      double e_amp, b_amp;
      if (spec.kind == ClosedFormKind::wavelike_base) {
        e_amp = 4.0 * m * m / q * cA * cB * csc_m * csc_m * csc_p * sec_p;
        b_amp = -4.0 * m * m / q * cA * cB * csc_m * csc_m * csc_p;
      } else {
        // Inner coefficients reduce to the base amplitudes at zero shift.
        e_amp = 2.0 * m / q * csc_m *
                (2.0 * m * cA * cB * csc_m * csc_p * sec_p + spec.s_const);
        b_amp = -2.0 * m / q * csc_m *
                (2.0 * m * cA * cB * csc_m * csc_p + spec.s_const / sec_p);
      }
      return {{-e_amp * std::sin(d), e_amp * std::cos(d), 0.0},
              {b_amp * std::cos(d), b_amp * std::sin(d), 0.0}};
    }
    case ClosedFormKind::localized_weyl: {
      const double th1 = spec.theta_t.derivative(0).real_at(pt);
      const double th2 = spec.theta_t.derivative(0).derivative(0).real_at(pt);
      const double ph1 = spec.phi_t.derivative(0).real_at(pt);
      const double ph2 = spec.phi_t.derivative(0).derivative(0).real_at(pt);
      const double cphi = std::cos(spec.phi_t.real_at(pt));
      const double sphi = std::sin(spec.phi_t.real_at(pt));
      return {{(cphi * th1 * ph1 + sphi * th2) / (2 * q),
               (sphi * th1 * ph1 - cphi * th2) / (2 * q), -ph2 / (2 * q)},
              {0.0, 0.0, 0.0}};
    }
  }
  throw UnknownFamily("closed_form_fields: unhandled kind");
}

Vec3 poynting(const Vec3& e, const Vec3& b) {
  return cross(e, b) / (4.0 * pi);
}

MaxwellReport maxwell_vacuum_check(const FieldFunction& e_field,
                                   const FieldFunction& b_field,
                                   std::span<const SpacetimePoint> pts,
                                   double step) {
  auto comp = [](const FieldFunction& f, int i) {
    return [&f, i](const SpacetimePoint& p) {
      const Vec3 v = f(p);
      return i == 0 ? v.x : (i == 1 ? v.y : v.z);
    };
  };

  MaxwellReport rep;
  for (const auto& pt : pts) {
    // dE[i][nu] = d E_i / d x_nu, likewise for B.
    double dE[3][4], dB[3][4];
    double mag = 0.0;
    for (int i = 0; i < 3; ++i) {
      for (int nu = 0; nu < 4; ++nu) {
        dE[i][nu] = fd4(comp(e_field, i), pt, nu, step);
        dB[i][nu] = fd4(comp(b_field, i), pt, nu, step);
        mag += std::abs(dE[i][nu]) + std::abs(dB[i][nu]);
      }
    }
    rep.scale = std::max(rep.scale, mag);

    const double div_e = dE[0][1] + dE[1][2] + dE[2][3];
    const double div_b = dB[0][1] + dB[1][2] + dB[2][3];
    const Vec3 curl_e{dE[2][2] - dE[1][3], dE[0][3] - dE[2][1],
                      dE[1][1] - dE[0][2]};
    const Vec3 curl_b{dB[2][2] - dB[1][3], dB[0][3] - dB[2][1],
                      dB[1][1] - dB[0][2]};
    const Vec3 faraday = curl_e + Vec3{dB[0][0], dB[1][0], dB[2][0]};
    const Vec3 ampere = curl_b - Vec3{dE[0][0], dE[1][0], dE[2][0]};

    rep.max_div_e = std::max(rep.max_div_e, std::abs(div_e));
    rep.max_div_b = std::max(rep.max_div_b, std::abs(div_b));
    rep.max_faraday = std::max(rep.max_faraday, faraday.norm());
    rep.max_ampere = std::max(rep.max_ampere, ampere.norm());
  }
  return rep;
}

nlohmann::json MaxwellReport::to_json() const {
  return {{"max_div_e", max_div_e},
          {"max_div_b", max_div_b},
          {"max_faraday", max_faraday},
          {"max_ampere", max_ampere},
          {"scale", scale},
          {"max_relative", max_relative()}};
}

FieldSample profile_field(const ScalarField& f, double q,
                          const SpacetimePoint& pt) {
  if (q == 0.0) throw Error("profile_field: charge must be nonzero");
  if (f.depends_on(0) || f.depends_on(3))
    throw CoordinateViolation("profile_field: profile must depend on x, y only");
  const double value = f.real_at(pt);
  if (!(value > 0.0))
    throw NonPositiveProfile("profile_field: profile must be positive");

  const double fx = f.derivative(1).real_at(pt);
  const double fy = f.derivative(2).real_at(pt);
  const double fxx = f.derivative(1).derivative(1).real_at(pt);
  const double fyy = f.derivative(2).derivative(2).real_at(pt);

  const double bz =
      -(fx * fx + fy * fy - value * (fxx + fyy)) / (q * value * value);
  return {{0.0, 0.0, 0.0}, {0.0, 0.0, bz}};
}

}  // namespace degsol

#include "degsol/families.hpp"

#include <cmath>

#include "degsol/errors.hpp"

namespace degsol {

namespace {

constexpr cd I{0.0, 1.0};

double dist_to_multiple(double value, double period) {
  return std::abs(std::remainder(value, period));
}

void require_axes(const ScalarField& f, std::initializer_list<int> allowed,
                  const std::string& slot) {
  for (int axis = 0; axis < 4; ++axis) {
    bool ok = false;
    for (int a : allowed) ok = ok || (a == axis);
    if (!ok && f.depends_on(axis))
      throw CoordinateViolation("slot '" + slot + "' may not depend on axis " +
                                std::to_string(axis));
  }
}

ScalarField coord(int axis) { return ScalarField::var(axis); }

ScalarField phase_of(const ScalarField& real_exponent) {
  return exp(I * real_exponent);
}

// Transformed coordinates used by the general construction. s0 and s1 are
// real; s2 and s3 carry an imaginary y-component.
struct SCoords {
  ScalarField s0, s1, s2, s3;
};

SCoords s_coords(double phi) {
  const double c = std::cos(phi), s = std::sin(phi);
  const double sec = 1.0 / c, tn = s / c;
  SCoords sc;
  sc.s0 = coord(0) - c * coord(1) - s * coord(3);
  sc.s1 = sec * coord(1);
  sc.s2 = (tn / 2) * coord(1) + cd(0.0, sec / 2) * coord(2) - 0.5 * coord(3);
  sc.s3 = (-tn / 2) * coord(1) + cd(0.0, sec / 2) * coord(2) + 0.5 * coord(3);
  return sc;
}

// Determinant of the coordinate transform; the phi guard keeps it away from
// zero, asserted at construction anyway.
cd s_transform_det(double phi) {
  const double sec = 1.0 / std::cos(phi);
  return cd(0.0, 0.5 * sec * sec);
}

// Real exponent whose gradient is the published 4-potential of the general
// construction: Sigma = F1(s0, s1) + sec(phi) y f2r(s0) + f2i(s0)(tan(phi) x - z).
ScalarField general_phase_exponent(const SCoords& sc, double phi,
                                   const ScalarField& f1_integral,
                                   const ScalarField& f2r,
                                   const ScalarField& f2i) {
  const ScalarField zero;
  const double sec = 1.0 / std::cos(phi), tn = std::tan(phi);
  const ScalarField f1_s = f1_integral.substitute({sc.s0, sc.s1, zero, zero});
  const ScalarField f2r_s = f2r.substitute({sc.s0, zero, zero, zero});
  const ScalarField f2i_s = f2i.substitute({sc.s0, zero, zero, zero});
  return f1_s + sec * coord(2) * f2r_s + f2i_s * (tn * coord(1) - coord(3));
}

// Constant chiral columns of the general construction.
std::array<cd, 4> t_column(double phi) {
  const double c = std::cos(phi), s = std::sin(phi);
  return {c, 1.0 - s, c, 1.0 - s};
}
std::array<cd, 4> r_column(double phi) {
  const double c = std::cos(phi), s = std::sin(phi);
  return {-c, 1.0 + s, c, -(1.0 + s)};
}

void check_general_phi(double phi) {
  if (dist_to_multiple(phi - pi / 2, pi) <= 1e-6)
    throw DegenerateParameter("phi within 1e-6 of n*pi + pi/2");
}

void check_general_slots(const GeneralMasslessParams& p) {
  require_axes(p.w_t, {0, 2}, "w_t");
  require_axes(p.w_r, {0, 3}, "w_r");
  require_axes(p.f1_integral, {0, 1}, "f1_integral");
  require_axes(p.f2r, {0}, "f2r");
  require_axes(p.f2i, {0}, "f2i");
}

nlohmann::json cd_to_json(cd v) {
  return nlohmann::json::array({v.real(), v.imag()});
}

cd cd_from_json(const nlohmann::json& j) {
  return cd(j.at(0).get<double>(), j.at(1).get<double>());
}

nlohmann::json box_to_json(const Box& b) {
  return nlohmann::json::array({b.t_max, b.x_max, b.y_max, b.z_max});
}

Box box_from_json(const nlohmann::json& j) {
  return Box{j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>(),
             j.at(3).get<double>()};
}

std::string species_name(Species s) {
  return s == Species::particle ? "particle" : "antiparticle";
}

Species species_from_name(const std::string& n) {
  if (n == "particle") return Species::particle;
  if (n == "antiparticle") return Species::antiparticle;
  throw Error("unknown species '" + n + "'");
}

nlohmann::json massless_params_to_json(const GeneralMasslessParams& p) {
  nlohmann::json j;
  j["phi"] = p.phi;
  j["slots"] = {{"w_t", p.w_t.to_json()},
                {"w_r", p.w_r.to_json()},
                {"f1_integral", p.f1_integral.to_json()},
                {"f2r", p.f2r.to_json()},
                {"f2i", p.f2i.to_json()}};
  return j;
}

GeneralMasslessParams massless_params_from_json(const nlohmann::json& j) {
  GeneralMasslessParams p;
  p.phi = j.at("phi").get<double>();
  const auto& s = j.at("slots");
  p.w_t = ScalarField::from_json(s.at("w_t"));
  p.w_r = ScalarField::from_json(s.at("w_r"));
  p.f1_integral = ScalarField::from_json(s.at("f1_integral"));
  p.f2r = ScalarField::from_json(s.at("f2r"));
  p.f2i = ScalarField::from_json(s.at("f2i"));
  return p;
}

}  // namespace

std::string family_name(FamilyId id) {
  switch (id) {
    case FamilyId::massless_general: return "massless_general";
    case FamilyId::tunneling: return "tunneling";
    case FamilyId::barrier_pair: return "barrier_pair";
    case FamilyId::wavelike: return "wavelike";
    case FamilyId::general_massive: return "general_massive";
    case FamilyId::general_massless: return "general_massless";
    case FamilyId::weyl_localized: return "weyl_localized";
    case FamilyId::weyl_from_massless: return "weyl_from_massless";
  }
  return "unknown";
}

FamilyId family_from_name(const std::string& name) {
  for (FamilyId id :
       {FamilyId::massless_general, FamilyId::tunneling, FamilyId::barrier_pair,
        FamilyId::wavelike, FamilyId::general_massive,
        FamilyId::general_massless, FamilyId::weyl_localized,
        FamilyId::weyl_from_massless}) {
    if (family_name(id) == name) return id;
  }
  throw UnknownFamily("unknown family '" + name + "'");
}

FamilyDescriptor::FamilyDescriptor(FamilyId id, double mass,
                                   FamilyParams params)
    : id_(id), mass_(mass), params_(std::move(params)) {}

FamilyDescriptor FamilyDescriptor::massless_general(double theta, double phi,
                                                    cd c1, cd c2, ScalarField h,
                                                    Species species) {
  if (c1 == cd{} && c2 == cd{})
    throw ZeroSpinor("massless_general: c1 = c2 = 0");
  MasslessGeneralParams p{theta, phi, c1, c2, std::move(h), species};
  return FamilyDescriptor(FamilyId::massless_general, 0.0, std::move(p));
}

FamilyDescriptor FamilyDescriptor::tunneling(double xi, ScalarField f, cd c1,
                                             double m) {
  if (dist_to_multiple(xi, pi) <= 1e-6)
    throw DegenerateParameter("tunneling: xi within 1e-6 of n*pi");
  if (!(m > 0.0)) throw DegenerateParameter("tunneling: mass must be positive");
  if (c1 == cd{}) throw ZeroSpinor("tunneling: c1 = 0");
  FamilyDescriptor d(FamilyId::tunneling, m,
                     TunnelingParams{xi, std::move(f), c1});
  d.box_.z_max = 5.0 / m;
  return d;
}

FamilyDescriptor FamilyDescriptor::barrier_pair(cd c_plus, cd c_minus,
                                                Species kind, double m) {
  if (!(m > 0.0))
    throw DegenerateParameter("barrier_pair: mass must be positive");
  if (c_plus == cd{} && c_minus == cd{})
    throw ZeroSpinor("barrier_pair: c_plus = c_minus = 0");
  FamilyDescriptor d(FamilyId::barrier_pair, m,
                     BarrierPairParams{c_plus, c_minus, kind});
  d.box_.z_max = 5.0 / m;
  return d;
}

FamilyDescriptor FamilyDescriptor::wavelike(double alpha, double beta,
                                            ScalarField h, cd c1, double m) {
  if (dist_to_multiple(alpha + beta, pi) <= 1e-6 ||
      dist_to_multiple(alpha - beta, pi) <= 1e-6)
    throw DegenerateParameter("wavelike: alpha +- beta within 1e-6 of n*pi");
  if (dist_to_multiple(alpha + beta - pi / 2, pi) <= 1e-6)
    throw DegenerateParameter(
        "wavelike: alpha + beta within 1e-6 of n*pi + pi/2");
  if (m < 0.0) throw DegenerateParameter("wavelike: mass must be >= 0");
  if (c1 == cd{}) throw ZeroSpinor("wavelike: c1 = 0");
  return FamilyDescriptor(FamilyId::wavelike, m,
                          WavelikeParams{alpha, beta, std::move(h), c1});
}

FamilyDescriptor FamilyDescriptor::general_massive(
    double m, cd k, double phi, ScalarField g, ScalarField f1_integral,
    ScalarField f2r, ScalarField f2i, MassiveGrouping grouping) {
  check_general_phi(phi);
  if (!(m > 0.0))
    throw DegenerateParameter("general_massive: mass must be positive");
  if (k == cd{}) throw DegenerateParameter("general_massive: k must be nonzero");
  if (g.is_structural_zero()) throw ZeroSpinor("general_massive: g = 0");
  require_axes(g, {0}, "g");
  require_axes(f1_integral, {0, 1}, "f1_integral");
  require_axes(f2r, {0}, "f2r");
  require_axes(f2i, {0}, "f2i");
  if (std::abs(s_transform_det(phi)) < 1e-12)
    throw SingularTransform("general_massive: coordinate transform singular");
  GeneralMassiveParams p{k, phi, std::move(g), std::move(f1_integral),
                         std::move(f2r), std::move(f2i), grouping};
  return FamilyDescriptor(FamilyId::general_massive, m, std::move(p));
}

FamilyDescriptor FamilyDescriptor::general_massless(
    double phi, ScalarField w_t, ScalarField w_r, ScalarField f1_integral,
    ScalarField f2r, ScalarField f2i) {
  check_general_phi(phi);
  GeneralMasslessParams p{phi, std::move(w_t), std::move(w_r),
                          std::move(f1_integral), std::move(f2r),
                          std::move(f2i)};
  if (p.w_t.is_structural_zero() && p.w_r.is_structural_zero())
    throw ZeroSpinor("general_massless: w_t = w_r = 0");
  check_general_slots(p);
  return FamilyDescriptor(FamilyId::general_massless, 0.0, std::move(p));
}

FamilyDescriptor FamilyDescriptor::weyl_localized(ScalarField theta_t,
                                                  ScalarField phi_t,
                                                  ScalarField h) {
  require_axes(theta_t, {0}, "theta_t");
  require_axes(phi_t, {0}, "phi_t");
  WeylLocalizedParams p{std::move(theta_t), std::move(phi_t), std::move(h)};
  return FamilyDescriptor(FamilyId::weyl_localized, 0.0, std::move(p));
}

FamilyDescriptor FamilyDescriptor::weyl_from_massless(
    const FamilyDescriptor& parent, WeylSide side) {
  if (parent.id() != FamilyId::general_massless)
    throw UnknownFamily("weyl_from_massless requires a general_massless parent");
  const auto& pp = std::get<GeneralMasslessParams>(parent.params_);
  return FamilyDescriptor(FamilyId::weyl_from_massless, 0.0,
                          WeylFromMasslessParams{pp, side});
}

EquationKind FamilyDescriptor::equation() const {
  switch (id_) {
    case FamilyId::weyl_localized: return EquationKind::weyl_positive;
    case FamilyId::weyl_from_massless:
      return std::get<WeylFromMasslessParams>(params_).side == WeylSide::T
                 ? EquationKind::weyl_positive
                 : EquationKind::weyl_negative;
    default: return EquationKind::dirac;
  }
}

FamilyDescriptor FamilyDescriptor::with_charge(double q) const {
  if (q == 0.0) throw Error("charge must be nonzero");
  FamilyDescriptor d = *this;
  d.charge_ = q;
  return d;
}

FamilyDescriptor FamilyDescriptor::with_box(const Box& box) const {
  FamilyDescriptor d = *this;
  d.box_ = box;
  return d;
}

SpinorField FamilyDescriptor::spinor() const {
  if (is_weyl()) {
    const WeylForm form = equation() == EquationKind::weyl_positive
                              ? WeylForm::positive
                              : WeylForm::negative;
    return weyl_spinor().embed(form);
  }

  switch (id_) {
    case FamilyId::massless_general: {
      const auto& p = std::get<MasslessGeneralParams>(params_);
      const double ch = std::cos(p.theta / 2), sh = std::sin(p.theta / 2);
      const cd eip = std::exp(I * p.phi);
      const cd inv_sqrt2 = 1.0 / std::sqrt(2.0);
      // Helicity eigenvectors of the propagation direction; the chiral
      // doubling (chi, +-chi) spans the kernel of the direction contraction.
      const std::array<cd, 2> chi_p{ch, eip * sh};
      const std::array<cd, 2> chi_m{-sh, eip * ch};
      std::array<cd, 4> u;
      for (int i = 0; i < 2; ++i) {
        u[i] = inv_sqrt2 * (p.c1 * chi_p[i] + p.c2 * chi_m[i]);
        u[i + 2] = inv_sqrt2 * (p.c1 * chi_p[i] - p.c2 * chi_m[i]);
      }
      const ScalarField phase = phase_of(p.h);
      return SpinorField({u[0] * phase, u[1] * phase, u[2] * phase,
                          u[3] * phase});
    }
    case FamilyId::tunneling: {
      const auto& p = std::get<TunnelingParams>(params_);
      const double s = std::sin(p.xi), c = std::cos(p.xi);
      const std::array<cd, 4> u{I * s, -I - c, s, cd(1.0, c)};
      // Real exponent grows like exp(m z / sin^2 xi); the sampling box caps z.
      const ScalarField envelope =
          exp((mass_ / (s * s)) * (coord(3) - c * coord(0)));
      const ScalarField factor = p.c1 * phase_of(c * p.f) * envelope;
      return SpinorField(
          {u[0] * factor, u[1] * factor, u[2] * factor, u[3] * factor});
    }
    case FamilyId::barrier_pair: {
      const auto& p = std::get<BarrierPairParams>(params_);
      const ScalarField grow = exp(mass_ * coord(3));
      const ScalarField decay = exp(-mass_ * coord(3));
      std::array<cd, 4> w_plus, w_minus;
      ScalarField env_plus, env_minus;
      if (p.kind == Species::particle) {
        w_plus = {1.0, 1.0, I, -I};
        w_minus = {-1.0, 1.0, I, I};
        env_plus = decay;
        env_minus = grow;
      } else {
        w_plus = {I, -I, 1.0, 1.0};
        w_minus = {I, I, -1.0, 1.0};
        env_plus = grow;
        env_minus = decay;
      }
      std::array<ScalarField, 4> comps;
      for (int i = 0; i < 4; ++i)
        comps[i] = (p.c_plus * w_plus[i]) * env_plus +
                   (p.c_minus * w_minus[i]) * env_minus;
      return SpinorField(std::move(comps));
    }
    case FamilyId::wavelike: {
      const auto& p = std::get<WavelikeParams>(params_);
      const ScalarField d = wavelike_phase_tree();
      const ScalarField phase = phase_of(p.h);
      const ScalarField phase_d = phase_of(p.h + d);
      return SpinorField({(p.c1 * std::cos(p.alpha)) * phase,
                          (p.c1 * std::sin(p.alpha)) * phase_d,
                          (p.c1 * std::cos(p.beta)) * phase,
                          (p.c1 * std::sin(p.beta)) * phase_d});
    }
    case FamilyId::general_massive: {
      const auto& p = std::get<GeneralMassiveParams>(params_);
      const SCoords sc = s_coords(p.phi);
      const ScalarField zero;
      const ScalarField phase = phase_of(
          general_phase_exponent(sc, p.phi, p.f1_integral, p.f2r, p.f2i));
      const ScalarField g_env = p.g.substitute({sc.s0, zero, zero, zero});
      const double cphi = std::cos(p.phi);
      const cd mu = mass_ * (1.0 + std::sin(p.phi)) / p.k;
      const ScalarField e2 =
          exp((-mass_ * mass_ * cphi * cphi / p.k) * sc.s2);
      const ScalarField e3 = exp(p.k * sc.s3);
      const auto tc = t_column(p.phi);
      const auto rc = r_column(p.phi);
      std::array<ScalarField, 4> comps;
      if (p.grouping == MassiveGrouping::shared_envelope) {
        const ScalarField common = phase * g_env * e2 * e3;
        for (int i = 0; i < 4; ++i)
          comps[i] = (I * mu * tc[i] + rc[i]) * common;
      } else {
        const ScalarField common = phase * g_env;
        for (int i = 0; i < 4; ++i)
          comps[i] = common * ((I * mu * tc[i]) * e2 + rc[i] * e3);
      }
      return SpinorField(std::move(comps));
    }
    case FamilyId::general_massless: {
      const auto& p = std::get<GeneralMasslessParams>(params_);
      const SCoords sc = s_coords(p.phi);
      const ScalarField zero;
      const ScalarField phase = phase_of(
          general_phase_exponent(sc, p.phi, p.f1_integral, p.f2r, p.f2i));
      const ScalarField wt = p.w_t.substitute({sc.s0, zero, sc.s2, zero});
      const ScalarField wr = p.w_r.substitute({sc.s0, zero, zero, sc.s3});
      const auto tc = t_column(p.phi);
      const auto rc = r_column(p.phi);
      std::array<ScalarField, 4> comps;
      for (int i = 0; i < 4; ++i)
        comps[i] = phase * (tc[i] * wt + rc[i] * wr);
      return SpinorField(std::move(comps));
    }
    default:
      throw UnknownFamily("spinor(): unhandled family");
  }
}

WeylSpinorField FamilyDescriptor::weyl_spinor() const {
  switch (id_) {
    case FamilyId::weyl_localized: {
      const auto& p = std::get<WeylLocalizedParams>(params_);
      const ScalarField phase = phase_of(p.h);
      const ScalarField up = cos(0.5 * p.theta_t) * phase;
      const ScalarField low = sin(0.5 * p.theta_t) * phase_of(p.phi_t + p.h);
      return WeylSpinorField({up, low});
    }
    case FamilyId::weyl_from_massless: {
      const auto& p = std::get<WeylFromMasslessParams>(params_);
      const SCoords sc = s_coords(p.parent.phi);
      const ScalarField zero;
      const ScalarField phase =
          phase_of(general_phase_exponent(sc, p.parent.phi, p.parent.f1_integral,
                                          p.parent.f2r, p.parent.f2i));
      const double c = std::cos(p.parent.phi), s = std::sin(p.parent.phi);
      if (p.side == WeylSide::T) {
        const ScalarField wt =
            p.parent.w_t.substitute({sc.s0, zero, sc.s2, zero});
        return WeylSpinorField({cd(c) * wt * phase, cd(1.0 - s) * wt * phase});
      }
      const ScalarField wr = p.parent.w_r.substitute({sc.s0, zero, zero, sc.s3});
      return WeylSpinorField({cd(-c) * wr * phase, cd(1.0 + s) * wr * phase});
    }
    default:
      throw UnknownFamily("weyl_spinor(): family is not two-component");
  }
}

FourPotential FamilyDescriptor::potential() const {
  switch (id_) {
    case FamilyId::massless_general: {
      const auto& p = std::get<MasslessGeneralParams>(params_);
      return FourPotential({p.h.derivative(0), p.h.derivative(1),
                            p.h.derivative(2), p.h.derivative(3)});
    }
    case FamilyId::tunneling: {
      const auto& p = std::get<TunnelingParams>(params_);
      const double c = std::cos(p.xi), s = std::sin(p.xi);
      return FourPotential(
          {c * p.f.derivative(0), c * p.f.derivative(1) - cd(mass_ * c / s),
           c * p.f.derivative(2), c * p.f.derivative(3)});
    }
    case FamilyId::barrier_pair:
      return FourPotential();
    case FamilyId::wavelike: {
      const auto& p = std::get<WavelikeParams>(params_);
      const ScalarField d = wavelike_phase_tree();
      // Constant parts solve the linear system the spinor imposes on the
      // potential; h contributes a pure gradient.
      double a0_const = 0.0, transverse = 0.0;
      if (mass_ > 0.0) {
        a0_const = mass_ * (std::sin(2 * p.alpha) + std::sin(2 * p.beta)) /
                   (std::sin(2 * p.alpha) - std::sin(2 * p.beta));
        transverse = -2.0 * mass_ * std::cos(p.alpha) * std::cos(p.beta) /
                     (std::sin(p.alpha - p.beta) * std::cos(p.alpha + p.beta));
      }
      return FourPotential({p.h.derivative(0) + cd(a0_const),
                            p.h.derivative(1) + transverse * cos(d),
                            p.h.derivative(2) + transverse * sin(d),
                            p.h.derivative(3)});
    }
    case FamilyId::general_massive: {
      const auto& p = std::get<GeneralMassiveParams>(params_);
      const SCoords sc = s_coords(p.phi);
      const ScalarField sigma =
          general_phase_exponent(sc, p.phi, p.f1_integral, p.f2r, p.f2i);
      return FourPotential({sigma.derivative(0), sigma.derivative(1),
                            sigma.derivative(2), sigma.derivative(3)});
    }
    case FamilyId::general_massless:
    case FamilyId::weyl_from_massless: {
      const GeneralMasslessParams& p =
          id_ == FamilyId::general_massless
              ? std::get<GeneralMasslessParams>(params_)
              : std::get<WeylFromMasslessParams>(params_).parent;
      const SCoords sc = s_coords(p.phi);
      const ScalarField sigma =
          general_phase_exponent(sc, p.phi, p.f1_integral, p.f2r, p.f2i);
      return FourPotential({sigma.derivative(0), sigma.derivative(1),
                            sigma.derivative(2), sigma.derivative(3)});
    }
    case FamilyId::weyl_localized: {
      const auto& p = std::get<WeylLocalizedParams>(params_);
      const ScalarField theta_dot = p.theta_t.derivative(0);
      const ScalarField phi_dot = p.phi_t.derivative(0);
      return FourPotential({p.h.derivative(0) + 0.5 * phi_dot,
                            p.h.derivative(1) + 0.5 * sin(p.phi_t) * theta_dot,
                            p.h.derivative(2) - 0.5 * cos(p.phi_t) * theta_dot,
                            p.h.derivative(3) - 0.5 * phi_dot});
    }
  }
  throw UnknownFamily("potential(): unhandled family");
}

DirectionField FamilyDescriptor::direction() const {
  switch (id_) {
    case FamilyId::massless_general: {
      const auto& p = std::get<MasslessGeneralParams>(params_);
      return DirectionField::constant(-std::sin(p.theta) * std::cos(p.phi),
                                      -std::sin(p.theta) * std::sin(p.phi),
                                      -std::cos(p.theta));
    }
    case FamilyId::tunneling: {
      const auto& p = std::get<TunnelingParams>(params_);
      return DirectionField::constant(0.0, std::sin(p.xi), -std::cos(p.xi));
    }
    case FamilyId::barrier_pair:
      return DirectionField::constant(0.0, 1.0, 0.0);
    case FamilyId::wavelike: {
      const auto& p = std::get<WavelikeParams>(params_);
      const ScalarField d = wavelike_phase_tree();
      const double spb = std::sin(p.alpha + p.beta);
      const double cpb = std::cos(p.alpha + p.beta);
      return DirectionField({ScalarField::constant(1.0), (-spb) * cos(d),
                             (-spb) * sin(d), ScalarField::constant(-cpb)});
    }
    case FamilyId::general_massive: {
      const auto& p = std::get<GeneralMassiveParams>(params_);
      return DirectionField::constant(-std::cos(p.phi), 0.0, -std::sin(p.phi));
    }
    case FamilyId::general_massless:
    case FamilyId::weyl_from_massless: {
      const double phi =
          id_ == FamilyId::general_massless
              ? std::get<GeneralMasslessParams>(params_).phi
              : std::get<WeylFromMasslessParams>(params_).parent.phi;
      return DirectionField::constant(-std::cos(phi), 0.0, -std::sin(phi));
    }
    case FamilyId::weyl_localized: {
      const auto& p = std::get<WeylLocalizedParams>(params_);
      return DirectionField({ScalarField::constant(1.0),
                             -(sin(p.theta_t) * cos(p.phi_t)),
                             -(sin(p.theta_t) * sin(p.phi_t)),
                             -cos(p.theta_t)});
    }
  }
  throw UnknownFamily("direction(): unhandled family");
}

ScalarField FamilyDescriptor::wavelike_phase_tree() const {
  const auto& p = std::get<WavelikeParams>(params_);
  if (mass_ == 0.0) return ScalarField();
  const double denom = std::cos(2 * p.alpha) - std::cos(2 * p.beta);
  const double omega = 4.0 * mass_ / denom;
  const double kz = omega * std::cos(p.alpha + p.beta);
  return ScalarField::linear(omega, 0.0, 0.0, -kz);
}

nlohmann::json FamilyDescriptor::to_json() const {
  nlohmann::json j;
  j["family"] = family_name(id_);
  j["mass"] = mass_;
  j["charge"] = charge_;
  j["box"] = box_to_json(box_);
  switch (id_) {
    case FamilyId::massless_general: {
      const auto& p = std::get<MasslessGeneralParams>(params_);
      j["parameters"] = {{"theta", p.theta},
                         {"phi", p.phi},
                         {"c1", cd_to_json(p.c1)},
                         {"c2", cd_to_json(p.c2)},
                         {"species", species_name(p.species)}};
      j["slots"] = {{"h", p.h.to_json()}};
      break;
    }
    case FamilyId::tunneling: {
      const auto& p = std::get<TunnelingParams>(params_);
      j["parameters"] = {{"xi", p.xi}, {"c1", cd_to_json(p.c1)}};
      j["slots"] = {{"f", p.f.to_json()}};
      break;
    }
    case FamilyId::barrier_pair: {
      const auto& p = std::get<BarrierPairParams>(params_);
      j["parameters"] = {{"c_plus", cd_to_json(p.c_plus)},
                         {"c_minus", cd_to_json(p.c_minus)},
                         {"kind", species_name(p.kind)}};
      break;
    }
    case FamilyId::wavelike: {
      const auto& p = std::get<WavelikeParams>(params_);
      j["parameters"] = {{"alpha", p.alpha},
                         {"beta", p.beta},
                         {"c1", cd_to_json(p.c1)}};
      j["slots"] = {{"h", p.h.to_json()}};
      break;
    }
    case FamilyId::general_massive: {
      const auto& p = std::get<GeneralMassiveParams>(params_);
      j["parameters"] = {{"k", cd_to_json(p.k)},
                         {"phi", p.phi},
                         {"grouping",
                          p.grouping == MassiveGrouping::shared_envelope
                              ? "shared_envelope"
                              : "split_envelope"}};
      j["slots"] = {{"g", p.g.to_json()},
                    {"f1_integral", p.f1_integral.to_json()},
                    {"f2r", p.f2r.to_json()},
                    {"f2i", p.f2i.to_json()}};
      break;
    }
    case FamilyId::general_massless: {
      const auto& p = std::get<GeneralMasslessParams>(params_);
      const nlohmann::json inner = massless_params_to_json(p);
      j["parameters"] = {{"phi", p.phi}};
      j["slots"] = inner["slots"];
      break;
    }
    case FamilyId::weyl_localized: {
      const auto& p = std::get<WeylLocalizedParams>(params_);
      j["parameters"] = nlohmann::json::object();
      j["slots"] = {{"theta_t", p.theta_t.to_json()},
                    {"phi_t", p.phi_t.to_json()},
                    {"h", p.h.to_json()}};
      break;
    }
    case FamilyId::weyl_from_massless: {
      const auto& p = std::get<WeylFromMasslessParams>(params_);
      j["parameters"] = {{"side", p.side == WeylSide::T ? "T" : "R"}};
      j["parent"] = massless_params_to_json(p.parent);
      break;
    }
  }
  return j;
}

FamilyDescriptor FamilyDescriptor::from_json(const nlohmann::json& j) {
  const FamilyId id = family_from_name(j.at("family").get<std::string>());
  const double mass = j.value("mass", 0.0);
  FamilyDescriptor d = [&]() {
    switch (id) {
      case FamilyId::massless_general: {
        const auto& p = j.at("parameters");
        return massless_general(p.at("theta").get<double>(),
                                p.at("phi").get<double>(),
                                cd_from_json(p.at("c1")),
                                cd_from_json(p.at("c2")),
                                ScalarField::from_json(j.at("slots").at("h")),
                                species_from_name(p.at("species")));
      }
      case FamilyId::tunneling: {
        const auto& p = j.at("parameters");
        return tunneling(p.at("xi").get<double>(),
                         ScalarField::from_json(j.at("slots").at("f")),
                         cd_from_json(p.at("c1")), mass);
      }
      case FamilyId::barrier_pair: {
        const auto& p = j.at("parameters");
        return barrier_pair(cd_from_json(p.at("c_plus")),
                            cd_from_json(p.at("c_minus")),
                            species_from_name(p.at("kind")), mass);
      }
      case FamilyId::wavelike: {
        const auto& p = j.at("parameters");
        return wavelike(p.at("alpha").get<double>(), p.at("beta").get<double>(),
                        ScalarField::from_json(j.at("slots").at("h")),
                        cd_from_json(p.at("c1")), mass);
      }
      case FamilyId::general_massive: {
        const auto& p = j.at("parameters");
        const auto& s = j.at("slots");
        const MassiveGrouping grouping =
            p.value("grouping", "shared_envelope") == std::string("split_envelope")
                ? MassiveGrouping::split_envelope
                : MassiveGrouping::shared_envelope;
        return general_massive(mass, cd_from_json(p.at("k")),
                               p.at("phi").get<double>(),
                               ScalarField::from_json(s.at("g")),
                               ScalarField::from_json(s.at("f1_integral")),
                               ScalarField::from_json(s.at("f2r")),
                               ScalarField::from_json(s.at("f2i")), grouping);
      }
      case FamilyId::general_massless: {
        nlohmann::json inner;
        inner["phi"] = j.at("parameters").at("phi");
        inner["slots"] = j.at("slots");
        const GeneralMasslessParams p = massless_params_from_json(inner);
        return general_massless(p.phi, p.w_t, p.w_r, p.f1_integral, p.f2r,
                                p.f2i);
      }
      case FamilyId::weyl_localized: {
        const auto& s = j.at("slots");
        return weyl_localized(ScalarField::from_json(s.at("theta_t")),
                              ScalarField::from_json(s.at("phi_t")),
                              ScalarField::from_json(s.at("h")));
      }
      case FamilyId::weyl_from_massless: {
        const GeneralMasslessParams p =
            massless_params_from_json(j.at("parent"));
        const FamilyDescriptor parent = general_massless(
            p.phi, p.w_t, p.w_r, p.f1_integral, p.f2r, p.f2i);
        const WeylSide side =
            j.at("parameters").at("side").get<std::string>() == "R"
                ? WeylSide::R
                : WeylSide::T;
        return weyl_from_massless(parent, side);
      }
    }
    throw UnknownFamily("from_json: unhandled family");
  }();
  if (j.contains("charge")) d = d.with_charge(j.at("charge").get<double>());
  if (j.contains("box")) d = d.with_box(box_from_json(j.at("box")));
  return d;
}

}  // namespace degsol

#include "degsol/dynamics.hpp"

#include <cmath>

#include "degsol/errors.hpp"
#include "degsol/fields.hpp"

namespace degsol {

Vec3 weyl_velocity(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
          std::cos(theta)};
}

double Trajectory::max_chord_speed_error() const {
  double worst = 0.0;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    const double dt = samples[i].t - samples[i - 1].t;
    if (dt <= 0.0) continue;
    const double speed = (samples[i].r - samples[i - 1].r).norm() / dt;
    worst = std::max(worst, std::abs(speed - 1.0));
  }
  return worst;
}

namespace {

std::vector<TrajectorySample> rk4_run(
    const std::function<Vec3(double)>& velocity, Vec3 r0, double t0, double t1,
    double dt) {
  std::vector<TrajectorySample> samples;
  Vec3 r = r0;
  double t = t0;
  samples.push_back({t, r, velocity(t)});
  while (t < t1 - 1e-15 * std::max(1.0, std::abs(t1))) {
    const double h = std::min(dt, t1 - t);
    const Vec3 k1 = velocity(t);
    const Vec3 k2 = velocity(t + h / 2);
    const Vec3 k3 = k2;  // velocity is independent of position
    const Vec3 k4 = velocity(t + h);
    r += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t += h;
    samples.push_back({t, r, velocity(t)});
  }
  return samples;
}

}  // namespace

Trajectory integrate_trajectory(const ScalarField& theta_t,
                                const ScalarField& phi_t, Vec3 r0, double t0,
                                double t1, double dt) {
  if (!(t1 > t0)) throw Error("integrate_trajectory: empty time span");
  if (dt == 0.0) dt = 1e-3 * (t1 - t0);
  if (!(dt > 0.0)) throw Error("integrate_trajectory: dt must be positive");
  for (int axis = 1; axis < 4; ++axis) {
    if (theta_t.depends_on(axis) || phi_t.depends_on(axis))
      throw CoordinateViolation(
          "integrate_trajectory: angle schedules must depend on t only");
  }

  auto velocity = [&](double t) {
    const SpacetimePoint p{t, 0.0, 0.0, 0.0};
    return weyl_velocity(theta_t.real_at(p), phi_t.real_at(p));
  };

  Trajectory traj;
  traj.dt = dt;
  traj.samples = rk4_run(velocity, r0, t0, t1, dt);

  const auto halved = rk4_run(velocity, r0, t0, t1, dt / 2);
  for (std::size_t i = 0; i < traj.samples.size(); ++i) {
    const std::size_t j = std::min(2 * i, halved.size() - 1);
    traj.step_halving_error =
        std::max(traj.step_halving_error,
                 (traj.samples[i].r - halved[j].r).norm());
  }
  return traj;
}

double localization_time(double r0_m, double e_v_per_m, double q_coulomb) {
  if (!(r0_m > 0.0) || !(e_v_per_m > 0.0) || !(q_coulomb > 0.0))
    throw NonPositiveInput("localization_time: all arguments must be positive");
  return si::hbar / (2.0 * q_coulomb * r0_m * e_v_per_m);
}

std::function<Vec3(double)> field_schedule_from_angles(
    const ScalarField& theta_t, const ScalarField& phi_t, double q) {
  if (q == 0.0) throw Error("field_schedule_from_angles: charge must be nonzero");
  ClosedFormSpec spec;
  spec.kind = ClosedFormKind::localized_weyl;
  spec.q = q;
  spec.theta_t = theta_t;
  spec.phi_t = phi_t;
  return [spec](double t) {
    return closed_form_fields(spec, SpacetimePoint{t, 0.0, 0.0, 0.0}).E;
  };
}

}  // namespace degsol

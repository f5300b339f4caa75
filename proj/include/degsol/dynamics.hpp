#pragma once

#include <functional>
#include <string>
#include <vector>

#include "degsol/scalar_field.hpp"

namespace degsol {

namespace si {
// 2019 SI exact values.
inline constexpr double hbar = 1.054571817e-34;                // J s
inline constexpr double elementary_charge = 1.602176634e-19;   // C
// CODATA electron data.
inline constexpr double electron_mass_kg = 9.1093837015e-31;
inline constexpr double electron_rest_energy_mev = 0.51099895000;
inline constexpr double speed_of_light = 2.99792458e8;  // m/s
}  // namespace si

// Expectation velocity of the localized two-component state with spherical
// spin angles (theta, phi); always a unit vector.
Vec3 weyl_velocity(double theta, double phi);

struct TrajectorySample {
  double t = 0.0;
  Vec3 r;
  Vec3 v;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  double dt = 0.0;
  std::string method = "rk4";
  double step_halving_error = 0.0;  // max position gap against a dt/2 rerun

  // Largest deviation of the chord speed |dr|/dt from 1.
  double max_chord_speed_error() const;
};

// Integrates dr/dt = weyl_velocity(theta(t), phi(t)) with classic fixed-step
// RK4 and dense output at dt; dt <= 0 selects the default of 1e-3 of the
// span. The integration error is estimated by a step-halving comparison.
// The angle schedules must depend on t only.
Trajectory integrate_trajectory(const ScalarField& theta_t,
                                const ScalarField& phi_t, Vec3 r0, double t0,
                                double t1, double dt = 0.0);

// Confinement time of an initially delocalized state pushed into radius r0_m
// by a field of magnitude e_v_per_m: hbar / (2 q r0 |E|). SI units.
// Throws NonPositiveInput.
double localization_time(double r0_m, double e_v_per_m, double q_coulomb);

// Electric field schedule that produces given angle dynamics (natural units,
// B vanishes identically for these potentials).
std::function<Vec3(double)> field_schedule_from_angles(
    const ScalarField& theta_t, const ScalarField& phi_t, double q);

}  // namespace degsol

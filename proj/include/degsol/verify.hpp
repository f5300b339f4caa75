#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "degsol/potential.hpp"
#include "degsol/spinor_field.hpp"

namespace degsol {

enum class Scheme { exact, fd2, fd4 };

std::string scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);

struct PointResidual {
  SpacetimePoint pt;
  double absolute = 0.0;
  double relative = 0.0;
};

// Residuals of a candidate solution against its governing equation. The
// relative residual divides by the sum of the magnitudes of all equation
// terms, which stays away from zero in evanescent regions.
struct ResidualReport {
  std::string label;
  std::uint64_t seed = 0;
  Scheme scheme = Scheme::exact;
  double fd_step = 0.0;
  std::vector<PointResidual> points;
  double max_relative = 0.0;
  double median_relative = 0.0;
  std::optional<double> convergence_order;

  nlohmann::json to_json() const;
};

// R = i gamma^mu d_mu psi + a_mu gamma^mu psi - m psi.
ResidualReport dirac_residual(const SpinorField& psi, const FourPotential& a,
                              double mass, std::span<const SpacetimePoint> pts,
                              Scheme scheme = Scheme::exact,
                              double fd_step = 1e-5);

// positive: R = i sigma^mu d_mu psi + a_mu sigma^mu psi
// negative: same with sigma replaced by (sigma^0, -sigma^1, -sigma^2, -sigma^3)
ResidualReport weyl_residual(const WeylSpinorField& psi, const FourPotential& a,
                             std::span<const SpacetimePoint> pts, WeylForm form,
                             Scheme scheme = Scheme::exact,
                             double fd_step = 1e-5);

// Richardson slope from residual maxima at steps h, h/2, h/4. Throws
// DegenerateSlope when the residuals sit at the machine floor.
double convergence_order(double r_h, double r_h2, double r_h4);

struct ScanRow {
  double e = 0.0;                    // rest energy over total energy
  double normalized_residual = 0.0;  // max |R| / (|s| |psi|)
  double closed_form_factor = 0.0;   // 1 - sqrt((1-e)/(1+e)), reported only
};

struct ScanParams {
  double theta = 0.5;
  double phi = 1.0;
  cd c1{1.0, 0.0};
  cd c2{0.3, -0.2};
  int n_points = 50;
  std::uint64_t seed = 12345;
};

// Degeneracy breaking with mass: a helicity plane wave of fixed total energy
// and rest-energy fraction e is pushed through the massless equation under a
// direction-shifted potential. The residual is proportional to the shift and
// vanishes as e -> 0. Throws ConstructionUnavailable if the massive spinor
// fails its own base equation check.
std::vector<ScanRow> degeneracy_breaking_scan(std::span<const double> e_values,
                                              const ScalarField& s,
                                              const ScanParams& params = {});

}  // namespace degsol

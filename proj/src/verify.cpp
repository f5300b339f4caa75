#include "degsol/verify.hpp"

#include <algorithm>
#include <cmath>

#include "degsol/algebra.hpp"
#include "degsol/degeneracy.hpp"
#include "degsol/errors.hpp"

namespace degsol {

namespace {

constexpr cd I{0.0, 1.0};

std::string to_label(Scheme s) {
  switch (s) {
    case Scheme::exact: return "exact";
    case Scheme::fd2: return "fd2";
    case Scheme::fd4: return "fd4";
  }
  return "exact";
}

template <typename Field, typename Spinor>
std::array<Spinor, 4> fd_gradient(const Field& psi, const SpacetimePoint& pt,
                                  Scheme scheme, double step) {
  std::array<Spinor, 4> g;
  for (int mu = 0; mu < 4; ++mu) {
    const double h = step * std::max(1.0, std::abs(pt[mu]));
    if (scheme == Scheme::fd2) {
      SpacetimePoint hi = pt, lo = pt;
      hi[mu] += h;
      lo[mu] -= h;
      g[mu] = (cd(1.0 / (2 * h))) * (psi.value(hi) - psi.value(lo));
    } else {
      SpacetimePoint p1 = pt, p2 = pt, p3 = pt, p4 = pt;
      p1[mu] += 2 * h;
      p2[mu] += h;
      p3[mu] -= h;
      p4[mu] -= 2 * h;
      const Spinor num = (cd(-1.0)) * psi.value(p1) + cd(8.0) * psi.value(p2) -
                         (cd(8.0)) * psi.value(p3) + psi.value(p4);
      g[mu] = cd(1.0 / (12 * h)) * num;
    }
  }
  return g;
}

void finalize(ResidualReport& rep) {
  std::vector<double> rels;
  rels.reserve(rep.points.size());
  for (const auto& p : rep.points) {
    rep.max_relative = std::max(rep.max_relative, p.relative);
    rels.push_back(p.relative);
  }
  if (!rels.empty()) {
    std::sort(rels.begin(), rels.end());
    rep.median_relative = rels[rels.size() / 2];
  }
}

}  // namespace

std::string scheme_name(Scheme s) { return to_label(s); }

Scheme scheme_from_name(const std::string& name) {
  if (name == "exact") return Scheme::exact;
  if (name == "fd2") return Scheme::fd2;
  if (name == "fd4") return Scheme::fd4;
  throw Error("unknown scheme '" + name + "'");
}

ResidualReport dirac_residual(const SpinorField& psi, const FourPotential& a,
                              double mass, std::span<const SpacetimePoint> pts,
                              Scheme scheme, double fd_step) {
  if (scheme == Scheme::exact && !psi.has_exact_gradient())
    throw DerivativeUnavailable(
        "dirac_residual: exact scheme on an opaque spinor");
  ResidualReport rep;
  rep.scheme = scheme;
  rep.fd_step = scheme == Scheme::exact ? 0.0 : fd_step;

  for (const auto& pt : pts) {
    const Spinor4 v = psi.value(pt);
    const auto grad = scheme == Scheme::exact
                          ? psi.gradient(pt)
                          : fd_gradient<SpinorField, Spinor4>(psi, pt, scheme,
                                                              fd_step);
    Spinor4 kinetic;
    for (int mu = 0; mu < 4; ++mu) kinetic = kinetic + I * (gamma(mu) * grad[mu]);
    const Vec4 av = a.value(pt);
    Spinor4 pot;
    for (int mu = 0; mu < 4; ++mu) pot = pot + cd(av[mu]) * (gamma(mu) * v);
    const Spinor4 massterm = cd(mass) * v;
    const Spinor4 r = kinetic + pot - massterm;

    // Scale from the pre-contraction term magnitudes; the contracted sums
    // can cancel to zero exactly on free solutions, which would turn the
    // ratio into 0/0 noise.
    double denom = mass * std::sqrt(v.norm2());
    for (int mu = 0; mu < 4; ++mu)
      denom += std::sqrt(grad[mu].norm2()) +
               std::abs(av[mu]) * std::sqrt(v.norm2());
    const double abs = std::sqrt(r.norm2());
    rep.points.push_back({pt, abs, denom > 0.0 ? abs / denom : abs});
  }
  finalize(rep);
  return rep;
}

ResidualReport weyl_residual(const WeylSpinorField& psi, const FourPotential& a,
                             std::span<const SpacetimePoint> pts, WeylForm form,
                             Scheme scheme, double fd_step) {
  if (scheme == Scheme::exact && !psi.has_exact_gradient())
    throw DerivativeUnavailable(
        "weyl_residual: exact scheme on an opaque spinor");
  ResidualReport rep;
  rep.scheme = scheme;
  rep.fd_step = scheme == Scheme::exact ? 0.0 : fd_step;

  auto apply = [&](int mu, const Spinor2& s) {
    Spinor2 r = pauli(mu) * s;
    if (form == WeylForm::negative && mu > 0) r = cd(-1.0) * r;
    return r;
  };

  for (const auto& pt : pts) {
    const Spinor2 v = psi.value(pt);
    const auto grad = scheme == Scheme::exact
                          ? psi.gradient(pt)
                          : fd_gradient<WeylSpinorField, Spinor2>(psi, pt,
                                                                  scheme,
                                                                  fd_step);
    Spinor2 kinetic;
    for (int mu = 0; mu < 4; ++mu) kinetic = kinetic + I * apply(mu, grad[mu]);
    const Vec4 av = a.value(pt);
    Spinor2 pot;
    for (int mu = 0; mu < 4; ++mu) pot = pot + cd(av[mu]) * apply(mu, v);
    const Spinor2 r = kinetic + pot;

    double denom = 0.0;
    for (int mu = 0; mu < 4; ++mu)
      denom += std::sqrt(grad[mu].norm2()) +
               std::abs(av[mu]) * std::sqrt(v.norm2());
    const double abs = std::sqrt(r.norm2());
    rep.points.push_back({pt, abs, denom > 0.0 ? abs / denom : abs});
  }
  finalize(rep);
  return rep;
}

double convergence_order(double r_h, double r_h2, double r_h4) {
  constexpr double floor = 1e-13;
  if (r_h < floor || r_h2 < floor || r_h4 < floor)
    throw DegenerateSlope(
        "convergence_order: residuals at machine floor, slope undefined");
  const double s1 = std::log2(r_h / r_h2);
  const double s2 = std::log2(r_h2 / r_h4);
  return 0.5 * (s1 + s2);
}

std::vector<ScanRow> degeneracy_breaking_scan(std::span<const double> e_values,
                                              const ScalarField& s,
                                              const ScanParams& params) {
  for (std::size_t i = 0; i + 1 < e_values.size(); ++i)
    if (e_values[i] > e_values[i + 1])
      throw Error("degeneracy_breaking_scan: e values must be ascending");
  for (double e : e_values)
    if (e < 0.0 || e >= 1.0)
      throw Error("degeneracy_breaking_scan: e must lie in [0, 1)");

  const double st = std::sin(params.theta), ct = std::cos(params.theta);
  const double cp = std::cos(params.phi), sp = std::sin(params.phi);
  const Vec3 n{st * cp, st * sp, ct};

  const Box box;
  const auto pts = sample_points(box, params.n_points, params.seed);

  std::vector<ScanRow> rows;
  for (double e : e_values) {
    // Total energy fixed at 1, rest energy e.
    const double energy = 1.0;
    const double m = e;
    const double p = std::sqrt(std::max(energy * energy - m * m, 0.0));
    const double lam = p / (energy + m);
    const double norm = std::sqrt(energy + m);

    const cd eip = std::exp(I * params.phi);
    const double ch = std::cos(params.theta / 2), sh = std::sin(params.theta / 2);
    const std::array<cd, 2> chi_p{ch, eip * sh};
    const std::array<cd, 2> chi_m{-sh, eip * ch};

    std::array<cd, 4> u;
    for (int i = 0; i < 2; ++i) {
      u[i] = norm * (params.c1 * chi_p[i] + params.c2 * chi_m[i]);
      u[i + 2] = norm * lam * (params.c1 * chi_p[i] - params.c2 * chi_m[i]);
    }

    const ScalarField phase =
        ScalarField::linear(-energy, p * n.x, p * n.y, p * n.z);
    const ScalarField factor = exp(I * phase);
    const SpinorField psi(
        {u[0] * factor, u[1] * factor, u[2] * factor, u[3] * factor});

    // The construction must solve its own massive free equation.
    const ResidualReport base =
        dirac_residual(psi, FourPotential(), m, pts, Scheme::exact);
    if (base.max_relative > 1e-8)
      throw ConstructionUnavailable(
          "degeneracy_breaking_scan: helicity spinor fails its base equation "
          "(max relative " +
          format_double(base.max_relative) + ")");

    // Massless equation under the gradient potential shifted along the
    // massless direction (1, -n).
    const FourPotential grad_pot({phase.derivative(0), phase.derivative(1),
                                  phase.derivative(2), phase.derivative(3)});
    const DirectionField dir = DirectionField::constant(-n.x, -n.y, -n.z);
    const FourPotential shifted = extend_potential(grad_pot, s, dir);
    const ResidualReport res =
        dirac_residual(psi, shifted, 0.0, pts, Scheme::exact);

    double worst = 0.0;
    for (const auto& pr : res.points) {
      const double sval = std::abs(s.real_at(pr.pt));
      const double pnorm = std::sqrt(psi.value(pr.pt).norm2());
      if (sval * pnorm < 1e-9) continue;
      worst = std::max(worst, pr.absolute / (sval * pnorm));
    }

    rows.push_back({e, worst, 1.0 - std::sqrt((1.0 - e) / (1.0 + e))});
  }
  return rows;
}

nlohmann::json ResidualReport::to_json() const {
  nlohmann::json j;
  j["family"] = label;
  j["seed"] = seed;
  j["scheme"] = to_label(scheme);
  if (scheme != Scheme::exact) j["fd_step"] = fd_step;
  j["max_relative"] = max_relative;
  j["median_relative"] = median_relative;
  if (convergence_order) j["convergence_order"] = *convergence_order;
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : points) {
    pts.push_back({{"t", p.pt.t},
                   {"x", p.pt.x},
                   {"y", p.pt.y},
                   {"z", p.pt.z},
                   {"absolute", p.absolute},
                   {"relative", p.relative}});
  }
  j["points"] = pts;
  return j;
}

}  // namespace degsol

#include "degsol/degeneracy.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "degsol/errors.hpp"

namespace degsol {

namespace {

constexpr cd I{0.0, 1.0};

Spinor4 slash_gradient(const std::array<Spinor4, 4>& grad) {
  Spinor4 r;
  for (int mu = 0; mu < 4; ++mu) {
    const Spinor4 g = gamma(mu) * grad[mu];
    r = r + g;
  }
  return r;
}

// Right-hand side of the linear system a_mu gamma^mu psi = -i dslash psi + m psi.
Spinor4 inference_rhs(const Spinor4& /*psi*/, const Spinor4& slashed,
                      double mass, const Spinor4& value) {
  return (-I) * slashed + cd(mass) * value;
}

InferenceResult solve_real_least_squares(
    const Eigen::Matrix<double, Eigen::Dynamic, 4>& m,
    const Eigen::VectorXd& rhs) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      m, Eigen::ComputeThinU | Eigen::ComputeFullV);
  const Eigen::VectorXd sv = svd.singularValues();

  InferenceResult res;
  for (int i = 0; i < 4; ++i) res.singular_values[i] = i < sv.size() ? sv(i) : 0.0;
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  const double cutoff = 1e-8 * smax;

  // Minimum-norm particular solution via the truncated pseudo-inverse.
  Eigen::Vector4d x = Eigen::Vector4d::Zero();
  const Eigen::VectorXd utb = svd.matrixU().transpose() * rhs;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff) x += (utb(i) / sv(i)) * svd.matrixV().col(i);
  }
  for (int i = 0; i < 4; ++i) res.particular[i] = x(i);

  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) <= cutoff) {
      const Eigen::Vector4d v = svd.matrixV().col(i);
      res.nullspace.push_back({v(0), v(1), v(2), v(3)});
    }
  }

  res.residual_floor = (m * x - rhs).norm();
  res.scale = rhs.norm() + smax;
  return res;
}

}  // namespace

DegeneracyClass is_degenerate(const SpinorField& psi,
                              std::span<const SpacetimePoint> pts) {
  if (pts.size() < 10)
    throw Error("is_degenerate: at least 10 sample points required");
  bool all_small = true, all_large = true;
  for (const auto& pt : pts) {
    const Spinor4 v = psi.value(pt);
    const double mag = std::abs(bilinear(v, BilinearKind::deg_criterion));
    const double n2 = v.norm2();
    if (mag > 1e-10 * n2) all_small = false;
    if (mag <= 1e-6 * n2) all_large = false;
  }
  if (all_small) return DegeneracyClass::degenerate;
  if (all_large) return DegeneracyClass::nondegenerate;
  return DegeneracyClass::indeterminate;
}

Vec4 theta_direction(const Spinor4& psi) {
  const cd denom = bilinear(psi, BilinearKind::t_g2);
  const double n2 = psi.norm2();
  if (std::abs(denom) <= 1e-10 * n2)
    throw SingularDenominator("theta_direction: psi^T g2 psi is singular");

  const cd th1 = -bilinear(psi, BilinearKind::t_g0g1g2) / denom;
  const cd th2 = -bilinear(psi, BilinearKind::t_g0) / denom;
  const cd th3 = bilinear(psi, BilinearKind::t_g0g2g3) / denom;
  for (cd v : {th1, th2, th3}) {
    if (std::abs(v.imag()) > 1e-10 * (1.0 + std::abs(v)))
      throw SingularDenominator(
          "theta_direction: non-real component, direction undefined");
  }
  return {1.0, th1.real(), th2.real(), th3.real()};
}

Vec4 phi_direction(const Spinor2& psi, Helicity helicity) {
  const double n2 = psi.norm2();
  if (n2 <= 0.0) throw ZeroSpinor("phi_direction: zero spinor");
  const double sign = helicity == Helicity::positive ? -1.0 : 1.0;
  Vec4 dir{1.0, 0.0, 0.0, 0.0};
  for (int k = 1; k <= 3; ++k) {
    cd e = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        e += std::conj(psi[i]) * pauli(k)(i, j) * psi[j];
    dir[k] = sign * e.real() / n2;
  }
  return dir;
}

Vec4 blj_potential(const SpinorField& psi, const SpacetimePoint& pt) {
  const Spinor4 v = psi.value(pt);
  const cd denom = bilinear(v, BilinearKind::bar_g5);
  if (std::abs(denom) <= 1e-10 * v.norm2())
    throw SingularDenominator("blj_potential: psibar g5 psi is singular");

  const Spinor4 slashed = slash_gradient(psi.gradient(pt));
  static const Matrix4 g0g5 = gamma(0) * gamma5();

  Vec4 a{};
  for (int mu = 0; mu < 4; ++mu) {
    const Matrix4 m = g0g5 * gamma(mu);
    // psibar g5 g^mu dslash psi
    cd t1 = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) t1 += std::conj(v[i]) * m(i, j) * slashed[j];
    // conjugate-transposed partner with the derivative on the left
    cd t2 = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        t2 += std::conj(slashed[i]) * m(i, j) * v[j];
    const cd upper = -0.5 * I * (t1 + t2) / denom;  // contravariant component
    const double val = mu == 0 ? upper.real() : -upper.real();
    const double imag = std::abs(upper.imag());
    if (imag > 1e-8 * (1.0 + std::abs(upper)))
      throw NonRealPotential(
          "blj_potential: imaginary residue exceeds tolerance; spinor does not "
          "solve the equation for any real potential");
    a[mu] = val;
  }
  return a;
}

InferenceResult infer_potentials(const SpinorField& psi, double mass,
                                 const SpacetimePoint& pt) {
  const Spinor4 v = psi.value(pt);
  const Spinor4 slashed = slash_gradient(psi.gradient(pt));
  const Spinor4 rhs = inference_rhs(v, slashed, mass, v);

  Eigen::Matrix<double, 8, 4> m;
  Eigen::VectorXd b(8);
  for (int mu = 0; mu < 4; ++mu) {
    const Spinor4 col = gamma(mu) * v;
    for (int i = 0; i < 4; ++i) {
      m(i, mu) = col[i].real();
      m(i + 4, mu) = col[i].imag();
    }
  }
  for (int i = 0; i < 4; ++i) {
    b(i) = rhs[i].real();
    b(i + 4) = rhs[i].imag();
  }

  InferenceResult res = solve_real_least_squares(m, b);
  if (res.residual_floor > 1e-6 * res.scale)
    throw NoSolution("infer_potentials: no real potential solves the equation "
                     "at this point (residual floor " +
                         format_double(res.residual_floor) + ", scale " +
                         format_double(res.scale) + ")",
                     res.residual_floor, res.scale);
  return res;
}

InferenceResult infer_weyl_potentials(const WeylSpinorField& psi, WeylForm form,
                                      const SpacetimePoint& pt) {
  const Spinor2 v = psi.value(pt);
  const auto grad = psi.gradient(pt);

  // Operator columns and derivative contraction for the requested form:
  // positive: a_mu sigma^mu psi = -i sigma^mu d_mu psi
  // negative: a_mu sbar^mu psi = -i sbar^mu d_mu psi, sbar = (s0, -s1, -s2, -s3)
  auto apply = [&](int mu, const Spinor2& s) {
    Spinor2 r = pauli(mu) * s;
    if (form == WeylForm::negative && mu > 0) r = cd(-1.0) * r;
    return r;
  };

  Spinor2 slashed;
  for (int mu = 0; mu < 4; ++mu) slashed = slashed + apply(mu, grad[mu]);

  const Spinor2 rhs = (-I) * slashed;

  Eigen::Matrix<double, 4, 4> m;
  Eigen::VectorXd b(4);
  for (int mu = 0; mu < 4; ++mu) {
    const Spinor2 col = apply(mu, v);
    m(0, mu) = col[0].real();
    m(1, mu) = col[1].real();
    m(2, mu) = col[0].imag();
    m(3, mu) = col[1].imag();
  }
  b(0) = rhs[0].real();
  b(1) = rhs[1].real();
  b(2) = rhs[0].imag();
  b(3) = rhs[1].imag();

  InferenceResult res = solve_real_least_squares(m, b);
  if (res.residual_floor > 1e-6 * res.scale)
    throw NoSolution("infer_weyl_potentials: no real potential solves the "
                     "equation at this point",
                     res.residual_floor, res.scale);
  return res;
}

FourPotential extend_potential(const FourPotential& a, const ScalarField& s,
                               const DirectionField& dir) {
  const auto& base = a.components();
  const auto& d = dir.components();
  return FourPotential(
      {base[0] + s * d[0], base[1] + s * d[1], base[2] + s * d[2],
       base[3] + s * d[3]});
}

nlohmann::json InferenceResult::to_json() const {
  nlohmann::json j;
  j["particular"] = particular;
  j["nullspace"] = nullspace;
  j["residual_floor"] = residual_floor;
  j["singular_values"] = singular_values;
  j["scale"] = scale;
  return j;
}

DirectionMatch validate_direction(const SpinorField& psi, double mass,
                                  const DirectionField& dir,
                                  const SpacetimePoint& pt, double tol) {
  DirectionMatch out;
  out.closed_form = dir.value(pt);
  const InferenceResult inf = infer_potentials(psi, mass, pt);
  out.nullspace_dimension = static_cast<int>(inf.nullspace.size());
  if (inf.nullspace.empty()) return out;

  // Pick the null vector closest to the closed form, normalize theta_0 = 1.
  double best = -1.0;
  for (const auto& v : inf.nullspace) {
    if (std::abs(v[0]) < 1e-12) continue;
    Vec4 n{1.0, v[1] / v[0], v[2] / v[0], v[3] / v[0]};
    double diff = 0.0;
    for (int i = 0; i < 4; ++i)
      diff = std::max(diff, std::abs(n[i] - out.closed_form[i]));
    if (best < 0.0 || diff < best) {
      best = diff;
      out.nullspace_direction = n;
    }
  }
  if (best < 0.0) return out;
  out.max_component_diff = best;
  out.matched = best <= tol;
  return out;
}

}  // namespace degsol

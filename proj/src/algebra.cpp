#include "degsol/algebra.hpp"

#include <cmath>

#include "degsol/errors.hpp"

namespace degsol {

namespace {

constexpr cd I{0.0, 1.0};

Matrix2 make_pauli(int mu) {
  switch (mu) {
    case 0: return {1.0, 0.0, 0.0, 1.0};
    case 1: return {0.0, 1.0, 1.0, 0.0};
    case 2: return {0.0, -I, I, 0.0};
    default: return {1.0, 0.0, 0.0, -1.0};
  }
}

Matrix4 make_gamma(int mu) {
  Matrix4 g;
  const Matrix2 s = make_pauli(mu);
  if (mu == 0) {
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        g(i, j) = s(i, j);
        g(i + 2, j + 2) = -s(i, j);
      }
  } else {
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        g(i, j + 2) = s(i, j);
        g(i + 2, j) = -s(i, j);
      }
  }
  return g;
}

}  // namespace

const Matrix2& pauli(int mu) {
  static const Matrix2 table[4] = {make_pauli(0), make_pauli(1), make_pauli(2),
                                   make_pauli(3)};
  return table[mu];
}

const Matrix4& gamma(int mu) {
  static const Matrix4 table[4] = {make_gamma(0), make_gamma(1), make_gamma(2),
                                   make_gamma(3)};
  return table[mu];
}

const Matrix4& gamma5() {
  static const Matrix4 g5 =
      I * (make_gamma(0) * make_gamma(1) * make_gamma(2) * make_gamma(3));
  return g5;
}

cd quad_transpose(const Matrix4& m, const Spinor4& psi) {
  cd s = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) s += psi[i] * m(i, j) * psi[j];
  return s;
}

cd quad_dagger(const Matrix4& m, const Spinor4& psi) {
  cd s = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) s += std::conj(psi[i]) * m(i, j) * psi[j];
  return s;
}

cd bilinear(const Spinor4& psi, BilinearKind kind) {
  switch (kind) {
    case BilinearKind::deg_criterion: {
      static const Matrix4 crit = gamma(0) + gamma(0) * gamma5();
      return quad_dagger(crit, psi);
    }
    case BilinearKind::t_g2:
      return quad_transpose(gamma(2), psi);
    case BilinearKind::t_g0g1g2: {
      static const Matrix4 m = gamma(0) * gamma(1) * gamma(2);
      return quad_transpose(m, psi);
    }
    case BilinearKind::t_g0:
      return quad_transpose(gamma(0), psi);
    case BilinearKind::t_g0g2g3: {
      static const Matrix4 m = gamma(0) * gamma(2) * gamma(3);
      return quad_transpose(m, psi);
    }
    case BilinearKind::bar_g5: {
      static const Matrix4 m = gamma(0) * gamma5();
      return quad_dagger(m, psi);
    }
  }
  return 0.0;
}

SpinProjections spin_projections(const Spinor4& psi) {
  static const Matrix4 sx = (0.5 * I) * (gamma(2) * gamma(3));
  static const Matrix4 sy = (0.5 * I) * (gamma(3) * gamma(1));
  static const Matrix4 sz = (0.5 * I) * (gamma(1) * gamma(2));

  const cd vx = quad_dagger(sx, psi);
  const cd vy = quad_dagger(sy, psi);
  const cd vz = quad_dagger(sz, psi);

  const double tol = 1e-10 * psi.norm2();
  const double im =
      std::max({std::abs(vx.imag()), std::abs(vy.imag()), std::abs(vz.imag())});
  if (im > tol) {
    throw NonHermitianResidual("spin projection imaginary residue " +
                               std::to_string(im) + " exceeds tolerance");
  }
  return {vx.real(), vy.real(), vz.real()};
}

}  // namespace degsol

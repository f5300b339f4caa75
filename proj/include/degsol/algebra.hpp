#pragma once

#include <array>
#include <complex>

#include "degsol/core.hpp"

namespace degsol {

// Two- and four-component complex spinors. No normalization is implied:
// plane-wave-like states are non-normalizable.
class Spinor2 {
 public:
  Spinor2() = default;
  Spinor2(cd a, cd b) : c_{a, b} {}

  cd operator[](int i) const { return c_[i]; }
  cd& operator[](int i) { return c_[i]; }

  double norm2() const { return std::norm(c_[0]) + std::norm(c_[1]); }

  Spinor2 operator+(const Spinor2& o) const {
    return {c_[0] + o.c_[0], c_[1] + o.c_[1]};
  }
  Spinor2 operator-(const Spinor2& o) const {
    return {c_[0] - o.c_[0], c_[1] - o.c_[1]};
  }
  friend Spinor2 operator*(cd s, const Spinor2& v) {
    return {s * v.c_[0], s * v.c_[1]};
  }

 private:
  cd c_[2] = {};
};

class Spinor4 {
 public:
  Spinor4() = default;
  Spinor4(cd a, cd b, cd c, cd d) : c_{a, b, c, d} {}
  Spinor4(const Spinor2& up, const Spinor2& low)
      : c_{up[0], up[1], low[0], low[1]} {}

  cd operator[](int i) const { return c_[i]; }
  cd& operator[](int i) { return c_[i]; }

  Spinor2 upper() const { return {c_[0], c_[1]}; }
  Spinor2 lower() const { return {c_[2], c_[3]}; }

  double norm2() const {
    return std::norm(c_[0]) + std::norm(c_[1]) + std::norm(c_[2]) +
           std::norm(c_[3]);
  }

  Spinor4 operator+(const Spinor4& o) const {
    return {c_[0] + o.c_[0], c_[1] + o.c_[1], c_[2] + o.c_[2], c_[3] + o.c_[3]};
  }
  Spinor4 operator-(const Spinor4& o) const {
    return {c_[0] - o.c_[0], c_[1] - o.c_[1], c_[2] - o.c_[2], c_[3] - o.c_[3]};
  }
  friend Spinor4 operator*(cd s, const Spinor4& v) {
    return {s * v.c_[0], s * v.c_[1], s * v.c_[2], s * v.c_[3]};
  }

 private:
  cd c_[4] = {};
};

class Matrix2 {
 public:
  Matrix2() = default;
  Matrix2(cd a, cd b, cd c, cd d) : m_{a, b, c, d} {}

  cd operator()(int i, int j) const { return m_[2 * i + j]; }
  cd& operator()(int i, int j) { return m_[2 * i + j]; }

  Spinor2 operator*(const Spinor2& v) const {
    return {m_[0] * v[0] + m_[1] * v[1], m_[2] * v[0] + m_[3] * v[1]};
  }

 private:
  cd m_[4] = {};
};

class Matrix4 {
 public:
  Matrix4() = default;

  cd operator()(int i, int j) const { return m_[4 * i + j]; }
  cd& operator()(int i, int j) { return m_[4 * i + j]; }

  Matrix4 operator*(const Matrix4& o) const {
    Matrix4 r;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        cd s = 0.0;
        for (int k = 0; k < 4; ++k) s += (*this)(i, k) * o(k, j);
        r(i, j) = s;
      }
    return r;
  }

  Spinor4 operator*(const Spinor4& v) const {
    Spinor4 r;
    for (int i = 0; i < 4; ++i) {
      cd s = 0.0;
      for (int k = 0; k < 4; ++k) s += (*this)(i, k) * v[k];
      r[i] = s;
    }
    return r;
  }

  Matrix4 operator+(const Matrix4& o) const {
    Matrix4 r;
    for (int i = 0; i < 16; ++i) r.m_[i] = m_[i] + o.m_[i];
    return r;
  }
  Matrix4 operator-(const Matrix4& o) const {
    Matrix4 r;
    for (int i = 0; i < 16; ++i) r.m_[i] = m_[i] - o.m_[i];
    return r;
  }
  friend Matrix4 operator*(cd s, const Matrix4& m) {
    Matrix4 r;
    for (int i = 0; i < 16; ++i) r.m_[i] = s * m.m_[i];
    return r;
  }

  static Matrix4 identity() {
    Matrix4 r;
    for (int i = 0; i < 4; ++i) r(i, i) = 1.0;
    return r;
  }

  double max_abs_diff(const Matrix4& o) const {
    double m = 0.0;
    for (int i = 0; i < 16; ++i) m = std::max(m, std::abs(m_[i] - o.m_[i]));
    return m;
  }

 private:
  cd m_[16] = {};
};

// Pauli matrices; index 0 is the 2x2 identity.
const Matrix2& pauli(int mu);

// Contravariant gamma matrices in the Dirac representation, index 0..3.
const Matrix4& gamma(int mu);

// gamma5 = i gamma0 gamma1 gamma2 gamma3.
const Matrix4& gamma5();

// Quadratic spinor forms. The transpose forms use psi^T M psi (no
// conjugation); the dagger forms use psi^dagger M psi.
cd quad_transpose(const Matrix4& m, const Spinor4& psi);
cd quad_dagger(const Matrix4& m, const Spinor4& psi);

enum class BilinearKind {
  deg_criterion,  // psi^dag (gamma0 + gamma0 gamma5) psi; zero iff degenerate
  t_g2,           // psi^T gamma2 psi
  t_g0g1g2,       // psi^T gamma0 gamma1 gamma2 psi
  t_g0,           // psi^T gamma0 psi
  t_g0g2g3,       // psi^T gamma0 gamma2 gamma3 psi
  bar_g5,         // psibar gamma5 psi
};

cd bilinear(const Spinor4& psi, BilinearKind kind);

struct SpinProjections {
  double sx = 0.0, sy = 0.0, sz = 0.0;
};

// Expected spin projections (i/2) psi^dag gamma^a gamma^b psi along x, y, z.
// Throws NonHermitianResidual if an imaginary part exceeds 1e-10 * |psi|^2.
SpinProjections spin_projections(const Spinor4& psi);

}  // namespace degsol

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "degsol/algebra.hpp"
#include "degsol/core.hpp"

using namespace degsol;

namespace {

constexpr cd I{0.0, 1.0};

Spinor4 random_spinor(std::uint64_t& state) {
  Spinor4 v;
  for (int i = 0; i < 4; ++i)
    v[i] = cd(uniform_in(state, -1.0, 1.0), uniform_in(state, -1.0, 1.0));
  return v;
}

}  // namespace

TEST_CASE("gamma matrices in the Dirac representation") {
  const Matrix4& g0 = gamma(0);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const cd expected = i != j ? cd{} : (i < 2 ? cd{1.0} : cd{-1.0});
      CHECK(g0(i, j) == expected);
    }

  SUBCASE("gamma5 equals the direct product i g0 g1 g2 g3") {
    const Matrix4 brute = I * (gamma(0) * gamma(1) * gamma(2) * gamma(3));
    CHECK(gamma5().max_abs_diff(brute) == 0.0);
    // Block form: identity in the off-diagonal blocks.
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        CHECK(gamma5()(i, j) == cd{});
        CHECK(gamma5()(i, j + 2) == (i == j ? cd{1.0} : cd{}));
        CHECK(gamma5()(i + 2, j) == (i == j ? cd{1.0} : cd{}));
      }
  }

  SUBCASE("all sixteen anticommutators reproduce the metric") {
    const double eta[4] = {1.0, -1.0, -1.0, -1.0};
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu) {
        const Matrix4 anti = gamma(mu) * gamma(nu) + gamma(nu) * gamma(mu);
        Matrix4 expected;
        if (mu == nu) expected = cd(2.0 * eta[mu]) * Matrix4::identity();
        CHECK(anti.max_abs_diff(expected) == 0.0);
      }
  }

  SUBCASE("gamma5 squares to one and anticommutes with every gamma") {
    CHECK((gamma5() * gamma5()).max_abs_diff(Matrix4::identity()) == 0.0);
    for (int mu = 0; mu < 4; ++mu) {
      const Matrix4 anti = gamma5() * gamma(mu) + gamma(mu) * gamma5();
      CHECK(anti.max_abs_diff(Matrix4{}) == 0.0);
    }
  }
}

TEST_CASE("bilinear forms") {
  CHECK(bilinear(Spinor4{1, 0, 1, 0}, BilinearKind::deg_criterion) == cd{0.0});
  CHECK(bilinear(Spinor4{1, 0, 0, 0}, BilinearKind::deg_criterion) == cd{1.0});
  CHECK(bilinear(Spinor4{1, 0, 0, 1}, BilinearKind::t_g2) == cd(0.0, -2.0));

  SUBCASE("transpose form reduces to twice the upper-lower pauli pairing") {
    std::uint64_t state = 99;
    for (int trial = 0; trial < 50; ++trial) {
      const Spinor4 psi = random_spinor(state);
      const Spinor2 a = psi.upper(), b = psi.lower();
      cd pairing = 0.0;
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) pairing += a[i] * pauli(2)(i, j) * b[j];
      const cd full = bilinear(psi, BilinearKind::t_g2);
      CHECK(std::abs(full - 2.0 * pairing) < 1e-14);
    }
  }

  SUBCASE("criterion matches the block identity (a-b)^dag (a+b)") {
    std::uint64_t state = 7;
    for (int trial = 0; trial < 50; ++trial) {
      const Spinor4 psi = random_spinor(state);
      const Spinor2 a = psi.upper(), b = psi.lower();
      cd expected = 0.0;
      for (int i = 0; i < 2; ++i)
        expected += std::conj(a[i] - b[i]) * (a[i] + b[i]);
      CHECK(std::abs(bilinear(psi, BilinearKind::deg_criterion) - expected) <
            1e-14);
    }
  }
}

TEST_CASE("spin projections") {
  SUBCASE("rest spin-up state") {
    const SpinProjections s = spin_projections(Spinor4{1, 0, 0, 0});
    CHECK(s.sx == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(s.sy == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(s.sz == doctest::Approx(0.5).epsilon(1e-14));
  }

  SUBCASE("closed forms for the wave-like spinor shape") {
    std::uint64_t state = 2024;
    for (int trial = 0; trial < 40; ++trial) {
      const double alpha = uniform_in(state, -1.5, 1.5);
      const double beta = uniform_in(state, -1.5, 1.5);
      const double d = uniform_in(state, 0.0, 2.0 * pi);
      const cd c1 = cd(uniform_in(state, -1.0, 1.0), uniform_in(state, -1.0, 1.0));
      const cd eid = std::exp(I * d);
      const Spinor4 psi{c1 * std::cos(alpha), c1 * std::sin(alpha) * eid,
                        c1 * std::cos(beta), c1 * std::sin(beta) * eid};
      const double c2 = std::norm(c1);
      const SpinProjections s = spin_projections(psi);
      CHECK(s.sx == doctest::Approx(
                        0.5 * c2 * (std::sin(2 * alpha) + std::sin(2 * beta)) *
                        std::cos(d))
                        .epsilon(1e-12));
      CHECK(s.sy == doctest::Approx(
                        0.5 * c2 * (std::sin(2 * alpha) + std::sin(2 * beta)) *
                        std::sin(d))
                        .epsilon(1e-12));
      CHECK(s.sz == doctest::Approx(
                        0.5 * c2 * (std::cos(2 * alpha) + std::cos(2 * beta)))
                        .epsilon(1e-12));

      // The transverse magnitude is independent of d.
      const double transverse2 = s.sx * s.sx + s.sy * s.sy;
      const double expected_t2 =
          0.25 * c2 * c2 *
          std::pow(std::sin(2 * alpha) + std::sin(2 * beta), 2);
      CHECK(transverse2 == doctest::Approx(expected_t2).epsilon(1e-10));

      const double total =
          transverse2 + s.sz * s.sz;
      const double expected_total =
          0.25 * c2 * c2 *
          (std::pow(std::sin(2 * alpha) + std::sin(2 * beta), 2) +
           std::pow(std::cos(2 * alpha) + std::cos(2 * beta), 2));
      CHECK(total == doctest::Approx(expected_total).epsilon(1e-10));
    }
  }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "degsol/degeneracy.hpp"
#include "degsol/errors.hpp"
#include "degsol/families.hpp"
#include "test_support.hpp"

using namespace degsol;
using namespace degsol::testing;

namespace {

constexpr cd I{0.0, 1.0};

// Rest-frame massive plane wave, psi = (1,0,0,0) exp(-i m t).
SpinorField rest_frame_wave(double m) {
  const ScalarField phase = exp((-m) * I * ScalarField::var(0));
  return SpinorField({phase, ScalarField(), ScalarField(), ScalarField()});
}

// Superposition of two free massive helicity waves times a gauge phase; its
// exact potential is the gauge gradient. Nondegenerate, and the uniqueness
// denominator stays away from zero at generic points.
struct TwoWaveCase {
  SpinorField psi;
  Vec4 gauge;
};

TwoWaveCase make_two_wave(double m) {
  auto helicity_up = [m](double energy, double theta) {
    const double p = std::sqrt(energy * energy - m * m);
    const double lam = p / (energy + m);
    const double norm = std::sqrt(energy + m);
    const double ch = std::cos(theta / 2), sh = std::sin(theta / 2);
    const std::array<cd, 4> u{norm * ch, norm * sh, norm * lam * ch,
                              norm * lam * sh};
    const Vec3 n{std::sin(theta), 0.0, std::cos(theta)};
    const ScalarField phase =
        ScalarField::linear(-energy, p * n.x, p * n.y, p * n.z);
    return std::pair{u, phase};
  };

  const auto [u1, ph1] = helicity_up(1.5, 0.0);
  const auto [u2, ph2] = helicity_up(2.0, pi / 2);
  const Vec4 gauge{0.2, -0.1, 0.3, 0.15};
  const ScalarField g =
      ScalarField::linear(gauge[0], gauge[1], gauge[2], gauge[3]);

  std::array<ScalarField, 4> comps;
  for (int i = 0; i < 4; ++i)
    comps[i] = (u1[i] * exp(I * ph1) + u2[i] * exp(I * ph2)) * exp(I * g);
  return {SpinorField(std::move(comps)), gauge};
}

}  // namespace

TEST_CASE("degeneracy classification") {
  const Box box;
  const auto pts = sample_points(box, 40, 17);

  SUBCASE("every family is degenerate") {
    for (const auto& [name, fam] : all_families()) {
      CAPTURE(name);
      const auto local = sample_points(fam.sampling_box(), 40, 23);
      CHECK(is_degenerate(fam.spinor(), local) == DegeneracyClass::degenerate);
    }
  }

  SUBCASE("rest-frame wave is nondegenerate") {
    CHECK(is_degenerate(rest_frame_wave(1.0), pts) ==
          DegeneracyClass::nondegenerate);
  }

  SUBCASE("mixed pointwise results are indeterminate") {
    // Criterion is 1 - t^2 for psi = (1, 0, t, 0): zero on |t| = 1 only.
    const SpinorField psi({ScalarField::constant(1.0), ScalarField(),
                           ScalarField::var(0), ScalarField()});
    std::vector<SpacetimePoint> mixed;
    for (int i = 0; i < 5; ++i) {
      mixed.push_back({1.0, 0, 0, 0});
      mixed.push_back({0.0, 0, 0, 0});
    }
    CHECK(is_degenerate(psi, mixed) == DegeneracyClass::indeterminate);
  }

  SUBCASE("too few points is a contract violation") {
    std::vector<SpacetimePoint> few(3);
    CHECK_THROWS_AS(is_degenerate(rest_frame_wave(1.0), few), Error);
  }
}

TEST_CASE("closed-form directions") {
  SUBCASE("tunneling") {
    const double xi = 1.1;
    const auto fam = FamilyDescriptor::tunneling(xi, default_f(), cd(1, 0.5), 1.0);
    const Vec4 dir =
        theta_direction(fam.spinor().value({0.2, 0.4, -0.1, 0.3}));
    CHECK(dir[0] == 1.0);
    CHECK(dir[1] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(dir[2] == doctest::Approx(std::sin(xi)));
    CHECK(dir[3] == doctest::Approx(-std::cos(xi)));
  }

  SUBCASE("massless general matches its angles") {
    const double theta = 0.7, phi = 1.1;
    const auto fam = FamilyDescriptor::massless_general(
        theta, phi, cd(0.8, 0.3), cd(-0.4, 0.55), default_h());
    const Vec4 dir =
        theta_direction(fam.spinor().value({0.5, -0.2, 0.1, 0.8}));
    CHECK(dir[1] == doctest::Approx(-std::sin(theta) * std::cos(phi)));
    CHECK(dir[2] == doctest::Approx(-std::sin(theta) * std::sin(phi)));
    CHECK(dir[3] == doctest::Approx(-std::cos(theta)));
  }

  SUBCASE("wave-like direction tracks the phase") {
    const auto fam =
        FamilyDescriptor::wavelike(0.3, 0.9, default_h(), cd(1, 0), 1.0);
    for (const auto& pt : sample_points(fam.sampling_box(), 20, 67)) {
      const Vec4 closed = theta_direction(fam.spinor().value(pt));
      const Vec4 published = fam.direction().value(pt);
      for (int mu = 0; mu < 4; ++mu)
        CHECK(closed[mu] == doctest::Approx(published[mu]).epsilon(1e-10));
    }
  }

  SUBCASE("chirally doubled states have a singular transpose denominator") {
    CHECK_THROWS_AS(theta_direction(Spinor4{1, 0, 1, 0}), SingularDenominator);
  }
}

TEST_CASE("two-component directions") {
  SUBCASE("spin up") {
    const Vec4 pos = phi_direction(Spinor2{1, 0}, Helicity::positive);
    CHECK(pos[0] == 1.0);
    CHECK(pos[1] == doctest::Approx(0.0));
    CHECK(pos[2] == doctest::Approx(0.0));
    CHECK(pos[3] == doctest::Approx(-1.0));

    const Vec4 neg = phi_direction(Spinor2{1, 0}, Helicity::negative);
    CHECK(neg[3] == doctest::Approx(1.0));
  }

  SUBCASE("bloch angles") {
    const double theta = 0.9, phi = 0.4;
    const Spinor2 psi{std::cos(theta / 2),
                      std::exp(I * phi) * std::sin(theta / 2)};
    const Vec4 dir = phi_direction(psi, Helicity::positive);
    CHECK(dir[1] == doctest::Approx(-std::sin(theta) * std::cos(phi)));
    CHECK(dir[2] == doctest::Approx(-std::sin(theta) * std::sin(phi)));
    CHECK(dir[3] == doctest::Approx(-std::cos(theta)));

    // Unit spatial norm for pure states.
    CHECK(dir[1] * dir[1] + dir[2] * dir[2] + dir[3] * dir[3] ==
          doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("zero spinor rejected") {
    CHECK_THROWS_AS(phi_direction(Spinor2{0, 0}, Helicity::positive),
                    ZeroSpinor);
  }
}

TEST_CASE("unique-potential inverse") {
  SUBCASE("recovers a constructed potential and matches least squares") {
    const auto tc = make_two_wave(1.0);
    int checked = 0;
    for (const auto& pt : sample_points(Box{}, 40, 91)) {
      Vec4 a;
      try {
        a = blj_potential(tc.psi, pt);
      } catch (const SingularDenominator&) {
        continue;  // isolated zeros of the denominator
      }
      ++checked;
      for (int mu = 0; mu < 4; ++mu)
        CHECK(a[mu] == doctest::Approx(tc.gauge[mu]).epsilon(1e-8));

      const InferenceResult inf = infer_potentials(tc.psi, 1.0, pt);
      CHECK(inf.nullspace.empty());
      for (int mu = 0; mu < 4; ++mu)
        CHECK(a[mu] == doctest::Approx(inf.particular[mu]).epsilon(1e-8));
    }
    CHECK(checked >= 20);
  }

  SUBCASE("rest-frame wave has a singular denominator") {
    CHECK_THROWS_AS(blj_potential(rest_frame_wave(1.0), {0.3, 0, 0, 0}),
                    SingularDenominator);
  }

  SUBCASE("degenerate families never yield a silent value") {
    for (const auto& [name, fam] : all_families()) {
      if (fam.is_weyl()) continue;
      CAPTURE(name);
      const SpinorField psi = fam.spinor();
      for (const auto& pt : sample_points(fam.sampling_box(), 10, 13)) {
        CHECK_THROWS_AS(blj_potential(psi, pt), Error);
      }
    }
  }
}

TEST_CASE("least-squares potential inference") {
  SUBCASE("static tunneling state") {
    const auto fam =
        FamilyDescriptor::tunneling(pi / 2, ScalarField(), 1.0, 1.0);
    const InferenceResult inf =
        infer_potentials(fam.spinor(), 1.0, {0.1, 0.2, -0.3, 0.4});
    REQUIRE(inf.nullspace.size() == 1);
    const double r = 1.0 / std::sqrt(2.0);
    const Vec4 n = inf.nullspace[0];
    const double sign = n[0] > 0 ? 1.0 : -1.0;
    CHECK(sign * n[0] == doctest::Approx(r));
    CHECK(sign * n[1] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(sign * n[2] == doctest::Approx(r));
    CHECK(sign * n[3] == doctest::Approx(0.0).epsilon(1e-12));
    for (double c : inf.particular) CHECK(std::abs(c) < 1e-10);
  }

  SUBCASE("rest-frame wave pins a unique zero potential") {
    const InferenceResult inf =
        infer_potentials(rest_frame_wave(1.0), 1.0, {0.5, 0.1, 0.2, 0.3});
    CHECK(inf.nullspace.empty());
    for (double c : inf.particular) CHECK(std::abs(c) < 1e-12);
  }

  SUBCASE("non-solutions are rejected with a residual floor") {
    const SpinorField bad({ScalarField::constant(1.0), ScalarField::var(0),
                           ScalarField(), ScalarField()});
    CHECK_THROWS_AS(infer_potentials(bad, 1.0, {0.3, 0.1, 0.2, -0.4}),
                    NoSolution);
    try {
      infer_potentials(bad, 1.0, {0.3, 0.1, 0.2, -0.4});
    } catch (const NoSolution& e) {
      CHECK(e.residual_floor > 0.0);
      CHECK(e.scale > 0.0);
    }
  }

  SUBCASE("particular solution is orthogonal to an orthonormal null space") {
    for (const auto& [name, fam] : all_families()) {
      if (fam.is_weyl()) continue;
      CAPTURE(name);
      const SpinorField psi = fam.spinor();
      for (const auto& pt : sample_points(fam.sampling_box(), 6, 37)) {
        const InferenceResult inf = infer_potentials(psi, fam.mass(), pt);
        for (std::size_t i = 0; i < inf.nullspace.size(); ++i) {
          double dot_pn = 0.0, norm2 = 0.0;
          for (int mu = 0; mu < 4; ++mu) {
            dot_pn += inf.particular[mu] * inf.nullspace[i][mu];
            norm2 += inf.nullspace[i][mu] * inf.nullspace[i][mu];
          }
          CHECK(std::abs(dot_pn) < 1e-10);
          CHECK(norm2 == doctest::Approx(1.0).epsilon(1e-12));
          for (std::size_t j = i + 1; j < inf.nullspace.size(); ++j) {
            double dot_nn = 0.0;
            for (int mu = 0; mu < 4; ++mu)
              dot_nn += inf.nullspace[i][mu] * inf.nullspace[j][mu];
            CHECK(std::abs(dot_nn) < 1e-12);
          }
        }
      }
    }
  }

  SUBCASE("null space matches the published direction for every family") {
    for (const auto& [name, fam] : all_families()) {
      CAPTURE(name);
      const SpinorField psi = fam.spinor();
      const DirectionField dir = fam.direction();
      for (const auto& pt : sample_points(fam.sampling_box(), 12, 29)) {
        const DirectionMatch match =
            validate_direction(psi, fam.mass(), dir, pt);
        CHECK(match.nullspace_dimension >= 1);
        CHECK(match.matched);
      }
    }
  }

  SUBCASE("two-component inference agrees with the bloch direction") {
    const auto fam = FamilyDescriptor::weyl_localized(
        0.9 * ScalarField::var(0) + 0.2, 0.5 * ScalarField::var(0) + 0.3,
        default_h());
    const SpacetimePoint pt{0.4, 0.1, -0.2, 0.3};
    const InferenceResult inf =
        infer_weyl_potentials(fam.weyl_spinor(), WeylForm::positive, pt);
    REQUIRE(inf.nullspace.size() == 1);
    const Vec4 expect = phi_direction(fam.weyl_spinor().value(pt),
                                      Helicity::positive);
    const Vec4 n = inf.nullspace[0];
    REQUIRE(std::abs(n[0]) > 1e-12);
    for (int mu = 1; mu < 4; ++mu)
      CHECK(n[mu] / n[0] == doctest::Approx(expect[mu]).epsilon(1e-9));
  }
}

TEST_CASE("potential extension") {
  const auto fam = FamilyDescriptor::tunneling(pi / 2, ScalarField(), 1.0, 1.0);
  std::uint64_t state = 1234;
  const ScalarField s1 = ScalarField::random_catalog(state);
  const ScalarField s2 = ScalarField::random_catalog(state);
  const DirectionField dir = fam.direction();
  const FourPotential base = fam.potential();

  SUBCASE("zero shift is the identity") {
    const FourPotential same = extend_potential(base, ScalarField(), dir);
    for (const auto& pt : sample_points(fam.sampling_box(), 10, 3)) {
      for (int mu = 0; mu < 4; ++mu)
        CHECK(same.value(pt)[mu] == doctest::Approx(base.value(pt)[mu]));
    }
  }

  SUBCASE("shift along the static direction") {
    const FourPotential b = extend_potential(base, s1, dir);
    for (const auto& pt : sample_points(fam.sampling_box(), 10, 5)) {
      const double s = s1.real_at(pt);
      CHECK(b.value(pt)[0] == doctest::Approx(s));
      CHECK(b.value(pt)[1] == doctest::Approx(0.0));
      CHECK(b.value(pt)[2] == doctest::Approx(s));
      CHECK(b.value(pt)[3] == doctest::Approx(0.0));
    }
  }

  SUBCASE("extension is additive in the shift") {
    const FourPotential once = extend_potential(base, s1 + s2, dir);
    const FourPotential twice =
        extend_potential(extend_potential(base, s1, dir), s2, dir);
    for (const auto& pt : sample_points(fam.sampling_box(), 10, 7)) {
      for (int mu = 0; mu < 4; ++mu)
        CHECK(once.value(pt)[mu] ==
              doctest::Approx(twice.value(pt)[mu]).epsilon(1e-12));
    }
  }
}

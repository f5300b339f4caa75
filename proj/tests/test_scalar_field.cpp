#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "degsol/errors.hpp"
#include "degsol/scalar_field.hpp"

using namespace degsol;

namespace {

// Independent oracle: central finite differences of the evaluated tree.
cd fd_derivative(const ScalarField& f, const SpacetimePoint& p, int axis,
                 double h = 1e-6) {
  SpacetimePoint hi = p, lo = p;
  hi[axis] += h;
  lo[axis] -= h;
  return (f(hi) - f(lo)) / (2.0 * h);
}

SpacetimePoint random_point(std::uint64_t& state) {
  return {uniform_in(state, -1.5, 1.5), uniform_in(state, -1.5, 1.5),
          uniform_in(state, -1.5, 1.5), uniform_in(state, -1.5, 1.5)};
}

}  // namespace

TEST_CASE("evaluation and arithmetic") {
  const ScalarField t = ScalarField::var(0);
  const ScalarField x = ScalarField::var(1);
  const ScalarField f = 2.0 * t * x + sin(x) - 3.0;
  const SpacetimePoint p{0.5, 1.2, 0.0, 0.0};
  CHECK(f(p).real() ==
        doctest::Approx(2.0 * 0.5 * 1.2 + std::sin(1.2) - 3.0).epsilon(1e-15));
  CHECK(f(p).imag() == 0.0);

  SUBCASE("complex constants propagate") {
    const ScalarField g = exp(cd(0.0, 1.0) * t);
    CHECK(g(p).real() == doctest::Approx(std::cos(0.5)));
    CHECK(g(p).imag() == doctest::Approx(std::sin(0.5)));
  }

  SUBCASE("pow guard") {
    CHECK_THROWS_AS(t.pow(5), Error);
    CHECK(t.pow(3)(p).real() == doctest::Approx(0.125));
  }
}

TEST_CASE("exact derivatives match finite differences") {
  std::uint64_t state = 31;
  for (int trial = 0; trial < 30; ++trial) {
    const ScalarField f = ScalarField::random_catalog(state);
    for (int axis = 0; axis < 4; ++axis) {
      const ScalarField df = f.derivative(axis);
      for (int rep = 0; rep < 4; ++rep) {
        const SpacetimePoint p = random_point(state);
        const cd exact = df(p);
        const cd approx = fd_derivative(f, p, axis);
        CHECK(std::abs(exact - approx) < 1e-8 * (1.0 + std::abs(exact)));
      }
    }
  }
}

TEST_CASE("second derivatives stay exact") {
  std::uint64_t state = 77;
  for (int trial = 0; trial < 10; ++trial) {
    const ScalarField f = ScalarField::random_catalog(state);
    const ScalarField fx = f.derivative(1);
    const ScalarField fxx = fx.derivative(1);
    for (int rep = 0; rep < 5; ++rep) {
      const SpacetimePoint p = random_point(state);
      const cd exact = fxx(p);
      const cd approx = fd_derivative(fx, p, 1);
      CHECK(std::abs(exact - approx) < 1e-7 * (1.0 + std::abs(exact)));
      CHECK(std::isfinite(exact.real()));
    }
  }
}

TEST_CASE("gaussian derivative closes over the node set") {
  const ScalarField x = ScalarField::var(1);
  const ScalarField g = gaussian(0.5 * x);
  const ScalarField dg = g.derivative(1);
  const SpacetimePoint p{0.0, 0.8, 0.0, 0.0};
  const double u = 0.4;
  CHECK(dg(p).real() ==
        doctest::Approx(-2.0 * u * std::exp(-u * u) * 0.5).epsilon(1e-14));
}

TEST_CASE("substitution composes trees") {
  const ScalarField s0 = ScalarField::var(0) - 0.5 * ScalarField::var(1);
  const ScalarField slot = sin(ScalarField::var(0)) + ScalarField::var(0).pow(2);
  const ScalarField composed =
      slot.substitute({s0, ScalarField(), ScalarField(), ScalarField()});
  const SpacetimePoint p{1.0, 0.4, 0.0, 0.0};
  const double v = 1.0 - 0.2;
  CHECK(composed(p).real() ==
        doctest::Approx(std::sin(v) + v * v).epsilon(1e-15));

  // Chain rule survives composition.
  const cd exact = composed.derivative(1)(p);
  const cd approx = fd_derivative(composed, p, 1);
  CHECK(std::abs(exact - approx) < 1e-9);
}

TEST_CASE("dependency detection") {
  const ScalarField f = sin(ScalarField::var(2)) * ScalarField::var(0);
  CHECK(f.depends_on(0));
  CHECK(!f.depends_on(1));
  CHECK(f.depends_on(2));
  CHECK(!f.depends_on(3));
  CHECK(ScalarField().is_structural_zero());
  CHECK(!f.is_structural_zero());
}

TEST_CASE("json round trip preserves values") {
  std::uint64_t state = 5150;
  for (int trial = 0; trial < 15; ++trial) {
    const ScalarField f = ScalarField::random_catalog(state);
    const ScalarField g = ScalarField::from_json(f.to_json());
    for (int rep = 0; rep < 6; ++rep) {
      const SpacetimePoint p = random_point(state);
      CHECK(f(p) == g(p));
    }
  }

  SUBCASE("malformed input is rejected") {
    CHECK_THROWS_AS(ScalarField::from_json({{"op", "nope"}}), Error);
  }
}

TEST_CASE("catalog is deterministic under the seed") {
  std::uint64_t s1 = 42, s2 = 42;
  const ScalarField f1 = ScalarField::random_catalog(s1);
  const ScalarField f2 = ScalarField::random_catalog(s2);
  std::uint64_t probe = 1;
  for (int rep = 0; rep < 8; ++rep) {
    const SpacetimePoint p = random_point(probe);
    CHECK(f1(p) == f2(p));
    CHECK(std::abs(f1(p).imag()) == 0.0);  // catalog fields are real
  }
}

TEST_CASE("real_at rejects complex values") {
  const ScalarField g = exp(cd(0.0, 1.0) * ScalarField::var(0));
  CHECK_THROWS_AS(g.real_at({1.0, 0, 0, 0}), NonRealPotential);
  CHECK(ScalarField::constant(2.5).real_at({}) == 2.5);
}

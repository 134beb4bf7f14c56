#include <doctest.h>

#include <cmath>
#include <random>

#include "folprod/fibered_manifold.hpp"

using namespace folprod;

namespace {

SpeedProfile flat(double a0) { return SpeedProfile{a0, {}}; }

SpeedProfile sine_profile(double a0, double amp) {
  return SpeedProfile{a0, {SpeedTerm{1, 0.0, amp}}};
}

RationalFunction linear_g() {
  return RationalFunction({Cx(0, 0), Cx(1, 0)}, {Cx(1, 0)});
}

EquivariantFamily identity_family() {
  return EquivariantFamily(linear_g(), Cx(1, 0), {});
}

}  // namespace

TEST_SUITE("fibered_manifold") {

TEST_CASE("speed evaluation matches the trigonometric series") {
  SpeedProfile h = sine_profile(1.0, 0.5);
  CHECK(speed_eval(h, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(speed_eval(h, 0.25) == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(speed_eval(h, 0.75) == doctest::Approx(0.5).epsilon(1e-14));

  SpeedProfile two_term{0.5, {SpeedTerm{1, -0.5, 0.0}}};
  CHECK(speed_eval(two_term, 0.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(speed_eval(two_term, 0.5) == doctest::Approx(1.0).epsilon(1e-14));

  // Periodicity.
  for (double s : {0.1, 0.37, 0.9}) {
    CHECK(std::abs(speed_eval(h, s) - speed_eval(h, s + 1.0)) < 1e-13);
  }
}

TEST_CASE("transversality classification") {
  CHECK(transversality_check(flat(1.0)).transverse);
  CHECK(transversality_check(sine_profile(1.0, 0.5)).transverse);

  // 0.5 - 0.5 cos(2πs) has a double zero at s = 0: compact leaf, no crossing.
  SpeedProfile tangent{0.5, {SpeedTerm{1, -0.5, 0.0}}};
  auto res = transversality_check(tangent);
  CHECK_FALSE(res.transverse);
  REQUIRE(res.compact_leaves.size() == 1);
  CHECK(res.compact_leaves[0].s_star == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(res.compact_leaves[0].zero_order % 2 == 0);

  // 0.5 - 0.5 cos(4πs) vanishes at s = 0 and s = 1/2.
  SpeedProfile two_leaves{0.5, {SpeedTerm{2, -0.5, 0.0}}};
  auto res2 = transversality_check(two_leaves);
  CHECK_FALSE(res2.transverse);
  REQUIRE(res2.compact_leaves.size() == 2);
  CHECK(res2.compact_leaves[0].s_star == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(res2.compact_leaves[1].s_star == doctest::Approx(0.5).epsilon(1e-9));

  // Profiles that go negative are rejected outright.
  CHECK_THROWS_AS(transversality_check(flat(-1.0)), const Error&);
  // Pure sine crosses zero with odd order.
  CHECK_THROWS_AS(transversality_check(sine_profile(0.0, 1.0)), const Error&);
}

TEST_CASE("return time closed form for a sinusoidal profile") {
  // ∫₀¹ ds/(1 + a sin 2πs) = 1/sqrt(1 - a²)
  for (double a : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    double expected = 1.0 / std::sqrt(1.0 - a * a);
    CHECK(std::abs(base_return_time(sine_profile(1.0, a)) - expected) <
          1e-10);
  }
  CHECK(base_return_time(flat(1.0)) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(base_return_time(flat(2.0)) == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("return time scales inversely with a constant factor") {
  SpeedProfile h = sine_profile(1.0, 0.4);
  double t1 = base_return_time(h);
  for (double c : {2.0, 10.0}) {
    SpeedProfile scaled{h.a0 * c, {SpeedTerm{1, 0.0, 0.4 * c}}};
    CHECK(std::abs(base_return_time(scaled) - t1 / c) < 1e-12);
  }
}

TEST_CASE("return time rejects non-transverse profiles") {
  SpeedProfile tangent{0.5, {SpeedTerm{1, -0.5, 0.0}}};
  CHECK_THROWS_AS(base_return_time(tangent), const Error&);
}

TEST_CASE("RK4 oracle agrees with the quadrature") {
  CHECK(std::abs(flow_return_time_ode(flat(1.0), 3, 1e-3) - 3.0) < 1e-9);
  CHECK(std::abs(flow_return_time_ode(flat(2.0), 4, 1e-3) - 2.0) < 1e-9);

  double closed = 1.0 / std::sqrt(1.0 - 0.25);
  CHECK(std::abs(flow_return_time_ode(sine_profile(1.0, 0.5), 1, 1e-3) -
                 closed) < 1e-6);

  std::mt19937 rng(0x5eedf01d);
  std::uniform_real_distribution<double> base(0.8, 2.0);
  std::uniform_real_distribution<double> frac(-0.3, 0.3);
  for (int trial = 0; trial < 20; ++trial) {
    double a0 = base(rng);
    SpeedProfile h{a0, {SpeedTerm{1, a0 * frac(rng), a0 * frac(rng)},
                        SpeedTerm{2, a0 * frac(rng) * 0.5, 0.0}}};
    int n = 1 + trial % 3;
    double via_quadrature = n * base_return_time(h);
    double via_ode = flow_return_time_ode(h, n, 1e-3);
    CHECK(std::abs(via_ode - via_quadrature) < 1e-6);
  }

  CHECK_THROWS_AS(flow_return_time_ode(flat(1.0), 1, 0.5), const Error&);
}

TEST_CASE("scenario construction validates everything up front") {
  MoebiusMap id = MoebiusMap::identity_map();
  MappingTorusScenario ok(id, flat(1.0), identity_family());
  CHECK(ok.transverse());
  CHECK(ok.divisor().size() == 2);  // zero at 0, pole at ∞
  CHECK(ok.n_max() == 64);

  CHECK_THROWS_AS(
      MappingTorusScenario(id, flat(1.0), identity_family(), 0),
      const Error&);
}

TEST_CASE("scenario rejects divisor points that never return") {
  // φ = 2z is hyperbolic: the zero of (z-1)/z at 1 wanders off to infinity.
  MoebiusMap dbl = MoebiusMap::make(Cx(2, 0), Cx(0, 0), Cx(0, 0), Cx(1, 0));
  RationalFunction g({Cx(-1, 0), Cx(1, 0)}, {Cx(0, 0), Cx(1, 0)});
  EquivariantFamily family(g, Cx(1, 0), {});
  try {
    MappingTorusScenario bad(dbl, flat(1.0), family);
    FAIL("expected OrbitNotClosed");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OrbitNotClosed);
    CHECK(std::string(e.what()).find(
              "zero at 1+0i not periodic under phi (n_max=64)") !=
          std::string::npos);
  }
}

TEST_CASE("scenario rejects a family whose declared multiplier is wrong") {
  MoebiusMap rot = MoebiusMap::make(Cx(0, 1), Cx(0, 0), Cx(0, 0), Cx(1, 0));
  Poly num = {Cx(1, 0), Cx(0, 0), Cx(0, 0), Cx(0, 0), Cx(1, 0)};
  Poly den = {Cx(0, 0), Cx(0, 0), Cx(1, 0)};
  // True multiplier is -1; declare -1.001.
  EquivariantFamily off(RationalFunction(num, den), Cx(-1.001, 0), {});
  try {
    MappingTorusScenario bad(rot, flat(1.0), off);
    FAIL("expected NotProjectivelyInvariant");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotProjectivelyInvariant);
    CHECK(std::string(e.what()).find("declared mu disagrees") !=
          std::string::npos);
  }

  // The correct declaration sails through.
  EquivariantFamily good(RationalFunction(num, den), Cx(-1, 0), {});
  MappingTorusScenario fine(rot, flat(1.0), good);
  CHECK(fine.transverse());
}

TEST_CASE("compact-leaf scenarios construct when the divisor cooperates") {
  // Constant family (no zeros or poles), tangent profile: valid but not
  // transverse.
  SpeedProfile tangent{0.5, {SpeedTerm{1, -0.5, 0.0}}};
  EquivariantFamily constant(RationalFunction({Cx(1, 0)}, {Cx(1, 0)}),
                             Cx(1, 0), {});
  MappingTorusScenario leafy(MoebiusMap::identity_map(), tangent, constant);
  CHECK_FALSE(leafy.transverse());
  CHECK(leafy.compact_leaves().size() == 1);
  CHECK(leafy.divisor().empty());
}

}  // TEST_SUITE

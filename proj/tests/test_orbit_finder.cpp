#include <doctest.h>

#include <cmath>
#include <complex>
#include <string>

#include "folprod/orbit_finder.hpp"

using namespace folprod;

namespace {

MoebiusMap quarter_turn() {
  return MoebiusMap::make(Cx(0, 1), Cx(0, 0), Cx(0, 0), Cx(1, 0));
}

MappingTorusScenario quartic_scenario() {
  RationalFunction g({Cx(0, 0), Cx(0, 0), Cx(0, 0), Cx(0, 0), Cx(1, 0)},
                     {Cx(1, 0), Cx(0, 0), Cx(0, 0), Cx(0, 0), Cx(1, 0)});
  return MappingTorusScenario(quarter_turn(), SpeedProfile{1.0, {}},
                              EquivariantFamily(g, Cx(1, 0), {}));
}

}  // namespace

TEST_SUITE("orbit_finder") {

TEST_CASE("primitive periods of rotations and dilations") {
  MoebiusMap rot = quarter_turn();
  CHECK(primitive_period(rot, PointCP1::from_complex(Cx(0, 0)), 64, 1e-9) ==
        1);
  CHECK(primitive_period(rot, PointCP1::infinity(), 64, 1e-9) == 1);
  // e^{iπ/4} cycles through the four primitive eighth roots.
  PointCP1 root8 = PointCP1::from_complex(std::polar(1.0, 0.78539816339744831));
  CHECK(primitive_period(rot, root8, 64, 1e-9) == 4);

  MoebiusMap dbl = MoebiusMap::make(Cx(2, 0), Cx(0, 0), Cx(0, 0), Cx(1, 0));
  CHECK_FALSE(
      primitive_period(dbl, PointCP1::from_complex(Cx(1, 0)), 64, 1e-9)
          .has_value());
  // The fixed points of the dilation still return.
  CHECK(primitive_period(dbl, PointCP1::from_complex(Cx(0, 0)), 64, 1e-9) ==
        1);
  CHECK(primitive_period(dbl, PointCP1::infinity(), 64, 1e-9) == 1);

  CHECK(primitive_period(MoebiusMap::identity_map(),
                         PointCP1::from_complex(Cx(0.3, 0.8)), 64, 1e-9) == 1);
}

TEST_CASE("divisor closure reports the first wandering point") {
  MoebiusMap dbl = MoebiusMap::make(Cx(2, 0), Cx(0, 0), Cx(0, 0), Cx(1, 0));
  RationalFunction g({Cx(-1, 0), Cx(1, 0)}, {Cx(0, 0), Cx(1, 0)});
  try {
    check_divisor_closure(dbl, rat_divisor(g), 64, 1e-9);
    FAIL("expected OrbitNotClosed");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OrbitNotClosed);
    CHECK(std::string(e.what()) ==
          "OrbitNotClosed: zero at 1+0i not periodic under phi (n_max=64)");
  }

  // The same divisor is fine under a rotation.
  MoebiusMap rot = quarter_turn();
  CHECK_NOTHROW(check_divisor_closure(rot, rat_divisor(g), 64, 1e-9));
}

TEST_CASE("identity scenario yields two fixed orbits") {
  RationalFunction g({Cx(0, 0), Cx(1, 0)}, {Cx(1, 0)});
  MappingTorusScenario scenario(MoebiusMap::identity_map(),
                                SpeedProfile{1.0, {}},
                                EquivariantFamily(g, Cx(1, 0), {}));
  auto orbits = find_singular_orbits(scenario);
  REQUIRE(orbits.size() == 2);
  for (const auto& orbit : orbits) {
    CHECK(orbit.period_n == 1);
    CHECK(orbit.length_l == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(orbit.points.size() == 1);
  }
  // Finite point sorts before infinity.
  CHECK_FALSE(orbits[0].points[0].is_infinity());
  CHECK(orbits[0].order == 1);
  CHECK(orbits[1].points[0].is_infinity());
  CHECK(orbits[1].order == -1);
}

TEST_CASE("quarter-turn quartic groups the pole ring into one orbit") {
  auto orbits = find_singular_orbits(quartic_scenario());
  REQUIRE(orbits.size() == 2);

  CHECK(orbits[0].period_n == 1);
  CHECK(orbits[0].order == 4);
  CHECK(std::abs(orbits[0].points[0].as_complex()) < 1e-9);
  CHECK(orbits[0].length_l == doctest::Approx(1.0).epsilon(1e-12));

  CHECK(orbits[1].period_n == 4);
  CHECK(orbits[1].order == -1);
  CHECK(orbits[1].points.size() == 4);
  CHECK(orbits[1].length_l == doctest::Approx(4.0).epsilon(1e-12));
  // The orbit starts at its lexicographically least point: re = im = -1/sqrt2.
  Cx base = orbits[1].points[0].as_complex();
  CHECK(base.real() == doctest::Approx(-std::sqrt(0.5)).epsilon(1e-9));
  CHECK(base.imag() == doctest::Approx(-std::sqrt(0.5)).epsilon(1e-9));
  // Consecutive points are φ-images.
  for (size_t j = 0; j + 1 < orbits[1].points.size(); ++j) {
    PointCP1 next = moebius_apply(quarter_turn(), orbits[1].points[j]);
    CHECK(chordal_distance(next, orbits[1].points[j + 1]) < 1e-9);
  }
}

TEST_CASE("orbit output is deterministic across repeated runs") {
  auto a = find_singular_orbits(quartic_scenario());
  auto b = find_singular_orbits(quartic_scenario());
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].period_n == b[i].period_n);
    CHECK(a[i].order == b[i].order);
    CHECK(a[i].length_l == b[i].length_l);  // bitwise equality intended
    REQUIRE(a[i].points.size() == b[i].points.size());
    for (size_t j = 0; j < a[i].points.size(); ++j) {
      CHECK(a[i].points[j].value() == b[i].points[j].value());
    }
  }
}

TEST_CASE("orbit length scales with the return time") {
  SpeedProfile h{1.0, {SpeedTerm{1, 0.0, 0.5}}};
  double t1 = base_return_time(h);
  CHECK(orbit_length(3, h) == doctest::Approx(3.0 * t1).epsilon(1e-13));
  CHECK(orbit_length(1, SpeedProfile{2.0, {}}) ==
        doctest::Approx(0.5).epsilon(1e-13));
}

}  // TEST_SUITE

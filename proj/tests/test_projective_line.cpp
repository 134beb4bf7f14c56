#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "folprod/projective_line.hpp"

using namespace folprod;

namespace {

Poly quartic_num() {  // z^4
  return {Cx(0, 0), Cx(0, 0), Cx(0, 0), Cx(0, 0), Cx(1, 0)};
}
Poly quartic_den() {  // z^4 + 1
  return {Cx(1, 0), Cx(0, 0), Cx(0, 0), Cx(0, 0), Cx(1, 0)};
}

MoebiusMap random_moebius(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (;;) {
    Cx a(u(rng), u(rng)), b(u(rng), u(rng));
    Cx c(u(rng), u(rng)), d(u(rng), u(rng));
    if (std::abs(a * d - b * c) > 0.1) return MoebiusMap::make(a, b, c, d);
  }
}

PointCP1 random_point(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  return PointCP1::from_complex(Cx(u(rng), u(rng)));
}

}  // namespace

TEST_SUITE("projective_line") {

TEST_CASE("factories canonicalize the chart") {
  PointCP1 small = PointCP1::from_complex(Cx(0.5, 0.25));
  CHECK(small.chart() == PointCP1::Chart::standard);
  CHECK(small.value() == Cx(0.5, 0.25));

  PointCP1 big = PointCP1::from_complex(Cx(4, 0));
  CHECK(big.chart() == PointCP1::Chart::infinity);
  CHECK(std::abs(big.value() - Cx(0.25, 0)) < 1e-15);
  CHECK(std::abs(big.as_complex() - Cx(4, 0)) < 1e-12);

  PointCP1 inf = PointCP1::infinity();
  CHECK(inf.is_infinity());
  CHECK_THROWS_AS(inf.as_complex(), const Error&);

  // [n : d] with d = 0 is the point at infinity.
  CHECK(PointCP1::from_projective(Cx(1, 0), Cx(0, 0)).is_infinity());
  CHECK(std::abs(PointCP1::from_projective(Cx(3, 0), Cx(6, 0)).as_complex() -
                 Cx(0.5, 0)) < 1e-15);
  CHECK_THROWS_AS(PointCP1::from_projective(Cx(0, 0), Cx(0, 0)), const Error&);
}

TEST_CASE("chordal distance hits its landmarks") {
  PointCP1 zero = PointCP1::from_complex(Cx(0, 0));
  PointCP1 one = PointCP1::from_complex(Cx(1, 0));
  PointCP1 minus_one = PointCP1::from_complex(Cx(-1, 0));
  PointCP1 inf = PointCP1::infinity();

  CHECK(chordal_distance(zero, inf) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(chordal_distance(one, minus_one) ==
        doctest::Approx(2.0).epsilon(1e-14));
  CHECK(chordal_distance(one, inf) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(chordal_distance(zero, zero) == doctest::Approx(0.0));

  // Chart-independent: the same point built two ways is at distance 0.
  PointCP1 raw(PointCP1::Chart::standard, Cx(4, 0));
  PointCP1 canonical = PointCP1::from_complex(Cx(4, 0));
  CHECK(chordal_distance(raw, canonical) < 1e-15);
}

TEST_CASE("moebius normalization and degeneracy") {
  MoebiusMap m = MoebiusMap::make(Cx(2, 0), Cx(0, 0), Cx(0, 0), Cx(2, 0));
  CHECK(std::abs(m.a * m.d - m.b * m.c - Cx(1, 0)) < 1e-14);

  CHECK_THROWS_AS(
      MoebiusMap::make(Cx(1, 0), Cx(2, 0), Cx(2, 0), Cx(4, 0)),
      const Error&);
}

TEST_CASE("moebius action matches hand evaluation") {
  // z -> 1/z swaps 0 and infinity.
  MoebiusMap inv = MoebiusMap::make(Cx(0, 0), Cx(1, 0), Cx(1, 0), Cx(0, 0));
  CHECK(moebius_apply(inv, PointCP1::from_complex(Cx(0, 0))).is_infinity());
  CHECK(std::abs(
            moebius_apply(inv, PointCP1::infinity()).as_complex()) < 1e-15);
  CHECK(std::abs(moebius_apply(inv, PointCP1::from_complex(Cx(2, 0)))
                     .as_complex() -
                 Cx(0.5, 0)) < 1e-14);

  // z -> iz rotates a quarter turn.
  MoebiusMap rot = MoebiusMap::make(Cx(0, 1), Cx(0, 0), Cx(0, 0), Cx(1, 0));
  CHECK(std::abs(moebius_apply(rot, PointCP1::from_complex(Cx(1, 0)))
                     .as_complex() -
                 Cx(0, 1)) < 1e-14);
}

TEST_CASE("composition and inversion are consistent at random points") {
  std::mt19937 rng(0x0f011a7e);
  for (int trial = 0; trial < 1000; ++trial) {
    MoebiusMap m1 = random_moebius(rng);
    MoebiusMap m2 = random_moebius(rng);
    PointCP1 p = random_point(rng);

    PointCP1 composed = moebius_apply(moebius_compose(m1, m2), p);
    PointCP1 stepwise = moebius_apply(m1, moebius_apply(m2, p));
    CHECK(chordal_distance(composed, stepwise) < 1e-12);

    PointCP1 back = moebius_apply(m1.inverse(), moebius_apply(m1, p));
    CHECK(chordal_distance(back, p) < 1e-12);
  }
}

TEST_CASE("rational functions canonicalize and reject non-coprime input") {
  RationalFunction f(quartic_num(), quartic_den());
  CHECK(f.num_degree() == 4);
  CHECK(f.den_degree() == 4);
  // Monic denominator.
  CHECK(std::abs(f.den().back() - Cx(1, 0)) < 1e-15);

  // (z-1)/(z-1) shares a root.
  CHECK_THROWS_AS(RationalFunction({Cx(-1, 0), Cx(1, 0)},
                                   {Cx(-1, 0), Cx(1, 0)}),
                  const Error&);
}

TEST_CASE("evaluation handles both charts") {
  RationalFunction f(quartic_num(), quartic_den());  // z^4/(z^4+1)
  CHECK(std::abs(rat_eval(f, PointCP1::from_complex(Cx(0, 0))).as_complex()) <
        1e-15);
  // At infinity the leading coefficients take over: limit is 1.
  CHECK(std::abs(rat_eval(f, PointCP1::infinity()).as_complex() - Cx(1, 0)) <
        1e-12);

  RationalFunction g(quartic_den(), {Cx(0, 0), Cx(0, 0), Cx(1, 0)});
  // (z^4+1)/z^2 blows up at 0 and at infinity.
  CHECK(rat_eval(g, PointCP1::from_complex(Cx(0, 0))).is_infinity());
  CHECK(rat_eval(g, PointCP1::infinity()).is_infinity());
  CHECK(std::abs(rat_eval(g, PointCP1::from_complex(Cx(1, 0))).as_complex() -
                 Cx(2, 0)) < 1e-14);
}

TEST_CASE("derivative matches closed forms") {
  // d/dz [z^4/(z^4+1)] = 4z^3/(z^4+1)^2
  RationalFunction f(quartic_num(), quartic_den());
  RationalFunction df = rat_derivative(f);
  for (Cx z : {Cx(0.5, 0.2), Cx(-1.3, 0.7), Cx(0.1, -0.9)}) {
    Cx expected = 4.0 * z * z * z / std::pow(z * z * z * z + 1.0, 2);
    Cx got = rat_eval(df, PointCP1::from_complex(z)).as_complex();
    CHECK(std::abs(got - expected) < 1e-11);
  }

  // Repeated denominator roots must cancel: d/dz [1/(z-1)^2] = -2/(z-1)^3.
  RationalFunction h({Cx(1, 0)},
                     poly_from_roots(Cx(1, 0), {Cx(1, 0), Cx(1, 0)}));
  RationalFunction dh = rat_derivative(h);
  CHECK(dh.den_degree() == 3);
  Cx z(2.5, 0.0);
  CHECK(std::abs(rat_eval(dh, PointCP1::from_complex(z)).as_complex() -
                 Cx(-2, 0) / std::pow(z - 1.0, 3)) < 1e-12);
}

TEST_CASE("reciprocal substitution exposes behaviour at infinity") {
  RationalFunction f(quartic_num(), quartic_den());
  RationalFunction fr = rat_reciprocal_substitution(f);
  // f(1/w) -> 1/(1+w^4): value 1 at w = 0.
  CHECK(std::abs(rat_eval(fr, PointCP1::from_complex(Cx(0, 0))).as_complex() -
                 Cx(1, 0)) < 1e-14);

  RationalFunction g(quartic_den(), {Cx(0, 0), Cx(0, 0), Cx(1, 0)});
  RationalFunction gr = rat_reciprocal_substitution(g);
  // g has a double pole at infinity, so g(1/w) has a double pole at 0.
  CHECK(rat_eval(gr, PointCP1::from_complex(Cx(0, 0))).is_infinity());
  Cx w(0.5, 0.0);
  Cx z = 1.0 / w;
  Cx expected = (z * z * z * z + 1.0) / (z * z);
  CHECK(std::abs(rat_eval(gr, PointCP1::from_complex(w)).as_complex() -
                 expected) < 1e-12);
}

TEST_CASE("divisor extraction finds zeros, poles, and infinity") {
  RationalFunction f(quartic_num(), quartic_den());  // z^4/(z^4+1)
  Divisor div = rat_divisor(f);
  REQUIRE(div.size() == 5);

  int zero_order = 0;
  int pole_count = 0;
  for (const DivisorPoint& d : div) {
    CHECK_FALSE(d.point.is_infinity());  // degrees match, no divisor at ∞
    if (d.order > 0) {
      zero_order += d.order;
      CHECK(std::abs(d.point.as_complex()) < 1e-9);
    } else {
      ++pole_count;
      CHECK(d.order == -1);
      CHECK(std::abs(std::abs(d.point.as_complex()) - 1.0) < 1e-9);
    }
  }
  CHECK(zero_order == 4);
  CHECK(pole_count == 4);

  RationalFunction g(quartic_den(), {Cx(0, 0), Cx(0, 0), Cx(1, 0)});
  Divisor gdiv = rat_divisor(g);  // (z^4+1)/z^2
  REQUIRE(gdiv.size() == 6);
  // Finite points sorted first, infinity last.
  CHECK(gdiv.back().point.is_infinity());
  CHECK(gdiv.back().order == -2);
  int total = 0;
  for (const DivisorPoint& d : gdiv) total += d.order;
  CHECK(total == 0);
}

TEST_CASE("divisor degree is exactly zero for random factored functions") {
  std::mt19937 rng(0x91aefa11);
  std::uniform_int_distribution<int> deg(0, 3);
  std::uniform_real_distribution<double> coord(-1.2, 1.2);

  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Cx> taken;
    auto fresh_root = [&]() {
      for (;;) {
        Cx cand(coord(rng), coord(rng));
        bool clear = true;
        for (const Cx& t : taken) {
          if (std::abs(cand - t) < 0.2) clear = false;
        }
        if (clear) {
          taken.push_back(cand);
          return cand;
        }
      }
    };

    int nd = deg(rng), dd = deg(rng);
    std::vector<Cx> zeros, poles;
    for (int i = 0; i < nd; ++i) zeros.push_back(fresh_root());
    for (int i = 0; i < dd; ++i) poles.push_back(fresh_root());
    RationalFunction f(poly_from_roots(Cx(1, 0), zeros),
                       poly_from_roots(Cx(1, 0), poles));
    CHECK(divisor_degree_check(f) == 0);
  }
}

TEST_CASE("invariance multiplier is recovered for equivariant functions") {
  MoebiusMap rot = MoebiusMap::make(Cx(0, 1), Cx(0, 0), Cx(0, 0), Cx(1, 0));

  // g(iz) = g(z) for g = z^4/(z^4+1).
  RationalFunction f(quartic_num(), quartic_den());
  CHECK(std::abs(invariance_multiplier(f, rot, 32) - Cx(1, 0)) < 1e-9);

  // g(iz) = -g(z) for g = (z^4+1)/z^2.
  RationalFunction g(quartic_den(), {Cx(0, 0), Cx(0, 0), Cx(1, 0)});
  CHECK(std::abs(invariance_multiplier(g, rot, 32) - Cx(-1, 0)) < 1e-9);

  // The identity fixes everything with multiplier 1.
  RationalFunction lin({Cx(0, 0), Cx(1, 0)}, {Cx(1, 0)});
  CHECK(std::abs(invariance_multiplier(lin, MoebiusMap::identity_map(), 32) -
                 Cx(1, 0)) < 1e-12);
}

TEST_CASE("multiplier follows the power law under iterates") {
  MoebiusMap rot = MoebiusMap::make(Cx(0, 1), Cx(0, 0), Cx(0, 0), Cx(1, 0));
  RationalFunction g(quartic_den(), {Cx(0, 0), Cx(0, 0), Cx(1, 0)});
  Cx mu = invariance_multiplier(g, rot, 32);

  MoebiusMap power = rot;
  Cx expected = mu;
  for (int n = 2; n <= 4; ++n) {
    power = moebius_compose(rot, power);
    expected *= mu;
    CHECK(std::abs(invariance_multiplier(g, power, 32) - expected) < 1e-9);
  }
}

TEST_CASE("non-equivariant pairs are rejected") {
  MoebiusMap dbl = MoebiusMap::make(Cx(2, 0), Cx(0, 0), Cx(0, 0), Cx(1, 0));
  RationalFunction f({Cx(-1, 0), Cx(1, 0)}, {Cx(0, 0), Cx(1, 0)});
  CHECK_THROWS_AS(invariance_multiplier(f, dbl, 32), const Error&);
}

}  // TEST_SUITE

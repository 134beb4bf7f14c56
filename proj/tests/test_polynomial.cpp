#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "folprod/polynomial.hpp"

using namespace folprod;

namespace {

bool near(Cx a, Cx b, double tol = 1e-10) { return std::abs(a - b) < tol; }

// Sorts machine roots by (re, im) so fixed expectations can be compared.
std::vector<Cx> sorted(std::vector<Cx> v) {
  std::sort(v.begin(), v.end(), [](Cx a, Cx b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return v;
}

}  // namespace

TEST_SUITE("polynomial") {

TEST_CASE("evaluation and synthetic division agree with direct algebra") {
  // p(z) = (z - 1)(z + 2) = z^2 + z - 2
  Poly p = {Cx(-2, 0), Cx(1, 0), Cx(1, 0)};
  CHECK(near(poly_eval(p, Cx(1, 0)), Cx(0, 0), 1e-15));
  CHECK(near(poly_eval(p, Cx(0, 1)), Cx(-3, 1), 1e-15));

  Poly q = poly_deflate(p, Cx(1, 0));
  REQUIRE(q.size() == 2);
  CHECK(near(q[0], Cx(2, 0), 1e-15));
  CHECK(near(q[1], Cx(1, 0), 1e-15));
}

TEST_CASE("poly_from_roots rebuilds coefficients") {
  Poly p = poly_from_roots(Cx(2, 0), {Cx(1, 0), Cx(-1, 0)});
  // 2(z-1)(z+1) = 2z^2 - 2
  REQUIRE(p.size() == 3);
  CHECK(near(p[0], Cx(-2, 0), 1e-15));
  CHECK(near(p[1], Cx(0, 0), 1e-15));
  CHECK(near(p[2], Cx(2, 0), 1e-15));
}

TEST_CASE("aberth recovers simple real roots") {
  Poly p = poly_from_roots(Cx(1, 0), {Cx(1, 0), Cx(2, 0), Cx(3, 0)});
  auto roots = sorted(aberth_roots(p));
  REQUIRE(roots.size() == 3);
  CHECK(near(roots[0], Cx(1, 0)));
  CHECK(near(roots[1], Cx(2, 0)));
  CHECK(near(roots[2], Cx(3, 0)));
}

TEST_CASE("aberth recovers the fourth roots of -1") {
  // z^4 + 1
  Poly p = {Cx(1, 0), Cx(0, 0), Cx(0, 0), Cx(0, 0), Cx(1, 0)};
  auto roots = aberth_roots(p);
  REQUIRE(roots.size() == 4);
  for (const Cx& r : roots) {
    CHECK(std::abs(std::abs(r) - 1.0) < 1e-10);
    CHECK(near(poly_eval(p, r), Cx(0, 0), 1e-9));
  }
}

TEST_CASE("clustering resolves multiple roots with certified multiplicity") {
  // (z - 1)^3 (z + 2)^2
  Poly p = poly_from_roots(
      Cx(1, 0), {Cx(1, 0), Cx(1, 0), Cx(1, 0), Cx(-2, 0), Cx(-2, 0)});
  auto clustered = poly_roots_clustered(p);
  REQUIRE(clustered.size() == 2);
  std::sort(clustered.begin(), clustered.end(),
            [](const PolyRoot& a, const PolyRoot& b) {
              return a.position.real() < b.position.real();
            });
  CHECK(clustered[0].multiplicity == 2);
  CHECK(near(clustered[0].position, Cx(-2, 0), 1e-8));
  CHECK(clustered[1].multiplicity == 3);
  CHECK(near(clustered[1].position, Cx(1, 0), 1e-8));
}

TEST_CASE("clustering keeps genuinely close simple roots apart") {
  // Two simple roots separated by 1e-3: far beyond the cluster tolerance,
  // so they must survive as distinct simple roots.
  Poly p = poly_from_roots(Cx(1, 0), {Cx(0.5, 0), Cx(0.501, 0)});
  auto clustered = poly_roots_clustered(p);
  REQUIRE(clustered.size() == 2);
  CHECK(clustered[0].multiplicity == 1);
  CHECK(clustered[1].multiplicity == 1);
}

TEST_CASE("random factored polynomials round-trip through the root pipeline") {
  std::mt19937 rng(0x5eedf01d);
  std::uniform_int_distribution<int> pick_deg(1, 6);
  std::uniform_real_distribution<double> coord(-1.5, 1.5);

  for (int trial = 0; trial < 60; ++trial) {
    int deg = pick_deg(rng);
    std::vector<Cx> roots;
    while (static_cast<int>(roots.size()) < deg) {
      Cx cand(coord(rng), coord(rng));
      bool clear = true;
      for (const Cx& r : roots) {
        if (std::abs(cand - r) < 0.15) clear = false;
      }
      if (clear) roots.push_back(cand);
    }
    Poly p = poly_from_roots(Cx(1, 0), roots);
    auto found = sorted(aberth_roots(p));
    auto expected = sorted(roots);
    REQUIRE(found.size() == expected.size());
    for (size_t i = 0; i < found.size(); ++i) {
      CHECK(near(found[i], expected[i], 1e-8));
    }
  }
}

TEST_CASE("log-derivative contour integral counts zeros minus poles") {
  // num = z (one zero at the origin), den = z - 2 (pole outside the contour)
  Poly num = {Cx(0, 0), Cx(1, 0)};
  Poly den = {Cx(-2, 0), Cx(1, 0)};
  CHECK(poly_winding_number(num, den, Cx(0, 0), 0.5) == 1);

  // Pull the pole inside: counts cancel.
  Poly den_in = {Cx(-0.1, 0), Cx(1, 0)};
  CHECK(poly_winding_number(num, den_in, Cx(0, 0), 0.5) == 0);

  // A quadruple zero counts with multiplicity.
  Poly quartic = poly_from_roots(
      Cx(1, 0), {Cx(0.3, 0), Cx(0.3, 0), Cx(0.3, 0), Cx(0.3, 0)});
  CHECK(poly_winding_number(quartic, {Cx(1, 0)}, Cx(0.3, 0), 0.2) == 4);
}

TEST_CASE("raw contour integral is close to its snapped value") {
  Poly num = {Cx(0, 0), Cx(0, 0), Cx(1, 0)};  // z^2
  Cx raw = poly_log_contour_integral(num, {Cx(1, 0)}, Cx(0, 0), 0.7);
  CHECK(std::abs(raw - Cx(2, 0)) < 1e-10);
}

TEST_CASE("contour through a root is rejected") {
  // Root at 0.5 sits exactly on the circle |z| = 0.5, where the first
  // quadrature node lands.
  Poly num = {Cx(-0.5, 0), Cx(1, 0)};
  CHECK_THROWS_AS(poly_winding_number(num, {Cx(1, 0)}, Cx(0, 0), 0.5),
                  const Error&);
}

TEST_CASE("chordal distance matches hand values") {
  CHECK(chordal_finite(Cx(0, 0), Cx(0, 0)) == doctest::Approx(0.0));
  // d(0, 1) = 2 / sqrt(2) = sqrt(2)
  CHECK(chordal_finite(Cx(0, 0), Cx(1, 0)) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  // Symmetry.
  CHECK(chordal_finite(Cx(0.3, -0.4), Cx(-1.1, 2.0)) ==
        doctest::Approx(chordal_finite(Cx(-1.1, 2.0), Cx(0.3, -0.4))));
  // Bounded by the sphere diameter.
  CHECK(chordal_finite(Cx(1e8, 0), Cx(-1e8, 0)) <= 2.0 + 1e-12);
}

}  // TEST_SUITE

#include "folprod/winding.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace folprod {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Minimal chordal clearance between the circle |x - c| = r (in the given
// chart) and the point d, probed on a fine sample of the contour.
double contour_clearance(PointCP1::Chart chart, Cx c, double r,
                         const PointCP1& d) {
  double best = std::numeric_limits<double>::infinity();
  const int kSamples = 512;
  for (int i = 0; i < kSamples; ++i) {
    double th = kTwoPi * i / kSamples;
    PointCP1 x(chart, c + r * Cx(std::cos(th), std::sin(th)));
    best = std::min(best, chordal_distance(x, d));
  }
  return best;
}

}  // namespace

int winding_order(const RationalFunction& f, const PointCP1& center,
                  double radius, double conv_tol, double snap_tol) {
  if (f.is_zero())
    throw Error(ErrorCode::ValidationError,
                "winding of the zero function is undefined");
  if (!(radius > 0.0))
    throw Error(ErrorCode::ValidationError, "winding radius must be positive");

  Divisor div = rat_divisor(f);

  // Work in the center's canonical chart; near ∞ integrate f(1/w) instead.
  const bool inf_chart = center.chart() == PointCP1::Chart::infinity;
  const RationalFunction fw = inf_chart ? rat_reciprocal_substitution(f) : f;
  const Cx c = center.value();

  for (int attempt = 0; attempt <= 8; ++attempt) {
    double rho = radius / double(1 << attempt);
    // Local chordal-to-chart scale 2/(1+|c|^2), capped for silly radii.
    double r = std::min(rho * (1.0 + std::norm(c)) / 2.0, 1.0 + std::norm(c));
    bool clear = true;
    for (const auto& d : div)
      if (contour_clearance(center.chart(), c, r, d.point) <= 1e-7) {
        clear = false;
        break;
      }
    if (!clear) continue;
    return poly_winding_number(fw.num(), fw.den(), c, r, conv_tol, snap_tol);
  }
  throw Error(ErrorCode::ContourThroughSingularity,
              "no contour radius within 8 halvings of " +
                  std::to_string(radius) +
                  " clears the divisor by chordal 1e-7");
}

std::vector<int> order_constancy_profile(const MappingTorusScenario& scenario,
                                         const ClosedOrbitRecord& orbit,
                                         int m) {
  if (m < 2)
    throw Error(ErrorCode::ValidationError, "m",
                "constancy profile needs at least 2 samples");
  if (orbit.points.empty())
    throw Error(ErrorCode::ValidationError, "orbit has no points");

  // Radius: a quarter of the smallest chordal gap between divisor points,
  // so the contour encloses exactly the intended point.
  const Divisor& div = scenario.divisor();
  double min_gap = 2.0;  // chordal diameter of the sphere
  for (size_t i = 0; i < div.size(); ++i)
    for (size_t j = i + 1; j < div.size(); ++j)
      min_gap = std::min(min_gap, chordal_distance(div[i].point, div[j].point));
  double rho = 0.25 * min_gap;

  std::vector<int> profile;
  profile.reserve(m);
  for (int j = 0; j < m; ++j) {
    double s = double(j) / m;
    const PointCP1& p = orbit.points[j % orbit.points.size()];
    // The leaf restriction of f differs from g by the constant μ^s·q(s);
    // folding it in makes this a check of the actual leaf function.
    Cx factor = scenario.family().leaf_factor(s);
    RationalFunction leaf_f(poly_scale(scenario.family().g().num(), factor),
                            scenario.family().g().den());
    profile.push_back(winding_order(leaf_f, p, rho,
                                    scenario.tolerances().quadrature,
                                    scenario.tolerances().winding_snap));
  }
  return profile;
}

}  // namespace folprod

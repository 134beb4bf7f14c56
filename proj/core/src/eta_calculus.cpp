#include "folprod/eta_calculus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "folprod/quadrature.hpp"

namespace folprod {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const Cx kTwoPiI(0.0, kTwoPi);

// In-chart circle radius for a chordal radius rho around a canonically
// stored point (|value| <= 1 in its chart). The factor (1+|c|^2)/4 is half
// the local metric scale, so the circle stays inside the chordal disc.
double chart_radius(double rho, Cx c) { return rho * (1.0 + std::norm(c)) / 4.0; }

}  // namespace

double default_tube_radius(const MappingTorusScenario& scenario) {
  const Divisor& div = scenario.divisor();
  double min_gap = 2.0;
  for (size_t i = 0; i < div.size(); ++i)
    for (size_t j = i + 1; j < div.size(); ++j)
      min_gap = std::min(min_gap, chordal_distance(div[i].point, div[j].point));
  return 0.25 * min_gap;
}

void validate_tube(const MappingTorusScenario& scenario, const TubeSpec& tube) {
  if (!(tube.radius > 0.0))
    throw Error(ErrorCode::ValidationError, "tube radius must be positive");
  const auto& pts = tube.orbit.points;
  if (pts.empty())
    throw Error(ErrorCode::ValidationError, "tube orbit has no points");
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j)
      if (chordal_distance(pts[i], pts[j]) <= 2.0 * tube.radius)
        throw Error(ErrorCode::ValidationError,
                    "tube discs of radius " + std::to_string(tube.radius) +
                        " around orbit points overlap");
  for (const auto& d : scenario.divisor()) {
    bool is_own = false;
    for (const auto& p : pts)
      if (chordal_distance(d.point, p) < 1e-12) is_own = true;
    if (is_own) continue;
    for (const auto& p : pts)
      if (chordal_distance(d.point, p) <= tube.radius + 1e-7)
        throw Error(ErrorCode::ValidationError,
                    "a foreign divisor point lies inside a tube disc");
  }
}

Cx TrigExpr2::eval(double u, double v) const {
  Cx acc = c0;
  for (const auto& t : terms) {
    double th = kTwoPi * (t.k * u + t.l * v);
    acc += t.coeff * Cx(std::cos(th), std::sin(th));
  }
  return acc;
}

Cx TrigExpr2::d_u(double u, double v) const {
  Cx acc(0.0, 0.0);
  for (const auto& t : terms) {
    double th = kTwoPi * (t.k * u + t.l * v);
    acc += t.coeff * Cx(0.0, kTwoPi * t.k) * Cx(std::cos(th), std::sin(th));
  }
  return acc;
}

Cx TrigExpr2::d_v(double u, double v) const {
  Cx acc(0.0, 0.0);
  for (const auto& t : terms) {
    double th = kTwoPi * (t.k * u + t.l * v);
    acc += t.coeff * Cx(0.0, kTwoPi * t.l) * Cx(std::cos(th), std::sin(th));
  }
  return acc;
}

double SurfacePatch::s(double u, double v) const {
  return s0 + s_winding * u + s_periodic.eval(u, v).real();
}
double SurfacePatch::s_u(double u, double v) const {
  return s_winding + s_periodic.d_u(u, v).real();
}
double SurfacePatch::s_v(double u, double v) const {
  return s_periodic.d_v(u, v).real();
}

SurfacePatch tube_point_patch(const PointCP1& point, double chordal_radius) {
  SurfacePatch patch;
  patch.s0 = 0.0;
  patch.s_winding = 1;
  if (point.is_infinity()) {
    // Large counterclockwise circle: winds once around ∞ (and -1 around the
    // finite plane), picking up +ord_∞ through the degree-zero identity.
    patch.z.c0 = Cx(0.0, 0.0);
    patch.z.terms.push_back({0, 1, Cx(2.0 / chordal_radius, 0.0)});
    return patch;
  }
  Cx center = point.as_complex();
  double r = chart_radius(chordal_radius, point.value());
  if (std::abs(center) > 1.0) {
    // Finite point stored in the infinity chart: the patch still lives in
    // the standard plane, with the radius rescaled to the local metric and
    // capped so the circle cannot reach 0.
    r = std::min(chordal_radius * (1.0 + std::norm(center)) / 4.0,
                 std::abs(center) / 2.0);
  }
  patch.z.c0 = center;
  patch.z.terms.push_back({0, -1, Cx(r, 0.0)});  // clockwise in v
  return patch;
}

std::vector<SurfacePatch> tube_patches(const MappingTorusScenario& scenario,
                                       const TubeSpec& tube) {
  validate_tube(scenario, tube);
  std::vector<SurfacePatch> patches;
  patches.reserve(tube.orbit.points.size());
  for (const auto& p : tube.orbit.points)
    patches.push_back(tube_point_patch(p, tube.radius));
  return patches;
}

std::vector<SurfacePatch> leaf_boundary_patches(const CompactLeafRecord& leaf,
                                                double collar) {
  std::vector<SurfacePatch> patches;
  for (double side : {-collar, collar}) {
    SurfacePatch patch;
    patch.z.terms.push_back({0, 1, Cx(0.5, 0.0)});
    patch.s0 = leaf.s_star + side;
    patch.s_winding = 0;
    patches.push_back(std::move(patch));
  }
  return patches;
}

Cx eta_pullback(const MappingTorusScenario& scenario, Cx z, double s, Cx z_u,
                Cx z_v, double s_u, double s_v) {
  // Jacobian first: a leaf-tangent patch has exactly zero density even at
  // points where the flow stalls or the divisor sits.
  Cx jac = z_u * s_v - z_v * s_u;
  if (jac == Cx(0.0, 0.0)) return {0.0, 0.0};

  double hs = speed_eval(scenario.speed(), s);
  if (hs <= 1e-9)
    throw Error(ErrorCode::NotTransverseAtPoint,
                "h(" + std::to_string(s) + ") = " + std::to_string(hs) +
                    " is not positive");
  Cx logd = leafwise_log_derivative(scenario.family(), z, s);
  return logd * jac / hs;
}

namespace {

// Shared validity sampling for surface quadrature: the patch must clear the
// divisor by chordal 1e-6 and stay transverse unless it is a leaf torus.
void validate_patch(const MappingTorusScenario& scenario,
                    const SurfacePatch& patch) {
  const int kGrid = 128;
  const bool leaf_torus = patch.s_constant();
  for (int i = 0; i < kGrid; ++i) {
    for (int j = 0; j < kGrid; ++j) {
      double u = double(i) / kGrid, v = double(j) / kGrid;
      PointCP1 zp = PointCP1::from_complex(patch.z.eval(u, v));
      for (const auto& d : scenario.divisor())
        if (chordal_distance(zp, d.point) <= 1e-6)
          throw Error(ErrorCode::ValidationError,
                      "patch passes within chordal 1e-6 of a divisor point");
      if (!leaf_torus && speed_eval(scenario.speed(), patch.s(u, v)) <= 1e-9)
        throw Error(ErrorCode::NotTransverseAtPoint,
                    "patch leaves the transverse region at (u,v) = (" +
                        std::to_string(u) + "," + std::to_string(v) + ")");
    }
  }
}

// Winding count of the loop v ↦ z(u0, v) around a finite point, by summed
// argument increments. Sampled finely enough for the validated margins.
int loop_winding(const TrigExpr2& z, double u0, Cx p) {
  const int kSamples = 4096;
  double total = 0.0;
  Cx prev = z.eval(u0, 0.0) - p;
  for (int i = 1; i <= kSamples; ++i) {
    Cx cur = z.eval(u0, double(i) / kSamples) - p;
    total += std::arg(cur / prev);
    prev = cur;
  }
  return static_cast<int>(std::lround(total / kTwoPi));
}

}  // namespace

Cx tube_boundary_integral(const MappingTorusScenario& scenario,
                          const TubeSpec& tube) {
  validate_tube(scenario, tube);
  double T1 =
      base_return_time(scenario.speed(), scenario.tolerances().quadrature);

  // Σ_j ∮_{C_j} g'/g dz, each circle in its point's canonical chart (the
  // circle around ∞ integrates the chart-transformed function around w = 0).
  Cx loops(0.0, 0.0);
  const RationalFunction& g = scenario.family().g();
  for (const auto& p : tube.orbit.points) {
    const bool inf_chart = p.chart() == PointCP1::Chart::infinity;
    const RationalFunction fw = inf_chart ? rat_reciprocal_substitution(g) : g;
    Cx c = p.value();
    double r = chart_radius(tube.radius, c);
    Cx raw = poly_log_contour_integral(fw.num(), fw.den(), c, r,
                                       scenario.tolerances().quadrature);
    loops += kTwoPiI * raw;  // ∮ = 2πi · (the normalized integral)
  }
  return T1 * loops;
}

Cx surface_integral_eta(const MappingTorusScenario& scenario,
                        const SurfacePatch& patch) {
  validate_patch(scenario, patch);
  auto density = [&](double u, double v) -> Cx {
    return eta_pullback(scenario, patch.z.eval(u, v), patch.s(u, v),
                        patch.z.d_u(u, v), patch.z.d_v(u, v), patch.s_u(u, v),
                        patch.s_v(u, v));
  };
  QuadratureResult q = periodic_trapezoid_2d(density, 16, 1 << 10, 1e-9);
  if (!q.converged)
    throw Error(ErrorCode::QuadratureNotConverged,
                "surface quadrature still moving at 2^10 nodes per axis");
  return q.value;
}

double stokes_residual(const MappingTorusScenario& scenario,
                       const SurfacePatch& patch) {
  validate_patch(scenario, patch);
  // The closedness argument needs a divisor-free enclosure: the z-loop must
  // wind zero times around every finite divisor point.
  for (const auto& d : scenario.divisor()) {
    if (d.point.is_infinity()) continue;
    int w = loop_winding(patch.z, 0.0, d.point.as_complex());
    if (w != 0)
      throw Error(ErrorCode::ValidationError,
                  "stokes patch winds " + std::to_string(w) +
                      " times around a divisor point");
  }
  return std::abs(surface_integral_eta(scenario, patch));
}

double prop2_balance(const MappingTorusScenario& scenario,
                     const std::vector<Method>& partition) {
  Cx acc(0.0, 0.0);

  if (!scenario.transverse()) {
    // Degenerate Proposition-2 case: the flow stalls at compact leaves, so
    // no closed transverse orbit can carry the divisor.
    if (!scenario.divisor().empty())
      throw Error(ErrorCode::NotTransverse,
                  "scenario has compact leaves but a nonempty divisor; the "
                  "closed-orbit hypothesis fails");
    if (!partition.empty())
      throw Error(ErrorCode::ValidationError,
                  "partition must be empty when there are no orbits");
    for (const auto& leaf : scenario.compact_leaves())
      for (const auto& patch : leaf_boundary_patches(leaf))
        acc += surface_integral_eta(scenario, patch) / kTwoPiI;
    return std::abs(acc);
  }

  auto orbits = find_singular_orbits(scenario);
  if (partition.size() != orbits.size())
    throw Error(ErrorCode::ValidationError,
                "partition assigns " + std::to_string(partition.size()) +
                    " methods to " + std::to_string(orbits.size()) +
                    " orbits");
  double rho = default_tube_radius(scenario);
  for (size_t i = 0; i < orbits.size(); ++i) {
    if (partition[i] == Method::A) {
      acc += orbits[i].length_l * orbits[i].order;
    } else {
      TubeSpec tube{orbits[i], rho};
      for (const auto& patch : tube_patches(scenario, tube))
        acc += surface_integral_eta(scenario, patch) / kTwoPiI;
    }
  }
  return std::abs(acc);
}

}  // namespace folprod

#include "folprod/fibered_manifold.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "folprod/orbit_finder.hpp"
#include "folprod/quadrature.hpp"

namespace folprod {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kGrid = 4096;

double speed_derivative(const SpeedProfile& h, double s) {
  double acc = 0.0;
  for (const auto& t : h.terms) {
    double th = kTwoPi * t.k * s;
    acc += kTwoPi * t.k * (-t.cos_coeff * std::sin(th) + t.sin_coeff * std::cos(th));
  }
  return acc;
}

// Critical point of h inside (lo, hi), where h' changes sign - to +.
double refine_minimum(const SpeedProfile& h, double lo, double hi) {
  for (int i = 0; i < 80; ++i) {
    double mid = 0.5 * (lo + hi);
    (speed_derivative(h, mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

int estimate_zero_order(const SpeedProfile& h, double s_star) {
  // h ~ C·(s-s*)^m near the zero, so h(2δ)/h(δ) ~ 2^m.
  const double delta = 1e-3;
  double e1 = std::abs(speed_eval(h, s_star + delta));
  double e2 = std::abs(speed_eval(h, s_star + 2 * delta));
  if (e1 <= 0.0 || e2 <= 0.0) return 2;
  int m = static_cast<int>(std::lround(std::log2(e2 / e1)));
  return std::max(2, m);
}

}  // namespace

double speed_eval(const SpeedProfile& h, double s) {
  double acc = h.a0;
  for (const auto& t : h.terms) {
    double th = kTwoPi * t.k * s;
    acc += t.cos_coeff * std::cos(th) + t.sin_coeff * std::sin(th);
  }
  return acc;
}

TransversalityResult transversality_check(const SpeedProfile& h) {
  for (const auto& t : h.terms)
    if (t.k < 1)
      throw Error(ErrorCode::ValidationError, "speed",
                  "term frequency must be a positive integer");

  if (h.terms.empty()) {
    // Constant speed: classify directly.
    if (h.a0 < -1e-9)
      throw Error(ErrorCode::NegativeSpeed,
                  "constant speed " + std::to_string(h.a0) + " is negative");
    if (std::abs(h.a0) <= 1e-10)
      throw Error(ErrorCode::ValidationError, "speed",
                  "identically zero speed has no transverse region");
    if (h.a0 <= 1e-9)
      throw Error(ErrorCode::ValidationError, "speed",
                  "constant speed too close to zero to classify");
    return {true, {}};
  }

  std::vector<double> grid(kGrid);
  for (int i = 0; i < kGrid; ++i) grid[i] = speed_eval(h, double(i) / kGrid);

  double grid_min = *std::min_element(grid.begin(), grid.end());
  if (grid_min < -1e-9)
    throw Error(ErrorCode::NegativeSpeed,
                "speed reaches " + std::to_string(grid_min) +
                    " (the flow must be forward-transverse)");

  // Refine every grid-local minimum; cyclically, so a zero at s = 0 is seen.
  TransversalityResult result;
  for (int i = 0; i < kGrid; ++i) {
    double prev = grid[(i + kGrid - 1) % kGrid];
    double next = grid[(i + 1) % kGrid];
    if (grid[i] > prev || grid[i] > next) continue;
    // h' changes sign from - to + inside the bracketing cell pair.
    double lo = (double(i) - 1.0) / kGrid, hi = (double(i) + 1.0) / kGrid;
    if (speed_derivative(h, lo) >= 0.0 || speed_derivative(h, hi) <= 0.0)
      continue;  // plateau tie or not a genuine interior minimum
    double s_star = refine_minimum(h, lo, hi);
    double value = speed_eval(h, s_star);
    if (value < -1e-9)
      throw Error(ErrorCode::NegativeSpeed,
                  "speed reaches " + std::to_string(value) + " near s = " +
                      std::to_string(s_star));
    if (std::abs(value) <= 1e-10) {
      double s_norm = s_star - std::floor(s_star);  // into [0,1)
      if (s_norm >= 1.0 || 1.0 - s_norm < 1e-9) s_norm = 0.0;
      bool dup = false;
      for (const auto& leaf : result.compact_leaves) {
        double d = std::abs(leaf.s_star - s_norm);
        if (std::min(d, 1.0 - d) < 1e-8) dup = true;
      }
      if (!dup)
        result.compact_leaves.push_back({s_norm, estimate_zero_order(h, s_norm)});
    } else if (value <= 1e-9) {
      throw Error(ErrorCode::ValidationError, "speed",
                  "minimum " + std::to_string(value) +
                      " is too close to zero to classify");
    }
  }
  std::sort(result.compact_leaves.begin(), result.compact_leaves.end(),
            [](const CompactLeafRecord& a, const CompactLeafRecord& b) {
              return a.s_star < b.s_star;
            });
  result.transverse = result.compact_leaves.empty();

  // Punctured-neighborhood positivity around each recorded leaf.
  for (const auto& leaf : result.compact_leaves)
    for (double d : {1e-4, 1e-3, 1e-2})
      if (speed_eval(h, leaf.s_star + d) <= 0.0 &&
          speed_eval(h, leaf.s_star - d) <= 0.0)
        throw Error(ErrorCode::ValidationError, "speed",
                    "zero at s = " + std::to_string(leaf.s_star) +
                        " is not isolated");
  return result;
}

double base_return_time(const SpeedProfile& h, double quad_tol) {
  auto cls = transversality_check(h);
  if (!cls.transverse)
    throw Error(ErrorCode::NotTransverse,
                "speed has zeros; the return time integral diverges");
  auto integrand = [&](double s) -> std::complex<double> {
    return {1.0 / speed_eval(h, s), 0.0};
  };
  QuadratureResult q = periodic_trapezoid(integrand, 64, 1 << 16, quad_tol);
  if (!q.converged)
    throw Error(ErrorCode::QuadratureNotConverged,
                "return-time quadrature still moving at 2^16 nodes");
  return q.value.real();
}

double flow_return_time_ode(const SpeedProfile& h, int n, double step) {
  if (n < 1)
    throw Error(ErrorCode::ValidationError, "n must be positive");
  if (!(step > 0.0) || step > 1e-3)
    throw Error(ErrorCode::ValidationError,
                "ODE step must be positive and at most 1e-3");
  auto cls = transversality_check(h);
  if (!cls.transverse)
    throw Error(ErrorCode::NotTransverse,
                "flow stalls at a compact leaf; no return");

  auto rk4 = [&](double s, double dt) {
    double k1 = speed_eval(h, s);
    double k2 = speed_eval(h, s + 0.5 * dt * k1);
    double k3 = speed_eval(h, s + 0.5 * dt * k2);
    double k4 = speed_eval(h, s + dt * k3);
    return s + dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
  };

  double t = 0.0, s = 0.0;
  const double target = static_cast<double>(n);
  const long max_steps = static_cast<long>(target / (step * 1e-9)) + 1000;
  for (long i = 0; i < max_steps; ++i) {
    double s_next = rk4(s, step);
    if (s_next >= target) {
      // Bisect the final partial step; a single RK4 step of size <= 1e-3
      // carries O(step^5) error, far below the 1e-6 agreement contract.
      double lo = 0.0, hi = step;
      for (int b = 0; b < 60; ++b) {
        double mid = 0.5 * (lo + hi);
        (rk4(s, mid) < target ? lo : hi) = mid;
      }
      return t + 0.5 * (lo + hi);
    }
    s = s_next;
    t += step;
  }
  throw Error(ErrorCode::NumericalFailure,
              "flow failed to accumulate the requested increase");
}

MappingTorusScenario::MappingTorusScenario(MoebiusMap phi, SpeedProfile speed,
                                           EquivariantFamily family, int n_max,
                                           Tolerances tolerances)
    : phi_(phi),
      speed_(std::move(speed)),
      family_(std::move(family)),
      n_max_(n_max),
      tolerances_(tolerances) {
  if (n_max_ < 1)
    throw Error(ErrorCode::ValidationError, "n_max", "must be positive");
  for (double t : {tolerances_.winding_snap, tolerances_.residual,
                   tolerances_.quadrature, tolerances_.periodicity})
    if (!(t > 0.0))
      throw Error(ErrorCode::ValidationError, "tolerances",
                  "all tolerances must be positive");
  transversality_ = transversality_check(speed_);

  // Hypothesis checks in order of structure: first that the zeros and poles
  // actually lie on closed φ-orbits (a hyperbolic φ fails here, before any
  // multiplier is even meaningful), then that the declared μ matches the
  // measured one, then that the full family glues over the mapping torus.
  check_divisor_closure(phi_, family_.divisor(), n_max_,
                        tolerances_.periodicity);
  Cx measured = invariance_multiplier(family_.g(), phi_, 32);
  if (std::abs(measured - family_.mu()) >
      1e-9 * std::max(1.0, std::abs(measured)))
    throw Error(ErrorCode::NotProjectivelyInvariant,
                "declared mu disagrees with the measured multiplier "
                "g(phi(z))/g(z)");
  double glue = equivariance_residual(family_, phi_, 64);
  if (glue >= 1e-9)
    throw Error(ErrorCode::NotProjectivelyInvariant,
                "family does not glue under the scenario's phi (max chordal "
                "residual " +
                    std::to_string(glue) + ")");
}

}  // namespace folprod

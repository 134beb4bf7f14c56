#pragma once

#include <optional>
#include <vector>

#include "folprod/fibered_manifold.hpp"

namespace folprod {

// One closed orbit carrying zeros or poles: the φ-cycle of divisor points,
// its primitive period, its flow length n·T₁, and the common order of f.
struct ClosedOrbitRecord {
  std::vector<PointCP1> points;  // x, φx, ..., φ^{n-1}x; points[0] lex-least
  int period_n = 0;
  double length_l = 0.0;
  int order = 0;
};

// Smallest n <= n_max with chordal(φⁿ(p), p) < tol; nullopt when the point
// does not return (NotPeriodic is a value, not an error).
std::optional<int> primitive_period(const MoebiusMap& phi, const PointCP1& p,
                                    int n_max, double tol);

// Throws OrbitNotClosed naming the first divisor point that fails to return
// within n_max. This is the closed-orbit hypothesis, checked at scenario
// construction before any pointwise equivariance sampling so that a
// hyperbolic φ is reported as the orbit-closure violation it is.
void check_divisor_closure(const MoebiusMap& phi, const Divisor& divisor,
                           int n_max, double tol);

// Groups the divisor of g into φ-orbits, validates that every orbit carries
// one order, and attaches lengths l = n·T₁. Orbits are sorted by
// (period_n, lexicographic base point) and each orbit starts at its
// lex-least point, so the output is deterministic. Throws OrbitNotClosed
// when a divisor point is not periodic within n_max (the scenario violates
// the closed-orbit hypothesis) and InconsistentOrders when the φ-image of a
// divisor point fails to carry the same order.
std::vector<ClosedOrbitRecord> find_singular_orbits(
    const MappingTorusScenario& scenario);

// n·T₁ — the flow length of a period-n orbit.
double orbit_length(int n, const SpeedProfile& h);

}  // namespace folprod

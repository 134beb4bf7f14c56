#pragma once

#include <vector>

#include "folprod/orbit_finder.hpp"

namespace folprod {

// (1/2πi)·∮ f'/f over a circle of the given chordal radius around center,
// snapped to the nearest integer: the number of zeros minus poles enclosed.
// The contour lives in the center's canonical chart (a center near ∞
// integrates the chart-transformed function). The radius is halved up to 8
// times until every divisor point clears the contour by chordal 1e-7;
// ContourThroughSingularity if no attempt succeeds, NotNearInteger if the
// quadrature fails to certify an integer within snap_tol.
int winding_order(const RationalFunction& f, const PointCP1& center,
                  double radius, double conv_tol = 1e-10,
                  double snap_tol = 1e-6);

// winding_order of the leaf function μ^s·q(s)·g around the orbit's point on
// the leaves s = j/m (j = 0..m-1), following the orbit point j mod n. All
// entries must equal orbit.order — the order-constancy statement.
std::vector<int> order_constancy_profile(const MappingTorusScenario& scenario,
                                         const ClosedOrbitRecord& orbit, int m);

}  // namespace folprod

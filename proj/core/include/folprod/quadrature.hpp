#pragma once

#include <complex>
#include <functional>
#include <limits>

namespace folprod {

// Trapezoid rule for 1-periodic integrands, refined by node doubling.
// On a periodic analytic integrand the trapezoid rule converges
// geometrically, so the change between successive levels is a usable
// convergence certificate.
struct QuadratureResult {
  std::complex<double> value{0.0, 0.0};
  int nodes = 0;
  bool converged = false;
  // |I_{2n} - I_n| at the finest doubling that ran. When the integrand is
  // polluted by a rounding-noise floor above tol this plateaus instead of
  // converging; callers that only need a few digits can accept on it.
  double last_change = std::numeric_limits<double>::infinity();
};

// Integrates f over one period [0,1). Starts at n0 nodes and doubles until
// |I_{2n} - I_n| < tol or the node cap is exceeded. Returns the finest value.
QuadratureResult periodic_trapezoid(
    const std::function<std::complex<double>(double)>& f, int n0, int max_nodes,
    double tol);

// Same scheme on the unit square, doubling both directions together.
QuadratureResult periodic_trapezoid_2d(
    const std::function<std::complex<double>(double, double)>& f, int n0,
    int max_nodes_per_axis, double tol);

}  // namespace folprod

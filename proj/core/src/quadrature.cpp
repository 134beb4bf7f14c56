#include "folprod/quadrature.hpp"

#include <cmath>
#include <vector>

namespace folprod {

QuadratureResult periodic_trapezoid(
    const std::function<std::complex<double>(double)>& f, int n0, int max_nodes,
    double tol) {
  int n = n0;
  std::complex<double> sum{0.0, 0.0};
  for (int j = 0; j < n; ++j) sum += f(static_cast<double>(j) / n);
  std::complex<double> current = sum / static_cast<double>(n);

  QuadratureResult result;
  while (n * 2 <= max_nodes) {
    // The 2n-node rule reuses the n old nodes; only midpoints are new.
    std::complex<double> mid{0.0, 0.0};
    for (int j = 0; j < n; ++j) mid += f((j + 0.5) / n);
    std::complex<double> next = 0.5 * (current + mid / static_cast<double>(n));
    n *= 2;
    result.last_change = std::abs(next - current);
    bool done = result.last_change < tol;
    current = next;
    if (done) {
      result.converged = true;
      break;
    }
  }
  result.value = current;
  result.nodes = n;
  return result;
}

QuadratureResult periodic_trapezoid_2d(
    const std::function<std::complex<double>(double, double)>& f, int n0,
    int max_nodes_per_axis, double tol) {
  auto level = [&f](int n) {
    std::complex<double> sum{0.0, 0.0};
    for (int i = 0; i < n; ++i) {
      const double u = static_cast<double>(i) / n;
      for (int j = 0; j < n; ++j) sum += f(u, static_cast<double>(j) / n);
    }
    return sum / (static_cast<double>(n) * static_cast<double>(n));
  };

  int n = n0;
  std::complex<double> current = level(n);
  QuadratureResult result;
  while (n * 2 <= max_nodes_per_axis) {
    n *= 2;
    std::complex<double> next = level(n);
    result.last_change = std::abs(next - current);
    bool done = result.last_change < tol;
    current = next;
    if (done) {
      result.converged = true;
      break;
    }
  }
  result.value = current;
  result.nodes = n;
  return result;
}

}  // namespace folprod

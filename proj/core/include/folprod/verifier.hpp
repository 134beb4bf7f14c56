#pragma once

#include <optional>
#include <string>
#include <vector>

#include "folprod/eta_calculus.hpp"
#include "folprod/fibered_manifold.hpp"
#include "folprod/orbit_finder.hpp"

namespace folprod {

// One tube-vs-combinatorics comparison: |∫∫ η / (2πi·l·ord) − 1|.
struct TubeCheck {
  size_t orbit_index = 0;
  double relative_error = 0.0;
};

struct VerificationReport {
  std::string scenario_digest;  // filled by callers that know the source text
  std::vector<ClosedOrbitRecord> orbits;
  double sum_l_ord = 0.0;         // Σ l(γ)·ord_γ f
  double residual = 0.0;          // |sum| (relative when the terms are large)
  bool constancy_ok = false;      // ord constant along each orbit
  std::vector<TubeCheck> tube_checks;
  std::vector<double> stokes_checks;
  std::optional<double> prop2_residual;
  bool passed = false;
  std::string diagnostic;  // empty on a clean run, error text otherwise
};

// Proposition 1: find the singular orbits, sum l·ord, and cross-examine the
// answer analytically (order constancy, tube integrals, closedness probes).
VerificationReport verify_product_formula(const MappingTorusScenario& scenario);

// Proposition 1 plus the Proposition-2 balance for a method assignment.
// An empty partition means "method A for every orbit".
VerificationReport verify_all(const MappingTorusScenario& scenario,
                              const std::vector<Method>& partition);

}  // namespace folprod

#pragma once

#include <vector>

#include "folprod/leafwise_function.hpp"

namespace folprod {

struct SpeedTerm {
  int k;  // positive frequency
  double cos_coeff = 0.0;
  double sin_coeff = 0.0;
};

// Transverse speed h(s) = a0 + Σ (cos_coeff·cos 2πks + sin_coeff·sin 2πks),
// 1-periodic and real by construction. The flow moves in +s at speed h, so
// h must be nonnegative; its zeros are the compact leaves.
struct SpeedProfile {
  double a0 = 1.0;
  std::vector<SpeedTerm> terms;
};

double speed_eval(const SpeedProfile& h, double s);

// A zero of h: the fiber over s_star is a flow-invariant compact leaf.
struct CompactLeafRecord {
  double s_star;   // in [0,1)
  int zero_order;  // estimated local vanishing order (even: flow does not cross)
};

struct TransversalityResult {
  bool transverse = true;
  std::vector<CompactLeafRecord> compact_leaves;
};

// Classifies h on a 4096-point grid with zeros refined to ~1e-12 via the
// analytic derivative. h dipping below -1e-9 anywhere is NegativeSpeed
// (this also rejects odd-order zeros, which the flow would cross).
TransversalityResult transversality_check(const SpeedProfile& h);

// T₁ = ∫₀¹ ds/h(s): the return time of a period-1 orbit. Periodic trapezoid
// with node doubling, cap 2^16 nodes. Throws NotTransverse when h has zeros.
double base_return_time(const SpeedProfile& h, double quad_tol = 1e-10);

// Independent oracle: integrates ds/dt = h(s) with classical RK4 until s
// has increased by n, returning the elapsed time. Needs step <= 1e-3.
double flow_return_time_ode(const SpeedProfile& h, int n, double step);

struct Tolerances {
  double winding_snap = 1e-6;
  double residual = 1e-9;
  double quadrature = 1e-10;
  double periodicity = 1e-9;
};

// A complete verification instance: the mapping torus of φ with suspension
// flow reparametrized by h, carrying the equivariant family. Construction
// re-validates the family against this φ, classifies transversality, and
// caches the divisor of g.
class MappingTorusScenario {
 public:
  MappingTorusScenario(MoebiusMap phi, SpeedProfile speed,
                       EquivariantFamily family, int n_max = 64,
                       Tolerances tolerances = {});

  const MoebiusMap& phi() const { return phi_; }
  const SpeedProfile& speed() const { return speed_; }
  const EquivariantFamily& family() const { return family_; }
  int n_max() const { return n_max_; }
  const Tolerances& tolerances() const { return tolerances_; }

  bool transverse() const { return transversality_.transverse; }
  const std::vector<CompactLeafRecord>& compact_leaves() const {
    return transversality_.compact_leaves;
  }
  const Divisor& divisor() const { return family_.divisor(); }

 private:
  MoebiusMap phi_;
  SpeedProfile speed_;
  EquivariantFamily family_;
  int n_max_;
  Tolerances tolerances_;
  TransversalityResult transversality_;
};

}  // namespace folprod

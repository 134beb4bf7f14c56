#pragma once

#include <vector>

#include "folprod/projective_line.hpp"

namespace folprod {

// One term of the leafwise twist q(s) = exp(Σ coeff_k · e^{2πiks}).
struct TwistTerm {
  int k;  // positive frequency
  Cx coeff;
};

// f(z,s) = μ^s · q(s) · g(z). The leafwise factor μ^s·q(s) never vanishes,
// so the divisor of f(·,s) is the divisor of g for every s — which is what
// lets the zeros and poles sit on closed flow orbits. μ^s uses the principal
// branch of log μ, fixed once at construction.
class EquivariantFamily {
 public:
  // A family is the φ-free data (g, μ, q); whether it actually descends to
  // the mapping torus of a particular φ is the scenario's validation, which
  // owns φ and checks the divisor closure first. Here only the shape is
  // checked: g nonzero, μ nonzero, twist frequencies positive.
  EquivariantFamily(RationalFunction g, Cx mu, std::vector<TwistTerm> twist);

  // Measures μ with invariance_multiplier, which throws
  // NotProjectivelyInvariant when no constant multiplier fits g∘φ/g.
  static EquivariantFamily with_auto_mu(RationalFunction g,
                                        const MoebiusMap& phi,
                                        std::vector<TwistTerm> twist);

  const RationalFunction& g() const { return g_; }
  Cx mu() const { return mu_; }
  Cx log_mu() const { return log_mu_; }
  const std::vector<TwistTerm>& twist() const { return twist_; }
  // Divisor of g (zeros/poles of every leaf restriction), cached.
  const Divisor& divisor() const { return divisor_; }

  // The leafwise-constant factor μ^s·q(s).
  Cx leaf_factor(double s) const;

 private:
  RationalFunction g_;
  Cx mu_, log_mu_;
  std::vector<TwistTerm> twist_;
  Divisor divisor_;
};

// f(z, s) as a sphere point; poles of g map to ∞ for every s.
PointCP1 family_eval(const EquivariantFamily& F, const PointCP1& z, double s);

// max over fixed-seed samples of chordal(f(z, s+1), f(φz, s)) — the descent
// condition to the mapping torus. Needs samples >= 16.
double equivariance_residual(const EquivariantFamily& F, const MoebiusMap& phi,
                             int samples);

// g'(z)/g(z); the factors μ^s·q(s) are leafwise constant and cancel. The
// cancellation is verified by evaluating at three values of s (agreement
// within 1e-12). Throws TooCloseToDivisor within chordal 1e-7 of a zero
// or pole.
Cx leafwise_log_derivative(const EquivariantFamily& F, Cx z, double s);

}  // namespace folprod

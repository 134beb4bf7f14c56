#pragma once

#include <vector>

#include "folprod/winding.hpp"

namespace folprod {

// Tubular neighbourhood of a closed orbit: n chordal discs of the given
// radius, one around each orbit point. Valid when the discs are pairwise
// disjoint and free of foreign divisor points (validate_tube checks).
struct TubeSpec {
  ClosedOrbitRecord orbit;
  double radius;  // chordal
};

void validate_tube(const MappingTorusScenario& scenario, const TubeSpec& tube);

// 0.25 × (minimal chordal gap between divisor points) — always disjoint.
double default_tube_radius(const MappingTorusScenario& scenario);

// Finite trigonometric expression c0 + Σ coeff·e^{2πi(ku+lv)} on the unit
// square, 1-periodic in both variables, with analytic partials.
struct TrigTerm2 {
  int k, l;
  Cx coeff;
};

struct TrigExpr2 {
  Cx c0{0.0, 0.0};
  std::vector<TrigTerm2> terms;

  Cx eval(double u, double v) const;
  Cx d_u(double u, double v) const;
  Cx d_v(double u, double v) const;
};

// Parametrized torus (u,v) ↦ (z(u,v), s(u,v)) in mapping-torus coordinates:
// z is a trig expression valued in the standard chart, s is
// s0 + winding·u + Re(trig). Patches must keep chordal distance > 1e-6 from
// the divisor, and s must stay transverse unless s is constant (a leaf
// torus, where the pullback of η vanishes identically).
struct SurfacePatch {
  TrigExpr2 z;
  double s0 = 0.0;
  int s_winding = 0;
  TrigExpr2 s_periodic;

  double s(double u, double v) const;
  double s_u(double u, double v) const;
  double s_v(double u, double v) const;
  bool s_constant() const { return s_winding == 0 && s_periodic.terms.empty(); }
};

// Canonical patches. Around a finite point the circle runs through
// e^{-2πiv}; around ∞ it is the large circle (2/ρ)·e^{+2πiv} enclosing all
// finite divisor points. These orientations are the ones under which the
// pullback density below integrates to +2πi·T₁·ord per orbit point, matching
// the tube-integral sign convention (flow direction +s, leaves oriented by
// their complex structure).
SurfacePatch tube_point_patch(const PointCP1& point, double chordal_radius);
// One patch per orbit point; their integrals sum to 2πi·l·ord.
std::vector<SurfacePatch> tube_patches(const MappingTorusScenario& scenario,
                                       const TubeSpec& tube);
// Two leaf tori bounding a collar around a compact leaf; s is constant on
// each, so both integrals vanish identically.
std::vector<SurfacePatch> leaf_boundary_patches(const CompactLeafRecord& leaf,
                                                double collar = 0.05);

// The density of η = (1/f)·d_𝓕f ∧ ω pulled back through a patch:
// (g'(z)/g(z)) · (z_u·s_v - z_v·s_u) / h(s). A vanishing Jacobian returns
// exactly 0 before any other check — leaf-tangent patches integrate to zero
// even where the flow stalls.
Cx eta_pullback(const MappingTorusScenario& scenario, Cx z, double s, Cx z_u,
                Cx z_v, double s_u, double s_v);

// ∮ η over the tube boundary in the proof's factorized form,
// Σ_j [∫₀¹ ds/h] · [∮_{C_j} g'/g dz]; equals 2πi·l·ord within relative 1e-8.
Cx tube_boundary_integral(const MappingTorusScenario& scenario,
                          const TubeSpec& tube);

// ∮ η over a patch by 2D periodic trapezoid quadrature (doubling both axes,
// cap 2^10 per axis) — the argument-principle-free path.
Cx surface_integral_eta(const MappingTorusScenario& scenario,
                        const SurfacePatch& patch);

// |surface integral| over a patch that encloses no divisor point (validated
// by z-loop winding counts): η is closed, so this must vanish.
double stokes_residual(const MappingTorusScenario& scenario,
                       const SurfacePatch& patch);

enum class Method { A, B };  // argument principle | surface quadrature

// |Σ_A l·ord + Σ_B (1/2πi)·∮η + Σ_leaves (1/2πi)·∮η| — the Proposition-2
// balance; partition assigns each singular orbit (in sorted order) a method.
double prop2_balance(const MappingTorusScenario& scenario,
                     const std::vector<Method>& partition);

}  // namespace folprod

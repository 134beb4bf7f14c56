#pragma once

#include <complex>
#include <vector>

#include "folprod/polynomial.hpp"

namespace folprod {

// A point of the Riemann sphere in one of two charts. Factories produce the
// canonical representation (|value| <= 1: standard chart for |z| <= 1,
// infinity chart storing w = 1/z otherwise), which keeps evaluation accurate
// near ∞. The raw constructor accepts any representation; chordal_distance
// is chart-independent either way.
class PointCP1 {
 public:
  enum class Chart { standard, infinity };

  PointCP1() = default;
  PointCP1(Chart chart, Cx value) : chart_(chart), value_(value) {}

  static PointCP1 from_complex(Cx z);
  // The point [n : d] of the projective line; n = d = 0 is rejected.
  static PointCP1 from_projective(Cx n, Cx d);
  static PointCP1 infinity();

  Chart chart() const { return chart_; }
  Cx value() const { return value_; }
  bool is_infinity() const {
    return chart_ == Chart::infinity && value_ == Cx(0.0, 0.0);
  }
  // The point as a plain complex number; throws NumericalFailure for ∞.
  Cx as_complex() const;

 private:
  Chart chart_ = Chart::standard;
  Cx value_{0.0, 0.0};
};

// d(z,w) = 2|z-w| / sqrt((1+|z|^2)(1+|w|^2)), extended continuously to ∞;
// symmetric, bounded by 2, zero iff the points coincide.
double chordal_distance(const PointCP1& p, const PointCP1& q);

// z ↦ (az+b)/(cz+d), stored with determinant normalized to 1 (principal
// square root), so matrix entries are deterministic for a given input.
struct MoebiusMap {
  Cx a, b, c, d;

  // Validates |ad - bc| > 1e-12 and normalizes; the only sanctioned way
  // to build one.
  static MoebiusMap make(Cx a, Cx b, Cx c, Cx d);
  static MoebiusMap identity_map();
  MoebiusMap inverse() const;
};

PointCP1 moebius_apply(const MoebiusMap& m, const PointCP1& p);
MoebiusMap moebius_compose(const MoebiusMap& m1, const MoebiusMap& m2);

// Quotient of polynomials in canonical form: trimmed coefficients, monic
// denominator, numerator and denominator verified coprime (no common roots
// within chordal distance 1e-9). The zero function is representable (empty
// numerator) because derivatives of constants produce it; operations that
// need a divisor reject it.
class RationalFunction {
 public:
  RationalFunction(Poly numerator, Poly denominator);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.empty(); }
  int num_degree() const { return poly_degree(num_); }
  int den_degree() const { return poly_degree(den_); }

 private:
  Poly num_, den_;
};

struct DivisorPoint {
  PointCP1 point;
  int order;  // > 0 zero, < 0 pole
};
using Divisor = std::vector<DivisorPoint>;

PointCP1 rat_eval(const RationalFunction& f, const PointCP1& p);

// Symbolic quotient rule (num'·den - num·den')/den², with repeated
// denominator roots cancelled so the result passes the coprimality check.
RationalFunction rat_derivative(const RationalFunction& f);

// f(1/z) as a rational function — the chart transform for work near ∞.
// The order of the result at 0 is the order of f at ∞.
RationalFunction rat_reciprocal_substitution(const RationalFunction& f);

// All zeros and poles with integer orders, including ∞ when
// deg den ≠ deg num; finite points sorted by (re, im), ∞ last. Positions
// found by Aberth refinement, multiplicities by clustering at 1e-7 with
// winding-integral confirmation. Degrees are capped at 32.
Divisor rat_divisor(const RationalFunction& f);

// Σ of divisor orders including ∞; exactly 0 for every rational function.
int divisor_degree_check(const RationalFunction& f);

// The constant μ with g∘φ = μ·g, taken from the first usable sample point
// and validated at `samples` points (relative residual < 1e-9). Throws
// NotProjectivelyInvariant if g is not equivariant under φ.
Cx invariance_multiplier(const RationalFunction& g, const MoebiusMap& phi,
                         int samples);

}  // namespace folprod

#include "folprod/projective_line.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace folprod {

namespace {

std::string cx_str(Cx z) {
  std::ostringstream os;
  os << "(" << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i)";
  return os.str();
}

}  // namespace

PointCP1 PointCP1::from_complex(Cx z) {
  if (std::abs(z) <= 1.0) return {Chart::standard, z};
  return {Chart::infinity, 1.0 / z};
}

PointCP1 PointCP1::from_projective(Cx n, Cx d) {
  if (n == Cx(0.0, 0.0) && d == Cx(0.0, 0.0))
    throw Error(ErrorCode::NumericalFailure,
                "projective point 0/0 is undefined");
  if (std::abs(n) <= std::abs(d)) return {Chart::standard, n / d};
  return {Chart::infinity, d / n};
}

PointCP1 PointCP1::infinity() { return {Chart::infinity, Cx(0.0, 0.0)}; }

Cx PointCP1::as_complex() const {
  if (chart_ == Chart::standard) return value_;
  if (is_infinity())
    throw Error(ErrorCode::NumericalFailure,
                "point at infinity has no finite complex value");
  return 1.0 / value_;
}

double chordal_distance(const PointCP1& p, const PointCP1& q) {
  Cx a = p.value(), b = q.value();
  if (p.chart() == q.chart())
    // Same chart: the plain formula. (Valid verbatim in the infinity chart
    // because z ↦ 1/z is a chordal isometry.)
    return chordal_finite(a, b);
  // Mixed charts, q in the w = 1/z chart:
  // d(a, 1/b) = 2|a·b - 1| / sqrt((1+|a|^2)(1+|b|^2)), continuous at b = 0.
  if (p.chart() == PointCP1::Chart::infinity) std::swap(a, b);
  return 2.0 * std::abs(a * b - 1.0) /
         std::sqrt((1.0 + std::norm(a)) * (1.0 + std::norm(b)));
}

MoebiusMap MoebiusMap::make(Cx a, Cx b, Cx c, Cx d) {
  Cx det = a * d - b * c;
  if (std::abs(det) <= 1e-12)
    throw Error(ErrorCode::ValidationError, "phi",
                "degenerate: |ad - bc| = " + std::to_string(std::abs(det)));
  // Already det-1 (a serialized map read back): dividing by sqrt(det) would
  // perturb the entries in the last bit and break round-trip identity.
  if (std::abs(det - Cx(1.0, 0.0)) <= 1e-14) return {a, b, c, d};
  Cx s = std::sqrt(det);
  return {a / s, b / s, c / s, d / s};
}

MoebiusMap MoebiusMap::identity_map() {
  return {Cx(1, 0), Cx(0, 0), Cx(0, 0), Cx(1, 0)};
}

MoebiusMap MoebiusMap::inverse() const { return {d, -b, -c, a}; }

PointCP1 moebius_apply(const MoebiusMap& m, const PointCP1& p) {
  // Projective evaluation never divides by a vanishing denominator: the
  // image of the nonzero vector (z,1) or (1,w) under a nondegenerate matrix
  // is nonzero, and from_projective picks the well-conditioned chart.
  if (p.chart() == PointCP1::Chart::standard) {
    Cx z = p.value();
    return PointCP1::from_projective(m.a * z + m.b, m.c * z + m.d);
  }
  Cx w = p.value();
  return PointCP1::from_projective(m.a + m.b * w, m.c + m.d * w);
}

MoebiusMap moebius_compose(const MoebiusMap& m1, const MoebiusMap& m2) {
  return MoebiusMap::make(m1.a * m2.a + m1.b * m2.c, m1.a * m2.b + m1.b * m2.d,
                          m1.c * m2.a + m1.d * m2.c,
                          m1.c * m2.b + m1.d * m2.d);
}

RationalFunction::RationalFunction(Poly numerator, Poly denominator) {
  num_ = poly_trim(std::move(numerator));
  den_ = poly_trim(std::move(denominator));
  if (den_.empty())
    throw Error(ErrorCode::ValidationError,
                "denominator is zero after coefficient trimming");
  if (num_.empty()) {
    // Canonical zero function: 0/1.
    den_ = {Cx(1.0, 0.0)};
    return;
  }
  // Canonical form: monic denominator.
  Cx lead = den_.back();
  for (auto& c : num_) c /= lead;
  for (auto& c : den_) c /= lead;
  den_.back() = Cx(1.0, 0.0);

  if (poly_degree(num_) >= 1 && poly_degree(den_) >= 1) {
    // Coprimality: no numerator root within chordal 1e-9 of a denominator
    // root. Flat Aberth approximations are enough here — a genuine common
    // simple root shows up at the 1e-14 scale.
    auto zn = aberth_roots(num_);
    auto zd = aberth_roots(den_);
    for (Cx rn : zn)
      for (Cx rd : zd)
        if (chordal_finite(rn, rd) < 1e-9)
          throw Error(ErrorCode::ValidationError,
                      "numerator and denominator share a root near " +
                          cx_str(rn));
  }
}

PointCP1 rat_eval(const RationalFunction& f, const PointCP1& p) {
  if (f.is_zero()) return PointCP1::from_complex(Cx(0.0, 0.0));
  if (p.chart() == PointCP1::Chart::standard) {
    Cx z = p.value();
    return PointCP1::from_projective(poly_eval(f.num(), z),
                                     poly_eval(f.den(), z));
  }
  // z = 1/w: f(1/w) = w^(dd-dn) · num_rev(w) / den_rev(w), with the w-power
  // attached to whichever side keeps both entries polynomial.
  Cx w = p.value();
  int dn = f.num_degree(), dd = f.den_degree();
  Cx n = poly_eval(poly_reversed(f.num()), w);
  Cx d = poly_eval(poly_reversed(f.den()), w);
  Cx wk(1.0, 0.0);  // integer power by multiplication: pow(0+0i, 0) is NaN
  for (int i = std::abs(dd - dn); i > 0; --i) wk *= w;
  if (dd >= dn) n *= wk;
  else d *= wk;
  return PointCP1::from_projective(n, d);
}

RationalFunction rat_derivative(const RationalFunction& f) {
  if (f.is_zero()) return {{}, {Cx(1.0, 0.0)}};
  Poly n = poly_trim(poly_add(poly_mul(poly_derivative(f.num()), f.den()),
                              poly_scale(poly_mul(f.num(), poly_derivative(f.den())),
                                         Cx(-1.0, 0.0))));
  if (n.empty()) return {{}, {Cx(1.0, 0.0)}};
  Poly d = poly_mul(f.den(), f.den());
  // An m-fold denominator root appears (m-1)-fold in n and 2m-fold in d;
  // cancel it down so the quotient is coprime again.
  if (f.den_degree() >= 1) {
    for (const auto& root : poly_roots_clustered(f.den())) {
      for (int i = 1; i < root.multiplicity; ++i) {
        n = poly_deflate(n, root.position);
        d = poly_deflate(d, root.position);
      }
    }
  }
  return {n, d};
}

RationalFunction rat_reciprocal_substitution(const RationalFunction& f) {
  if (f.is_zero()) return {{}, {Cx(1.0, 0.0)}};
  int dn = f.num_degree(), dd = f.den_degree();
  Poly rn = poly_trim(poly_reversed(f.num()));
  Poly rd = poly_trim(poly_reversed(f.den()));
  if (dd > dn) rn = poly_shift_up(rn, dd - dn);
  else if (dn > dd) rd = poly_shift_up(rd, dn - dd);
  return {rn, rd};
}

namespace {

// Sort key placing finite points by (re, im) and ∞ last.
std::pair<double, double> divisor_sort_key(const PointCP1& p) {
  if (p.is_infinity())
    return {std::numeric_limits<double>::infinity(),
            std::numeric_limits<double>::infinity()};
  Cx z = p.as_complex();
  return {z.real(), z.imag()};
}

}  // namespace

Divisor rat_divisor(const RationalFunction& f) {
  if (f.is_zero())
    throw Error(ErrorCode::ValidationError,
                "the zero function has no divisor");
  if (f.num_degree() > 32 || f.den_degree() > 32)
    throw Error(ErrorCode::ValidationError,
                "divisor computation is capped at degree 32 (got " +
                    std::to_string(f.num_degree()) + "/" +
                    std::to_string(f.den_degree()) + ")");
  Divisor div;
  if (f.num_degree() >= 1)
    for (const auto& r : poly_roots_clustered(f.num()))
      div.push_back({PointCP1::from_complex(r.position), r.multiplicity});
  if (f.den_degree() >= 1)
    for (const auto& r : poly_roots_clustered(f.den()))
      div.push_back({PointCP1::from_complex(r.position), -r.multiplicity});
  int ord_inf = f.den_degree() - f.num_degree();
  if (ord_inf != 0) div.push_back({PointCP1::infinity(), ord_inf});
  std::sort(div.begin(), div.end(),
            [](const DivisorPoint& a, const DivisorPoint& b) {
              return divisor_sort_key(a.point) < divisor_sort_key(b.point);
            });
  return div;
}

int divisor_degree_check(const RationalFunction& f) {
  int sum = 0;
  for (const auto& d : rat_divisor(f)) sum += d.order;
  return sum;
}

Cx invariance_multiplier(const RationalFunction& g, const MoebiusMap& phi,
                         int samples) {
  if (samples < 8)
    throw Error(ErrorCode::ValidationError,
                "invariance_multiplier needs at least 8 samples");
  if (g.is_zero())
    throw Error(ErrorCode::ValidationError,
                "invariance multiplier of the zero function");

  // Fixed seed: μ must be bit-identical across runs for report determinism.
  std::mt19937 rng(0x5eedf01d);
  std::uniform_real_distribution<double> unif(-1.5, 1.5);

  auto usable = [&](const PointCP1& v) {
    // Stay clear of 0 and ∞ so the ratio below is well conditioned.
    return chordal_distance(v, PointCP1::from_complex(Cx(0, 0))) > 1e-6 &&
           chordal_distance(v, PointCP1::infinity()) > 1e-6;
  };

  Cx mu(0.0, 0.0);
  bool have_mu = false;
  int accepted = 0, attempts = 0;
  while (accepted < samples) {
    if (++attempts > 200 * samples)
      throw Error(ErrorCode::NumericalFailure,
                  "could not find enough sample points away from the "
                  "zeros and poles of g");
    PointCP1 z = PointCP1::from_complex(Cx(unif(rng), unif(rng)));
    PointCP1 gz = rat_eval(g, z);
    PointCP1 gphiz = rat_eval(g, moebius_apply(phi, z));
    if (!usable(gz) || !usable(gphiz)) continue;
    ++accepted;
    Cx vz = gz.as_complex(), vphi = gphiz.as_complex();
    if (!have_mu) {
      mu = vphi / vz;
      have_mu = true;
      continue;
    }
    double resid = std::abs(vphi - mu * vz) / std::max(1.0, std::abs(vz));
    if (resid >= 1e-9)
      throw Error(ErrorCode::NotProjectivelyInvariant,
                  "g(phi(z)) != mu*g(z) at z = " + cx_str(z.as_complex()) +
                      " (relative residual " + std::to_string(resid) + ")");
  }
  return mu;
}

}  // namespace folprod

#include "folprod/leafwise_function.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace folprod {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string cx_str(Cx z) {
  std::ostringstream os;
  os << "(" << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i)";
  return os.str();
}

}  // namespace

EquivariantFamily::EquivariantFamily(RationalFunction g, Cx mu,
                                     std::vector<TwistTerm> twist)
    : g_(std::move(g)), mu_(mu), twist_(std::move(twist)) {
  if (g_.is_zero())
    throw Error(ErrorCode::ValidationError, "family",
                "g must not be the zero function");
  if (mu_ == Cx(0.0, 0.0))
    throw Error(ErrorCode::ValidationError, "family",
                "multiplier mu must be nonzero");
  for (size_t i = 0; i < twist_.size(); ++i)
    if (twist_[i].k < 1)
      throw Error(ErrorCode::ValidationError,
                  "family.twist[" + std::to_string(i) + "].k",
                  "frequency must be a positive integer");
  log_mu_ = std::log(mu_);  // principal branch, fixed here once
  divisor_ = rat_divisor(g_);
}

EquivariantFamily EquivariantFamily::with_auto_mu(RationalFunction g,
                                                  const MoebiusMap& phi,
                                                  std::vector<TwistTerm> twist) {
  Cx mu = invariance_multiplier(g, phi, 32);
  return {std::move(g), mu, std::move(twist)};
}

Cx EquivariantFamily::leaf_factor(double s) const {
  Cx expo = s * log_mu_;
  for (const auto& t : twist_) {
    double th = kTwoPi * t.k * s;
    expo += t.coeff * Cx(std::cos(th), std::sin(th));
  }
  return std::exp(expo);
}

PointCP1 family_eval(const EquivariantFamily& F, const PointCP1& z, double s) {
  PointCP1 gv = rat_eval(F.g(), z);
  Cx c = F.leaf_factor(s);
  if (gv.chart() == PointCP1::Chart::standard)
    return PointCP1::from_projective(c * gv.value(), Cx(1.0, 0.0));
  // gv = 1/w: the scaled value is c/w (∞ stays ∞ for any c).
  return PointCP1::from_projective(c, gv.value());
}

double equivariance_residual(const EquivariantFamily& F, const MoebiusMap& phi,
                             int samples) {
  if (samples < 16)
    throw Error(ErrorCode::ValidationError,
                "equivariance_residual needs at least 16 samples");
  // Chordal distance is meaningful at any magnitude (poles included), so
  // no sample needs to be skipped.
  std::mt19937 rng(0x91aefa11);
  std::uniform_real_distribution<double> unif(-1.5, 1.5);
  std::uniform_real_distribution<double> sdist(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    PointCP1 z = PointCP1::from_complex(Cx(unif(rng), unif(rng)));
    double s = sdist(rng);
    PointCP1 lhs = family_eval(F, z, s + 1.0);
    PointCP1 rhs = family_eval(F, moebius_apply(phi, z), s);
    worst = std::max(worst, chordal_distance(lhs, rhs));
  }
  return worst;
}

Cx leafwise_log_derivative(const EquivariantFamily& F, Cx z, double s) {
  PointCP1 zp = PointCP1::from_complex(z);
  for (const auto& d : F.divisor())
    if (chordal_distance(zp, d.point) <= 1e-7)
      throw Error(ErrorCode::TooCloseToDivisor,
                  "z = " + cx_str(z) + " is within chordal 1e-7 of the "
                  "divisor point of order " + std::to_string(d.order));

  // (1/f)·∂f/∂z with the leaf factor c(s) carried through the arithmetic;
  // c cancels, and evaluating at three leaves certifies the cancellation.
  auto ratio_at = [&](double sv) -> Cx {
    Cx c = F.leaf_factor(sv);
    Cx nv, nd, dv, dd;
    poly_eval_with_derivative(F.g().num(), z, nv, nd);
    poly_eval_with_derivative(F.g().den(), z, dv, dd);
    Cx fn = c * nv, fnd = c * nd;
    return (fnd * dv - fn * dd) / (fn * dv);
  };

  Cx r0 = ratio_at(s);
  Cx r1 = ratio_at(s + 0.37);
  Cx r2 = ratio_at(s + 0.71);
  double scale = std::max(1.0, std::abs(r0));
  if (std::abs(r0 - r1) > 1e-12 * scale || std::abs(r0 - r2) > 1e-12 * scale)
    throw Error(ErrorCode::NumericalFailure,
                "leafwise log-derivative is not s-independent at z = " +
                    cx_str(z));
  return r0;
}

}  // namespace folprod

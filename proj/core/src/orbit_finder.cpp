#include "folprod/orbit_finder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace folprod {

namespace {

std::string point_str(const PointCP1& p) {
  if (p.is_infinity()) return "inf";
  Cx z = p.as_complex();
  std::ostringstream os;
  os << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
  return os.str();
}

// Sort key placing finite points by (re, im) and ∞ last.
std::pair<double, double> point_key(const PointCP1& p) {
  if (p.is_infinity())
    return {std::numeric_limits<double>::infinity(),
            std::numeric_limits<double>::infinity()};
  Cx z = p.as_complex();
  return {z.real(), z.imag()};
}

}  // namespace

std::optional<int> primitive_period(const MoebiusMap& phi, const PointCP1& p,
                                    int n_max, double tol) {
  if (n_max < 1)
    throw Error(ErrorCode::ValidationError, "n_max", "must be positive");
  PointCP1 q = p;
  for (int n = 1; n <= n_max; ++n) {
    q = moebius_apply(phi, q);  // from_projective renormalizes each step
    if (chordal_distance(q, p) < tol) return n;
  }
  return std::nullopt;
}

void check_divisor_closure(const MoebiusMap& phi, const Divisor& divisor,
                           int n_max, double tol) {
  for (const auto& d : divisor)
    if (!primitive_period(phi, d.point, n_max, tol))
      throw Error(ErrorCode::OrbitNotClosed,
                  std::string(d.order > 0 ? "zero" : "pole") + " at " +
                      point_str(d.point) + " not periodic under phi (n_max=" +
                      std::to_string(n_max) + ")");
}

std::vector<ClosedOrbitRecord> find_singular_orbits(
    const MappingTorusScenario& scenario) {
  if (!scenario.transverse())
    throw Error(ErrorCode::NotTransverse,
                "orbit search requires a transverse scenario (the speed "
                "profile has zeros)");
  const Divisor& div = scenario.divisor();
  const double tol = scenario.tolerances().periodicity;
  const double T1 =
      base_return_time(scenario.speed(), scenario.tolerances().quadrature);

  std::vector<bool> used(div.size(), false);
  std::vector<ClosedOrbitRecord> orbits;

  for (size_t i = 0; i < div.size(); ++i) {
    if (used[i]) continue;
    const PointCP1& start = div[i].point;

    auto n_opt = primitive_period(scenario.phi(), start, scenario.n_max(), tol);
    if (!n_opt)
      throw Error(ErrorCode::OrbitNotClosed,
                  std::string(div[i].order > 0 ? "zero" : "pole") + " at " +
                      point_str(start) + " not periodic under phi (n_max=" +
                      std::to_string(scenario.n_max()) + ")");
    int n = *n_opt;

    // Walk the orbit and match every iterate back to a divisor entry. The
    // recorded points are the divisor's own root positions (not the
    // φ-iterates), so they are as accurate as the root finder made them.
    std::vector<size_t> members;
    PointCP1 q = start;
    for (int step = 0; step < n; ++step) {
      size_t best = div.size();
      double best_d = tol;
      for (size_t j = 0; j < div.size(); ++j) {
        double d = chordal_distance(q, div[j].point);
        if (d < best_d) {
          best_d = d;
          best = j;
        }
      }
      if (best == div.size())
        throw Error(ErrorCode::InconsistentOrders,
                    "phi-image " + point_str(q) + " of divisor point " +
                        point_str(start) +
                        " is not itself a divisor point — g is not "
                        "equivariant enough for orbit grouping");
      if (used[best])
        throw Error(ErrorCode::InconsistentOrders,
                    "orbit through " + point_str(start) +
                        " revisits a divisor point before closing");
      if (div[best].order != div[i].order)
        throw Error(ErrorCode::InconsistentOrders,
                    "orbit of " + point_str(start) + " carries orders " +
                        std::to_string(div[i].order) + " and " +
                        std::to_string(div[best].order));
      used[best] = true;
      members.push_back(best);
      q = moebius_apply(scenario.phi(), q);
    }

    // Canonical rotation: start the cycle at its lex-least point.
    size_t least = 0;
    for (size_t j = 1; j < members.size(); ++j)
      if (point_key(div[members[j]].point) < point_key(div[members[least]].point))
        least = j;

    ClosedOrbitRecord rec;
    rec.period_n = n;
    rec.length_l = n * T1;
    rec.order = div[i].order;
    for (size_t j = 0; j < members.size(); ++j)
      rec.points.push_back(div[members[(least + j) % members.size()]].point);
    orbits.push_back(std::move(rec));
  }

  std::sort(orbits.begin(), orbits.end(),
            [](const ClosedOrbitRecord& a, const ClosedOrbitRecord& b) {
              if (a.period_n != b.period_n) return a.period_n < b.period_n;
              return point_key(a.points[0]) < point_key(b.points[0]);
            });
  return orbits;
}

double orbit_length(int n, const SpeedProfile& h) {
  if (n < 1)
    throw Error(ErrorCode::ValidationError, "n", "must be positive");
  return n * base_return_time(h);
}

}  // namespace folprod

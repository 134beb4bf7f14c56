#include "folprod/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "folprod/quadrature.hpp"

namespace folprod {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string cx_str(Cx z) {
  std::ostringstream os;
  os << "(" << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i)";
  return os.str();
}

}  // namespace

Poly poly_trim(Poly p, double tol) {
  while (!p.empty() && std::abs(p.back()) <= tol) p.pop_back();
  return p;
}

int poly_degree(const Poly& p) { return static_cast<int>(p.size()) - 1; }

bool poly_is_zero(const Poly& p) {
  return std::all_of(p.begin(), p.end(),
                     [](Cx c) { return c == Cx(0.0, 0.0); });
}

Cx poly_eval(const Poly& p, Cx z) {
  Cx acc(0.0, 0.0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * z + *it;
  return acc;
}

void poly_eval_with_derivative(const Poly& p, Cx z, Cx& value,
                               Cx& derivative) {
  Cx v(0.0, 0.0), d(0.0, 0.0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    d = d * z + v;
    v = v * z + *it;
  }
  value = v;
  derivative = d;
}

Poly poly_derivative(const Poly& p) {
  if (p.size() <= 1) return {};
  Poly d(p.size() - 1);
  for (size_t i = 1; i < p.size(); ++i)
    d[i - 1] = p[i] * static_cast<double>(i);
  return d;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, Cx(0.0, 0.0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

Poly poly_add(const Poly& a, const Poly& b) {
  Poly c(std::max(a.size(), b.size()), Cx(0.0, 0.0));
  for (size_t i = 0; i < a.size(); ++i) c[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) c[i] += b[i];
  return c;
}

Poly poly_scale(Poly p, Cx c) {
  for (auto& x : p) x *= c;
  return p;
}

Poly poly_reversed(Poly p) {
  std::reverse(p.begin(), p.end());
  return p;
}

Poly poly_shift_up(Poly p, int k) {
  if (p.empty() || k <= 0) return p;
  p.insert(p.begin(), static_cast<size_t>(k), Cx(0.0, 0.0));
  return p;
}

Poly poly_deflate(const Poly& p, Cx root) {
  if (p.size() <= 1) return {};
  Poly q(p.size() - 1);
  Cx carry = p.back();
  for (size_t i = p.size() - 1; i-- > 0;) {
    q[i] = carry;
    carry = p[i] + carry * root;
  }
  return q;
}

Poly poly_from_roots(Cx leading, const std::vector<Cx>& roots) {
  Poly p{leading};
  for (Cx r : roots) p = poly_mul(p, Poly{-r, Cx(1.0, 0.0)});
  return p;
}

double chordal_finite(Cx a, Cx b) {
  return 2.0 * std::abs(a - b) /
         std::sqrt((1.0 + std::norm(a)) * (1.0 + std::norm(b)));
}

std::vector<Cx> aberth_roots(const Poly& p_in) {
  Poly p = poly_trim(p_in);
  int n = poly_degree(p);
  if (n < 1) return {};

  // Work monic; coefficients are O(1)-ish after this for sane inputs.
  Cx lead = p.back();
  for (auto& c : p) c /= lead;
  Poly dp = poly_derivative(p);

  if (n == 1) return {-p[0]};

  // Cauchy bound: all roots lie inside |z| < R.
  double maxc = 0.0;
  for (int i = 0; i < n; ++i) maxc = std::max(maxc, std::abs(p[i]));
  double R = 1.0 + maxc;

  // Perturbed circle: breaks the symmetry that would otherwise lock
  // iterates of symmetric polynomials (z^n - c, palindromes) in step.
  std::vector<Cx> z(n);
  for (int k = 0; k < n; ++k) {
    double r = R * (0.65 + 0.05 * std::cos(2.7 * k + 1.0));
    double th = kTwoPi * k / n + 0.376 + 0.09 * std::sin(1.3 * k);
    z[k] = Cx(r * std::cos(th), r * std::sin(th));
  }

  const int kMaxSweeps = 200;
  double best_step = std::numeric_limits<double>::infinity();
  int stall = 0;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double max_step = 0.0;
    for (int k = 0; k < n; ++k) {
      Cx pv, pd;
      poly_eval_with_derivative(p, z[k], pv, pd);
      if (pv == Cx(0.0, 0.0)) continue;
      if (pd == Cx(0.0, 0.0)) {
        // Sitting on a critical point: nudge off it.
        z[k] += Cx(1e-3, 1e-3) * std::max(1.0, std::abs(z[k]));
        max_step = std::max(max_step, 1e-3);
        continue;
      }
      Cx newton = pv / pd;
      Cx repel(0.0, 0.0);
      for (int j = 0; j < n; ++j) {
        if (j == k) continue;
        Cx diff = z[k] - z[j];
        if (diff == Cx(0.0, 0.0)) diff = Cx(1e-14, 1e-14);
        repel += 1.0 / diff;
      }
      Cx denom = Cx(1.0, 0.0) - newton * repel;
      Cx w = (std::abs(denom) < 1e-290) ? newton : newton / denom;
      z[k] -= w;
      max_step = std::max(max_step, std::abs(w) / std::max(1.0, std::abs(z[k])));
    }
    if (max_step < 1e-13) return z;
    // Multiple roots never reach 1e-13: the cloud around an m-fold root
    // stagnates at ~eps^(1/m), which reaches ~1e-4 by multiplicity four.
    // Detect the plateau and hand the cloud to the clustering stage, whose
    // own certification decides, instead of spinning to the sweep cap.
    if (max_step < 0.97 * best_step) {
      best_step = max_step;
      stall = 0;
    } else if (++stall >= 12 && best_step < 1e-3) {
      return z;
    }
  }
  if (best_step < 1e-3) return z;
  throw Error(ErrorCode::RootFindingFailed,
              "Aberth iteration did not settle after 200 sweeps (degree " +
                  std::to_string(n) + ", last relative step " +
                  std::to_string(best_step) + ")");
}

namespace {

// Polishes an m-fold root candidate. Newton on p itself is useless here:
// |p| ~ d^m sinks below the coefficient-rounding noise floor while the
// distance d is still ~eps^(1/m), so the iteration jitters at that scale
// and the final step never certifies anything. The (m-1)-th derivative has
// a simple root at the same point, and Newton on it converges to machine
// precision.
Cx modified_newton(const Poly& p, Cx c, int m, double* final_step) {
  Poly q = p;
  for (int k = 1; k < m; ++k) q = poly_derivative(q);
  *final_step = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 60; ++it) {
    Cx qv, qd;
    poly_eval_with_derivative(q, c, qv, qd);
    if (qv == Cx(0.0, 0.0)) {
      *final_step = 0.0;
      return c;
    }
    if (qd == Cx(0.0, 0.0)) return c;
    Cx step = qv / qd;
    if (std::abs(step) > 1.0) return c;  // diverging; keep the centroid
    c -= step;
    *final_step = std::abs(step);
    if (*final_step < 1e-15 * std::max(1.0, std::abs(c))) return c;
  }
  return c;
}

// True when p and its first m-1 derivatives all vanish at z within a
// generous multiple of their evaluation noise floor eps·Σ|c_i|·|z|^i. This
// separates an honest m-fold root from a tight cluster of distinct roots
// around the candidate, which the winding count alone cannot tell apart.
bool vanishes_to_order(const Poly& p, Cx z, int m) {
  Poly q = poly_trim(p);
  double zp = std::max(1.0, std::abs(z));
  for (int k = 0; k < m; ++k) {
    double scale = 0.0, power = 1.0;
    for (const Cx& c : q) {
      scale += std::abs(c) * power;
      power *= zp;
    }
    double noise = 64.0 * static_cast<double>(q.size()) *
                   std::numeric_limits<double>::epsilon() * scale;
    if (std::abs(poly_eval(q, z)) > noise) return false;
    q = poly_derivative(q);
  }
  return true;
}

// Connected components under d(a,b) <= tol (chordal).
std::vector<std::vector<int>> components(const std::vector<Cx>& pts,
                                         double tol) {
  int n = static_cast<int>(pts.size());
  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> out;
  for (int i = 0; i < n; ++i) {
    if (comp[i] >= 0) continue;
    std::vector<int> stack{i};
    comp[i] = static_cast<int>(out.size());
    std::vector<int> members;
    while (!stack.empty()) {
      int a = stack.back();
      stack.pop_back();
      members.push_back(a);
      for (int b = 0; b < n; ++b) {
        if (comp[b] < 0 && chordal_finite(pts[a], pts[b]) <= tol) {
          comp[b] = comp[a];
          stack.push_back(b);
        }
      }
    }
    out.push_back(std::move(members));
  }
  return out;
}

}  // namespace

std::vector<PolyRoot> poly_roots_clustered(const Poly& p_in,
                                           double cluster_tol) {
  Poly p = poly_trim(p_in);
  int n = poly_degree(p);
  if (n < 1) return {};

  std::vector<PolyRoot> result;

  // Exact zero roots come off first: they are common (monomial factors),
  // exact in the coefficient data, and only blur the iteration if left in.
  int zeros = 0;
  while (poly_degree(p) >= 1 && p[0] == Cx(0.0, 0.0)) {
    p.erase(p.begin());
    ++zeros;
  }
  if (zeros > 0) result.push_back({Cx(0.0, 0.0), zeros});

  std::vector<Cx> approx;
  if (poly_degree(p) >= 1) approx = aberth_roots(p);

  // Coarse grouping at 1e-3 gathers the stagnation cloud around a multiple
  // root (radius ~eps^(1/m)) into one candidate before fine clustering.
  double coarse_tol = std::max(cluster_tol, 1e-3);
  for (const auto& group : components(approx, coarse_tol)) {
    Cx centroid(0.0, 0.0);
    for (int idx : group) centroid += approx[idx];
    centroid /= static_cast<double>(group.size());
    int m = static_cast<int>(group.size());

    Cx polished = centroid;
    if (m > 1) {
      double step;
      Cx cand = modified_newton(p, centroid, m, &step);
      double spread = 0.0;
      for (int idx : group)
        spread = std::max(spread, std::abs(approx[idx] - cand));
      if (step < 1e-10 * std::max(1.0, std::abs(cand)) &&
          vanishes_to_order(p, cand, m)) {
        // Confirm the merge by winding around the whole cloud. The contour
        // must stay macroscopic: near an m-fold root |p| ~ r^m, and a circle
        // at the cloud's own scale sinks below the coefficient-rounding
        // noise floor, where no quadrature certifies anything. Claim a
        // healthy fraction of the gap to the nearest root outside the group
        // instead.
        double out_gap = std::numeric_limits<double>::infinity();
        for (int j = 0; j < static_cast<int>(approx.size()); ++j) {
          if (std::find(group.begin(), group.end(), j) != group.end())
            continue;
          out_gap = std::min(out_gap, std::abs(approx[j] - cand));
        }
        double rad =
            std::isfinite(out_gap) ? std::min(0.4 * out_gap, 0.25) : 0.25;
        rad = std::max(rad, 2.0 * spread + 1e-9);
        if (std::isfinite(out_gap)) rad = std::min(rad, 0.5 * out_gap);
        int w = poly_winding_number(p, {}, cand, rad, 1e-8);
        if (w == m) {
          result.push_back({cand, m});
          continue;
        }
      }
      // Not a clean multiple root: fall through and grade the members
      // individually at the fine tolerance.
      std::vector<Cx> pts;
      for (int idx : group) pts.push_back(approx[idx]);
      for (const auto& fine : components(pts, cluster_tol)) {
        Cx c(0.0, 0.0);
        for (int idx : fine) c += pts[idx];
        c /= static_cast<double>(fine.size());
        int fm = static_cast<int>(fine.size());
        double st;
        c = modified_newton(p, c, fm, &st);
        result.push_back({c, fm});
      }
      continue;
    }
    double step;
    polished = modified_newton(p, centroid, 1, &step);
    result.push_back({polished, 1});
  }

  // Bookkeeping: multiplicities must exhaust the degree.
  int total = 0;
  for (const auto& r : result) total += r.multiplicity;
  if (total != n)
    throw Error(ErrorCode::MultiplicityAmbiguous,
                "root multiplicities sum to " + std::to_string(total) +
                    " but the degree is " + std::to_string(n));

  // Independent confirmation: a winding integral around each accepted
  // point must report exactly the multiplicity the clustering assigned.
  Poly full = poly_trim(p_in);
  for (size_t i = 0; i < result.size(); ++i) {
    double min_dist = std::numeric_limits<double>::infinity();
    for (size_t j = 0; j < result.size(); ++j) {
      if (j == i) continue;
      min_dist = std::min(min_dist,
                          std::abs(result[i].position - result[j].position));
    }
    // Same macroscopic-contour rule as in the merge confirmation: a healthy
    // fraction of the gap to the nearest other accepted root, never a fixed
    // small radius.
    double rad = std::isfinite(min_dist)
                     ? std::clamp(0.35 * min_dist, 1e-6, 0.25)
                     : 0.25;
    int w = poly_winding_number(full, {}, result[i].position, rad, 1e-8);
    if (w != result[i].multiplicity)
      throw Error(ErrorCode::MultiplicityAmbiguous,
                  "cluster at " + cx_str(result[i].position) + " graded " +
                      std::to_string(result[i].multiplicity) +
                      " by clustering but " + std::to_string(w) +
                      " by winding");
  }

  std::sort(result.begin(), result.end(), [](const PolyRoot& a,
                                             const PolyRoot& b) {
    if (a.position.real() != b.position.real())
      return a.position.real() < b.position.real();
    return a.position.imag() < b.position.imag();
  });
  return result;
}

namespace {

QuadratureResult log_contour_quadrature(const Poly& num, const Poly& den,
                                        Cx center, double radius,
                                        double conv_tol, int max_nodes) {
  Poly n = poly_trim(num), d = poly_trim(den);
  Poly dn = poly_derivative(n), dd = poly_derivative(d);
  auto integrand = [&](double t) -> Cx {
    Cx e(std::cos(kTwoPi * t), std::sin(kTwoPi * t));
    Cx z = center + radius * e;
    Cx val(0.0, 0.0);
    if (poly_degree(n) >= 1) val += poly_eval(dn, z) / poly_eval(n, z);
    if (poly_degree(d) >= 1) val -= poly_eval(dd, z) / poly_eval(d, z);
    // dz/dt / (2πi) = radius * e(t); the 2πi of dz cancels the prefactor.
    return val * radius * e;
  };
  return periodic_trapezoid(integrand, 64, max_nodes, conv_tol);
}

}  // namespace

Cx poly_log_contour_integral(const Poly& num, const Poly& den, Cx center,
                             double radius, double conv_tol, int max_nodes) {
  QuadratureResult q =
      log_contour_quadrature(num, den, center, radius, conv_tol, max_nodes);
  if (!q.converged)
    throw Error(ErrorCode::NotNearInteger,
                "winding quadrature did not converge within " +
                    std::to_string(max_nodes) + " nodes at center " +
                    cx_str(center) + " radius " + std::to_string(radius));
  return q.value;
}

int poly_winding_number(const Poly& num, const Poly& den, Cx center,
                        double radius, double conv_tol, double snap_tol) {
  QuadratureResult q =
      log_contour_quadrature(num, den, center, radius, conv_tol, 1 << 14);
  // Certifying an integer does not need conv_tol digits. Close to a multiple
  // root the polynomial evaluation bottoms out at the coefficient-rounding
  // noise floor and the node doubling plateaus above conv_tol; a plateau
  // well below snap_tol still pins the integer unambiguously.
  if (!q.converged && !(q.last_change < 0.1 * snap_tol))
    throw Error(ErrorCode::NotNearInteger,
                "winding quadrature did not converge within " +
                    std::to_string(1 << 14) + " nodes at center " +
                    cx_str(center) + " radius " + std::to_string(radius));
  Cx raw = q.value;
  int nearest = static_cast<int>(std::lround(raw.real()));
  if (std::abs(raw - Cx(nearest, 0.0)) >= snap_tol)
    throw Error(ErrorCode::NotNearInteger,
                "winding integral " + cx_str(raw) + " at center " +
                    cx_str(center) + " radius " + std::to_string(radius) +
                    " is not within " + std::to_string(snap_tol) +
                    " of an integer");
  return nearest;
}

}  // namespace folprod

#include "folprod/arithmetic_side.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <sstream>

namespace folprod {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using i128 = __int128;

constexpr std::int64_t kNormCap = std::int64_t(1) << 62;

u64 mulmod(u64 a, u64 b, u64 m) { return u64(u128(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

// Deterministic Miller-Rabin: the first twelve primes witness all of u64.
bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while (!(d & 1)) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s && witness; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) witness = false;
    }
    if (witness) return false;
  }
  return true;
}

// Brent's cycle variant of Pollard rho; the polynomial offset c is swept
// deterministically, so repeated runs factor identically.
u64 pollard_brent(u64 n) {
  if (!(n & 1)) return 2;
  for (u64 c = 1;; ++c) {
    u64 x = 2, y = 2, ys = 2, d = 1, q = 1, r = 1;
    const u64 batch = 128;
    while (d == 1) {
      x = y;
      for (u64 i = 0; i < r; ++i) y = (mulmod(y, y, n) + c) % n;
      for (u64 k = 0; k < r && d == 1; k += batch) {
        ys = y;
        u64 lim = std::min(batch, r - k);
        for (u64 i = 0; i < lim; ++i) {
          y = (mulmod(y, y, n) + c) % n;
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        d = std::gcd(q, n);
      }
      r <<= 1;
    }
    if (d == n) {
      do {
        ys = (mulmod(ys, ys, n) + c) % n;
        d = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (d == 1);
    }
    if (d != n) return d;
  }
}

void factor_into(u64 n, std::map<u64, int>& out) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    ++out[n];
    return;
  }
  u64 d = pollard_brent(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

// Trial division up to 10^6 peels everything the tests exercise; rho only
// runs for large semiprime cofactors near the 2^62 input cap.
std::map<u64, int> factor_u64(u64 n) {
  std::map<u64, int> out;
  while (n % 2 == 0) {
    ++out[2];
    n /= 2;
  }
  u64 p = 3;
  for (; p <= 1000000 && p * p <= n; p += 2) {
    while (n % p == 0) {
      ++out[p];
      n /= p;
    }
  }
  if (n > 1) {
    if (p * p > n) {
      ++out[n];
    } else {
      factor_into(n, out);
    }
  }
  return out;
}

// Smallest x with x^2 ≡ -1 (mod p) built from the least quadratic
// non-residue; p ≡ 1 mod 4 guaranteed by the caller.
u64 sqrt_minus_one_mod(u64 p) {
  for (u64 a = 2;; ++a) {
    if (powmod(a, (p - 1) / 2, p) == p - 1) {
      u64 x = powmod(a, (p - 1) / 4, p);
      if (mulmod(x, x, p) != p - 1)
        throw Error(ErrorCode::FactorizationFailed,
                    "root of -1 mod " + std::to_string(p) + " failed");
      return x;
    }
  }
}

i128 norm128(GaussianInt a) {
  return i128(a.re) * a.re + i128(a.im) * a.im;
}

std::int64_t narrow(i128 v, const char* what) {
  if (v > i128(INT64_MAX) || v < i128(INT64_MIN))
    throw Error(ErrorCode::ValidationError,
                std::string(what) + " exceeds 64-bit range");
  return std::int64_t(v);
}

GaussianInt first_quadrant(GaussianInt z) {
  for (int i = 0; i < 4; ++i) {
    if (z.re > 0 && z.im >= 0) return z;
    z = {-z.im, z.re};  // multiply by i
  }
  throw Error(ErrorCode::FactorizationFailed,
              "cannot normalize the zero gaussian integer");
}

int divide_out(GaussianInt& z, GaussianInt pi) {
  int count = 0;
  while (gauss_divides(pi, z)) {
    z = gauss_div_exact(z, pi);
    ++count;
  }
  return count;
}

struct GaussFactor {
  GaussianInt pi;
  std::int64_t norm;
  int e;
};

std::vector<GaussFactor> gauss_factorize(GaussianInt z) {
  i128 n = norm128(z);
  if (n == 0) throw Error(ErrorCode::ZeroInput, "gaussian integer is zero");
  if (n > kNormCap)
    throw Error(ErrorCode::ValidationError,
                "gaussian norm exceeds 2^62: " + gauss_str(z));

  std::vector<GaussFactor> out;
  GaussianInt rem = z;
  for (auto [p, e] : factor_u64(u64(n))) {
    if (p == 2) {
      GaussianInt pi{1, 1};
      out.push_back({pi, 2, divide_out(rem, pi)});
    } else if (p % 4 == 3) {
      GaussianInt pi{std::int64_t(p), 0};
      out.push_back({pi, narrow(i128(p) * p, "inert prime norm"),
                     divide_out(rem, pi)});
    } else {
      u64 x = sqrt_minus_one_mod(p);
      GaussianInt pi = first_quadrant(
          gaussian_gcd({std::int64_t(p), 0}, {std::int64_t(x), 1}));
      int e1 = divide_out(rem, pi);
      if (e1 > 0) out.push_back({pi, std::int64_t(p), e1});
      GaussianInt bar = first_quadrant(gauss_conj(pi));
      int e2 = divide_out(rem, bar);
      if (e2 > 0) out.push_back({bar, std::int64_t(p), e2});
    }
    (void)e;
  }

  if (gauss_norm(rem) != 1)
    throw Error(ErrorCode::FactorizationFailed,
                "non-unit remainder " + gauss_str(rem) + " factoring " +
                    gauss_str(z));
  GaussianInt acc = rem;  // the unit
  for (const auto& f : out)
    for (int i = 0; i < f.e; ++i) acc = gauss_mul(acc, f.pi);
  if (!(acc == z))
    throw Error(ErrorCode::FactorizationFailed,
                "factor product " + gauss_str(acc) +
                    " does not reconstruct " + gauss_str(z));
  return out;
}

std::string point_label(const PointCP1& p) {
  if (p.is_infinity()) return "inf";
  Cx z = p.as_complex();
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g%+.6gi", z.real(), z.imag());
  return buf;
}

std::string pad(std::string s, size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

}  // namespace

bool operator==(GaussianInt a, GaussianInt b) {
  return a.re == b.re && a.im == b.im;
}

GaussianInt gauss_mul(GaussianInt a, GaussianInt b) {
  i128 re = i128(a.re) * b.re - i128(a.im) * b.im;
  i128 im = i128(a.re) * b.im + i128(a.im) * b.re;
  return {narrow(re, "gaussian product"), narrow(im, "gaussian product")};
}

GaussianInt gauss_conj(GaussianInt a) { return {a.re, -a.im}; }

std::int64_t gauss_norm(GaussianInt a) {
  return narrow(norm128(a), "gaussian norm");
}

bool gauss_divides(GaussianInt d, GaussianInt a) {
  i128 nd = norm128(d);
  if (nd == 0) return false;
  i128 re = i128(a.re) * d.re + i128(a.im) * d.im;
  i128 im = i128(a.im) * d.re - i128(a.re) * d.im;
  return re % nd == 0 && im % nd == 0;
}

GaussianInt gauss_div_exact(GaussianInt a, GaussianInt d) {
  i128 nd = norm128(d);
  if (nd == 0)
    throw Error(ErrorCode::ZeroInput, "division by the zero gaussian integer");
  i128 re = i128(a.re) * d.re + i128(a.im) * d.im;
  i128 im = i128(a.im) * d.re - i128(a.re) * d.im;
  if (re % nd != 0 || im % nd != 0)
    throw Error(ErrorCode::FactorizationFailed,
                gauss_str(d) + " does not divide " + gauss_str(a));
  return {narrow(re / nd, "gaussian quotient"),
          narrow(im / nd, "gaussian quotient")};
}

GaussianInt gaussian_gcd(GaussianInt a, GaussianInt b) {
  // Euclid with rounded division: the remainder norm at most halves.
  while (!(b == GaussianInt{0, 0})) {
    i128 nd = norm128(b);
    i128 re = i128(a.re) * b.re + i128(a.im) * b.im;
    i128 im = i128(a.im) * b.re - i128(a.re) * b.im;
    auto nearest = [nd](i128 n) -> i128 {
      i128 q = n / nd, r = n - q * nd;
      if (2 * r >= nd) ++q;
      if (2 * r <= -nd) --q;
      return q;
    };
    GaussianInt q{narrow(nearest(re), "gcd quotient"),
                  narrow(nearest(im), "gcd quotient")};
    GaussianInt qb = gauss_mul(q, b);
    GaussianInt r{a.re - qb.re, a.im - qb.im};
    a = b;
    b = r;
  }
  return a;
}

std::string gauss_str(GaussianInt a) {
  std::ostringstream out;
  out << a.re;
  out << (a.im < 0 ? "-" : "+") << std::abs(a.im) << "i";
  return out.str();
}

std::vector<PlaceValuation> rational_places(std::int64_t num,
                                            std::int64_t den) {
  if (num == 0 || den == 0)
    throw Error(ErrorCode::ZeroInput,
                "rational number needs nonzero numerator and denominator");
  if (std::abs(num) > kNormCap || std::abs(den) > kNormCap)
    throw Error(ErrorCode::ValidationError,
                "numerator or denominator exceeds 2^62");
  u64 n = u64(std::abs(num)), d = u64(std::abs(den));
  u64 g = std::gcd(n, d);
  n /= g;
  d /= g;

  std::map<u64, int> ords;
  for (auto [p, e] : factor_u64(n)) ords[p] += e;
  for (auto [p, e] : factor_u64(d)) ords[p] -= e;

  std::vector<PlaceValuation> places;
  for (auto [p, ord] : ords) {
    if (p == 1 || ord == 0) continue;
    PlaceValuation v;
    v.kind = PlaceValuation::Kind::finite_prime;
    v.p = std::int64_t(p);
    v.norm = std::int64_t(p);
    v.ord = ord;
    v.log_norm = std::log(double(p));
    v.log_abs = -ord * v.log_norm;
    places.push_back(v);
  }
  PlaceValuation inf;
  inf.kind = PlaceValuation::Kind::infinite_real;
  inf.log_abs = std::log(double(n) / double(d));
  places.push_back(inf);
  return places;
}

std::vector<PlaceValuation> gaussian_places(GaussianInt num, GaussianInt den) {
  auto fn = gauss_factorize(num);
  auto fd = gauss_factorize(den);

  std::map<std::pair<std::int64_t, std::int64_t>,
           std::pair<std::int64_t, int>>
      ords;  // (re, im) -> (norm, ord)
  for (const auto& f : fn) ords[{f.pi.re, f.pi.im}] = {f.norm, f.e};
  for (const auto& f : fd) {
    auto& entry = ords[{f.pi.re, f.pi.im}];
    entry.first = f.norm;
    entry.second -= f.e;
  }

  std::vector<PlaceValuation> places;
  for (const auto& [key, val] : ords) {
    if (val.second == 0) continue;
    PlaceValuation v;
    v.kind = PlaceValuation::Kind::gaussian_prime;
    v.pi = {key.first, key.second};
    v.norm = val.first;
    v.ord = val.second;
    v.log_norm = std::log(double(v.norm));
    v.log_abs = -v.ord * v.log_norm;
    places.push_back(v);
  }
  std::sort(places.begin(), places.end(),
            [](const PlaceValuation& a, const PlaceValuation& b) {
              if (a.norm != b.norm) return a.norm < b.norm;
              if (a.pi.re != b.pi.re) return a.pi.re < b.pi.re;
              return a.pi.im < b.pi.im;
            });

  PlaceValuation inf;
  inf.kind = PlaceValuation::Kind::infinite_complex;
  // 2·log|num/den|, computed through the integer norms.
  inf.log_abs =
      std::log(double(gauss_norm(num)) / double(gauss_norm(den)));
  places.push_back(inf);
  return places;
}

double product_formula_residual(const std::vector<PlaceValuation>& places) {
  std::vector<PlaceValuation> ordered = places;
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const PlaceValuation& a, const PlaceValuation& b) {
                     auto rank = [](const PlaceValuation& v) {
                       return v.kind == PlaceValuation::Kind::infinite_real ||
                                      v.kind ==
                                          PlaceValuation::Kind::infinite_complex
                                  ? std::int64_t(INT64_MAX)
                                  : v.norm;
                     };
                     return rank(a) < rank(b);
                   });
  double sum = 0.0;
  for (const auto& v : ordered) sum += v.log_abs;
  return std::abs(sum);
}

std::string analogy_table(const VerificationReport& report,
                          const std::vector<PlaceValuation>* f_places) {
  std::ostringstream out;
  const size_t wpt = 26, wl = 14, wo = 6;
  out << pad("orbit", wpt) << pad("l(gamma)", wl) << pad("ord", wo);
  if (f_places) out << "| " << pad("place", 20) << pad("log N", wl) << "ord";
  out << "\n";
  out << std::string(f_places ? 86 : 46, '-') << "\n";

  size_t rows = report.orbits.size();
  if (f_places) rows = std::max(rows, f_places->size());
  for (size_t i = 0; i < rows; ++i) {
    if (i < report.orbits.size()) {
      const auto& orb = report.orbits[i];
      char lbuf[32];
      std::snprintf(lbuf, sizeof lbuf, "%.9f", orb.length_l);
      out << pad(point_label(orb.points.front()) + " (n=" +
                     std::to_string(orb.period_n) + ")",
                 wpt)
          << pad(lbuf, wl) << pad(std::to_string(orb.order), wo);
    } else {
      out << std::string(wpt + wl + wo, ' ');
    }
    if (f_places) {
      out << "| ";
      if (i < f_places->size()) {
        const auto& v = (*f_places)[i];
        std::string name;
        switch (v.kind) {
          case PlaceValuation::Kind::finite_prime:
            name = std::to_string(v.p);
            break;
          case PlaceValuation::Kind::gaussian_prime:
            name = gauss_str(v.pi);
            break;
          case PlaceValuation::Kind::infinite_real:
            name = "inf (real)";
            break;
          case PlaceValuation::Kind::infinite_complex:
            name = "inf (complex)";
            break;
        }
        if (v.kind == PlaceValuation::Kind::finite_prime ||
            v.kind == PlaceValuation::Kind::gaussian_prime) {
          char nbuf[32];
          std::snprintf(nbuf, sizeof nbuf, "%.9f", v.log_norm);
          out << pad(name, 20) << pad(nbuf, wl) << std::to_string(v.ord);
        } else {
          out << pad(name, 20) << pad("-", wl) << "-";
        }
      }
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace folprod

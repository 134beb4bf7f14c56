#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "folprod/verifier.hpp"

namespace folprod {

struct GaussianInt {
  std::int64_t re = 0;
  std::int64_t im = 0;
};

bool operator==(GaussianInt a, GaussianInt b);
GaussianInt gauss_mul(GaussianInt a, GaussianInt b);
GaussianInt gauss_conj(GaussianInt a);
std::int64_t gauss_norm(GaussianInt a);
// Exact quotient a/d; throws FactorizationFailed if d does not divide a.
GaussianInt gauss_div_exact(GaussianInt a, GaussianInt d);
bool gauss_divides(GaussianInt d, GaussianInt a);
GaussianInt gaussian_gcd(GaussianInt a, GaussianInt b);
std::string gauss_str(GaussianInt a);

// One term of a number-field product formula: a finite or infinite place
// together with ord, log of the residue norm, and log|f|_v.
struct PlaceValuation {
  enum class Kind { finite_prime, gaussian_prime, infinite_real, infinite_complex };
  Kind kind = Kind::finite_prime;
  std::int64_t p = 0;        // finite_prime: the rational prime
  GaussianInt pi{};          // gaussian_prime: first-quadrant generator
  std::int64_t norm = 1;     // p, or N(pi); 1 at infinite places
  int ord = 0;               // 0 at infinite places
  double log_norm = 0.0;
  double log_abs = 0.0;
};

// Places of the rational number num/den: one entry per prime dividing either
// side (ord = v_p(num) − v_p(den)) plus the real infinite place.
std::vector<PlaceValuation> rational_places(std::int64_t num, std::int64_t den);

// Places of the Gaussian number num/den over ℤ[i], primes in the first
// quadrant, plus the single complex infinite place (log_abs = 2·log|f|).
std::vector<PlaceValuation> gaussian_places(GaussianInt num,
                                            GaussianInt den = {1, 0});

// |Σ log|f|_v| with the finite places summed first in increasing norm order.
double product_formula_residual(const std::vector<PlaceValuation>& places);

// Side-by-side text table: closed orbits (l, ord) next to places
// (log-norm, ord). Pass nullptr to render the orbit column alone.
std::string analogy_table(const VerificationReport& report,
                          const std::vector<PlaceValuation>* f_places = nullptr);

}  // namespace folprod

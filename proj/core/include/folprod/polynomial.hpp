#pragma once

#include <complex>
#include <vector>

#include "folprod/error.hpp"

namespace folprod {

using Cx = std::complex<double>;

// Dense polynomial, coefficients low degree first.
using Poly = std::vector<Cx>;

// Drops high-order coefficients with |c| <= tol.
Poly poly_trim(Poly p, double tol = 1e-12);
int poly_degree(const Poly& p);  // -1 for the zero polynomial
bool poly_is_zero(const Poly& p);
Cx poly_eval(const Poly& p, Cx z);
void poly_eval_with_derivative(const Poly& p, Cx z, Cx& value, Cx& derivative);
Poly poly_derivative(const Poly& p);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_add(const Poly& a, const Poly& b);
Poly poly_scale(Poly p, Cx c);
// Coefficients reversed: represents w^deg * p(1/w).
Poly poly_reversed(Poly p);
// Multiplies by z^k.
Poly poly_shift_up(Poly p, int k);
// Synthetic division by (z - root); remainder is discarded.
Poly poly_deflate(const Poly& p, Cx root);
Poly poly_from_roots(Cx leading, const std::vector<Cx>& roots);

// Chordal distance on the Riemann sphere for finite values,
// d(z,w) = 2|z-w| / sqrt((1+|z|^2)(1+|w|^2)).
double chordal_finite(Cx a, Cx b);

// All roots of p (counted with multiplicity, as a flat list of machine
// approximations) via Aberth–Ehrlich simultaneous iteration from
// perturbed-circle initial guesses. Exact zero roots are stripped first.
// Throws RootFindingFailed if the sweep cap (200) is hit without either
// convergence or a stable stagnation plateau.
std::vector<Cx> aberth_roots(const Poly& p);

struct PolyRoot {
  Cx position;
  int multiplicity;
};

// Roots grouped into points with integer multiplicities. Approximations are
// clustered at cluster_tol in the chordal metric; near-coincident clusters are
// re-examined as a single multiple root (centroid + multiplicity-aware Newton
// polish), and every accepted point is confirmed by a winding integral of
// p'/p around it. Throws MultiplicityAmbiguous when the two gradings cannot
// be reconciled.
std::vector<PolyRoot> poly_roots_clustered(const Poly& p,
                                           double cluster_tol = 1e-7);

// Raw contour integral (1/2πi) ∮ (num'/num - den'/den) dz over the circle
// |z - center| = radius, positively oriented. Trapezoid quadrature with node
// doubling from 64 nodes until the change drops below conv_tol. Throws
// NotNearInteger if the quadrature fails to converge within max_nodes.
Cx poly_log_contour_integral(const Poly& num, const Poly& den, Cx center,
                             double radius, double conv_tol = 1e-10,
                             int max_nodes = 1 << 14);

// The integral above snapped to the nearest integer; |raw - n| must be below
// snap_tol or NotNearInteger is thrown.
int poly_winding_number(const Poly& num, const Poly& den, Cx center,
                        double radius, double conv_tol = 1e-10,
                        double snap_tol = 1e-6);

}  // namespace folprod

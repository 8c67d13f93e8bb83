#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "bel/measure.hpp"
#include "bel/parallel.hpp"

namespace bel {

using Complex = std::complex<double>;

// Boolean cumulants b_k, k >= 1: the coefficients of
// K_mu(z) = sum_{k>=1} b_k z^{1-k}, additive under Boolean convolution.
struct CumulantSeries {
  std::vector<double> b;
  int order() const { return static_cast<int>(b.size()); }
};

// G_mu(z) = int dmu(x)/(z - x), analytic C+ -> C-. Requires Im z > 0.
Complex cauchy_transform(const Measure& m, Complex z);

// K_mu(z) = z - 1/G_mu(z)
Complex k_transform(const Measure& m, Complex z);

// Solves the moment recursion m_n = sum_{k=1}^n b_k m_{n-k} for b.
CumulantSeries boolean_cumulants(const Measure& m, int order);

// Boolean convolution a (+) b. Atomic (or empirical) inputs go through exact
// rational-function arithmetic: G = 1/(z - K_a - K_b) is expanded in partial
// fractions, poles found as companion-matrix eigenvalues. Density inputs are
// recovered on a grid via stieltjes_invert of the same G. `order` is the
// depth to which output moments track the cumulant recursion (tests).
Measure boolean_convolve(const Measure& a, const Measure& b, int order = 16);

using TransformFn = std::function<Complex(Complex)>;

// Density recovery from a Cauchy-transform evaluator: for each grid node x,
// -(1/pi) Im g(x + i eps) is polynomially extrapolated to eps -> 0 across the
// (strictly decreasing) schedule, clipped at 0 and renormalized. Fails if the
// pre-normalization mass strays from 1 by more than 0.2.
Measure stieltjes_invert(const TransformFn& g, double x0, double dx, int count,
                         const std::vector<double>& eps_schedule, Exec exec = Exec::OpenMP);

// (1/pi) p.v. int d(y)/(x - y) dy for a grid density, by symmetric-exclusion
// quadrature: nodes are paired equidistantly around x so the singular node
// drops out. x must lie strictly inside the grid.
double hilbert_transform(const Measure& grid_density, double x);

namespace detail {

// polynomial with real coefficients, c[i] multiplies z^i
struct Poly {
  std::vector<double> c;
  int degree() const { return static_cast<int>(c.size()) - 1; }
};

Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_add(const Poly& a, const Poly& b);
Poly poly_scale(const Poly& a, double s);
// coefficients of p(s*z) as a polynomial in z
Poly poly_compose_scale(const Poly& p, double s);
Complex poly_eval(const Poly& p, Complex z);
Poly poly_derivative(const Poly& p);

// G_m = num/den for an atomic or empirical measure
void cauchy_rational(const Measure& m, Poly& num, Poly& den);

// Partial-fraction decomposition of a proper rational Cauchy transform into
// an atomic probability measure. Throws numerical_error when a pole has
// imaginary part beyond 1e-8 or residues fail to be a probability vector.
Measure atomic_from_cauchy_rational(const Poly& num, const Poly& den);

std::vector<Complex> poly_roots(const Poly& p);

}  // namespace detail

}  // namespace bel

#pragma once

#include <utility>
#include <vector>

#include "bel/laws.hpp"
#include "bel/measure.hpp"
#include "bel/parallel.hpp"
#include "bel/transforms.hpp"

namespace bel {

// The Boolean convolution semigroup (mu_t)_{t>=1} of a mean-0 variance-1
// base measure, via G_t(z) = 1/(z - sqrt(t) K_mu(sqrt(t) z)). At integer t
// it agrees with the t-fold Boolean convolution of dilate(mu, 1/sqrt(t)).
struct SemigroupEvaluator {
  Measure base;
  double t;
  SemigroupEvaluator(Measure base_measure, double time);
};

Complex mu_t_cauchy(const SemigroupEvaluator& s, Complex z);

// Density recovery of mu_t on the given grid; checks that the recovered
// measure stays in P_0^2 within 2e-2.
Measure mu_t_measure(const SemigroupEvaluator& s, const GridSpec& grid,
                     Exec exec = Exec::OpenMP);

// The entropy curve t -> Gamma(mu_t). Atomic bases are propagated exactly
// through the semigroup's rational Cauchy transform (partial fractions);
// density bases go through Stieltjes inversion on an internal grid.
std::vector<std::pair<double, double>> gamma_curve(const SemigroupEvaluator& s,
                                                   const std::vector<double>& ts,
                                                   Exec exec = Exec::OpenMP);

// ell(x) = (x+1)/(x-1) log x^2 continuously extended: ell(1) = 4, ell(-1) = 0;
// +inf at x = 0. Nonnegative everywhere.
double ell(double x);

// gamma'_mu(1) = 1/2 E[ell(X/Y)] - 1 for X, Y iid mu. Exact double sum for
// atomic measures; grid densities integrate the near-zero y strip in
// log coordinates.
double gamma_prime_1(const Measure& m, Exec exec = Exec::OpenMP);

namespace detail {
// mu_t of an atomic base as an exact atomic measure
Measure mu_t_atomic(const Measure& base, double t);
}

}  // namespace bel

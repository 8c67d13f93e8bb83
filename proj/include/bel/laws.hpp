#pragma once

#include <utility>
#include <vector>

#include "bel/measure.hpp"
#include "bel/transforms.hpp"

namespace bel {

enum class LawKind { Rademacher, MuHalf, Semicircle, MarchenkoPastur, PAlpha };

struct LawSpec {
  LawKind kind = LawKind::Rademacher;
  double gamma = 1.0;  // MarchenkoPastur, in (0,1]
  double alpha = 1.0;  // PAlpha, in (0,1]

  static LawSpec rademacher() { return {LawKind::Rademacher, 1.0, 1.0}; }
  static LawSpec mu_half() { return {LawKind::MuHalf, 1.0, 1.0}; }
  static LawSpec semicircle() { return {LawKind::Semicircle, 1.0, 1.0}; }
  static LawSpec marchenko_pastur(double g) { return {LawKind::MarchenkoPastur, g, 1.0}; }
  static LawSpec p_alpha(double a) { return {LawKind::PAlpha, 1.0, a}; }
};

struct GridSpec {
  double x0;
  double dx;
  int count;
};

// Closed-form density values; 0 exactly outside the closed support.
double semicircle_density(double x);
double mp_density(double gamma, double t);
double p_alpha_density(double alpha, double x);

// support band edges of p_alpha: gamma1^2 = 2 - 2 sqrt(2a - a^2),
// gamma2^2 = 2 + 2 sqrt(2a - a^2)
double p_alpha_edge_inner(double alpha);
double p_alpha_edge_outer(double alpha);

// Closed-form Cauchy transform of p_alpha on C+,
//   G(z) = (z^2 - 2(1-alpha) - sqrt((z^2-a)(z^2-b))) / (2 alpha z),
// with the square root taken as z^2 sqrt(1-a/z^2) sqrt(1-b/z^2) (principal
// branches), which is the analytic branch that is positive for real x above
// the outer edge. Note the sign of the 2(1-alpha) term: the plus variant has
// an extra point mass at 0 and total mass (2-alpha)/alpha instead of 1.
Complex p_alpha_cauchy(double alpha, Complex z);

// Atomic laws ignore the grid; densities are sampled on it (mass-renormalized,
// the pre-normalization trapezoid mass retrievable via Measure::raw_mass).
Measure make_law(const LawSpec& spec, const GridSpec& grid);

// Exact support as a list of closed intervals (atoms as degenerate ones).
std::vector<std::pair<double, double>> support(const LawSpec& spec);

}  // namespace bel

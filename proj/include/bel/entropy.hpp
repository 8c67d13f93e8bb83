#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "bel/measure.hpp"
#include "bel/parallel.hpp"

namespace bel {

enum class RateName { Isym, I, Jplus, Jtilde, Jgamma, Ialpha, IgammaV, Ipair };

const char* rate_name_str(RateName n);

// Every rate evaluation reports the raw functional value as stated, the
// subtracted normalizer (the functional's infimum, analytic where known in
// closed form, else evaluated numerically at the documented minimizer), and
// their difference.
struct RateReport {
  RateName name;
  double raw;
  double normalizer;
  double normalized;
  std::vector<std::pair<std::string, double>> params;
};

std::string rate_report_json(const RateReport& r);

// Gamma(mu) = int log x^2 dmu. An atom at 0 yields -inf. Grid densities are
// integrated in closed form against the piecewise-linear interpolant, which
// handles the integrable log singularity at 0 without splitting.
double gamma_entropy(const Measure& m);

// Sigma(mu) = iint log|x-y| dmu dmu. -inf for atomic/empirical input. The
// product-grid integral uses exact log-kernel integrals per cell pair (a
// Toeplitz form in the cell distance), cell mass spread uniformly.
double sigma_entropy(const Measure& m, Exec exec = Exec::OpenMP);

// S(mu) = -int f log f, grid densities only, 0 log 0 := 0.
double classical_entropy(const Measure& m);

RateReport rate_isym(const Measure& m);
RateReport rate_i(const Measure& m);
RateReport rate_jplus(const Measure& m);
RateReport rate_jtilde(const Measure& m);
RateReport rate_jgamma(const Measure& m, double gamma, Exec exec = Exec::OpenMP);
RateReport rate_ialpha(const Measure& m, double alpha, Exec exec = Exec::OpenMP);
RateReport rate_igamma_v(const Measure& m, double gamma,
                         const std::function<double(double)>& potential);
RateReport rate_pair(const SubMeasure& a, const SubMeasure& b);

struct EulerLagrangeResidual {
  double max_dev_on_support;    // max |phi - mean_support(phi)| on the support
  double min_slack_off_support;  // min of mean_support(phi) - phi off support
};

// Certifies the equilibrium condition of the interpolating minimizer:
// phi(x) = 2 alpha int log|x-y| d(y) - x^2/2 + (1-alpha) log x^2 must be
// constant on the support and no larger off it.
EulerLagrangeResidual euler_lagrange_residual(const Measure& d, double alpha,
                                              Exec exec = Exec::OpenMP);

namespace detail {
// int log|x-y| d(y) for a grid density, cell mass spread uniformly per cell
double log_potential(const Measure& grid, double x);
}

}  // namespace bel

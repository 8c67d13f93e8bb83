#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "bel/measure.hpp"

namespace bel {

struct McmcParams {
  int burnin = 1000;
  int steps = 1000;          // recorded sweeps after burn-in
  double proposal_sd = 0.5;  // single-site Gaussian proposal scale
  bool adapt = true;         // Robbins-Monro toward acceptance 0.3, burn-in only
};

struct WishartBlockConfig {
  int p;
  int n;
  std::uint64_t seed;
};

struct ConditionedGueConfig {
  int M;
  int N;
  std::uint64_t seed;
  McmcParams mcmc;
};

using EnsembleConfig = std::variant<WishartBlockConfig, ConditionedGueConfig>;

struct WishartBlockSample {
  Measure singular_values;  // empirical on [0, inf)
  Measure reflected;        // the +-s symmetrization
};

// Singular values of G/sqrt(2n) for a p x n block of complex Gaussians whose
// real and imaginary parts are each standard normal (E|g|^2 = 2, the
// convention that reproduces the lambda^{n-p} e^{-n lambda} eigenvalue
// weight). Deterministic given the seed.
WishartBlockSample sample_wishart_block(const WishartBlockConfig& cfg);

struct GueSample {
  Measure empirical;  // final chain state
  double acceptance_rate = 0.0;
  std::vector<std::string> warnings;
};

// Metropolis-Hastings on the conditioned-eigenvalue log density
//   2(N-M) sum log|l_i| + 2 sum_{i<j} log|l_i - l_j| - (N/2) sum l_i^2
// with single-site Gaussian proposals. Proposals landing on collisions or 0
// are rejected, never errors. A post-burn-in sweep with zero acceptances
// attaches a mixing-failure warning.
GueSample sample_conditioned_gue(const ConditionedGueConfig& cfg);

// Same chain, invoking the observer with the state after every recorded
// sweep (used by the small-instance equivalence tests).
GueSample sample_conditioned_gue(const ConditionedGueConfig& cfg,
                                 const std::function<void(std::span<const double>)>& observer);

struct ThetaSolution {
  double theta;      // in (0,1)
  double residual;   // |M^2 log theta^-2 - N M theta^2|
  int iterations;
};

// Damped fixed point for the equilibrium relation M^2 log theta^-2 = N M theta^2.
ThetaSolution solve_theta(int M, int N);

struct ScaledPair {
  std::vector<double> alpha_points;  // (l_i - sqrt2)/theta for l_i >= 0
  std::vector<double> beta_points;   // (l_i + sqrt2)/theta for l_i < 0
  int m0;                            // #{i : l_i >= 0}; ties at 0 go alpha-side
};

struct ScaledPairResult {
  ScaledPair pair;
  SubMeasure alpha_measure;  // mass m0/M
  SubMeasure beta_measure;   // mass (M-m0)/M
};

ScaledPairResult scaled_pair(std::span<const double> lambdas, int M, int N);

}  // namespace bel

#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "bel/ensembles.hpp"
#include "bel/measure.hpp"
#include "bel/parallel.hpp"

namespace bel {

struct WishartSingularModel {
  int p;
  int n;
};

struct ConditionedGueModel {
  int M;
  int N;
};

using WeightModel = std::variant<WishartSingularModel, ConditionedGueModel>;

// Exact log of the unnormalized configuration density (no D_{p,n} / Z_{M,N}):
//   Wishart singular values: 2 sum_{i<j} log|s_i^2-s_j^2|
//                            + (2(n-p)+1) sum log s_i - n sum s_i^2
//   conditioned GUE:         2(N-M) sum log|l_i| + 2 sum_{i<j} log|l_i-l_j|
//                            - (N/2) sum l_i^2
// Collisions or zero coordinates give -inf. The configuration is sorted
// internally, so the value is exactly permutation-invariant.
double log_weight(const WeightModel& wm, std::span<const double> config);

struct RatioCheck {
  double measured;   // (log w(quantiles of a) - log w(quantiles of b)) / speed
  double predicted;  // normalized rate(b) - normalized rate(a)
};

// Builds the quantile configuration x^{i,p} of each atomless target and
// compares the log-weight ratio against the rate difference at the model's
// speed (pn or NM).
RatioCheck ldp_weight_ratio_check(const WeightModel& wm, const Measure& target_a,
                                  const Measure& target_b, int quantile_count);

struct ReplicaStats {
  std::uint64_t seed = 0;
  double d_bl_limit = 0.0;  // to Rademacher (wishart) / to M_0 (gue)
  double m2 = 0.0;
  double m4 = 0.0;
  std::string error;  // empty on success
};

struct ConvergenceSummary {
  std::vector<ReplicaStats> replicas;
  double mean_d_bl = 0.0;
  double mean_m2 = 0.0;
  double mean_m4 = 0.0;
  int failures = 0;
};

// Runs the sampler over seeds base_seed .. base_seed+replicas-1 and reports
// per-replica distances to the documented limit plus averaged even moments.
// Sampler errors are recorded per replica, not fatal.
ConvergenceSummary convergence_stats(const EnsembleConfig& model, int replicas,
                                     std::uint64_t base_seed, Exec exec = Exec::OpenMP);

std::string convergence_summary_json(const ConvergenceSummary& s);

// distance from m to the set {p d_{sqrt2} + (1-p) d_{-sqrt2}}: grid over p
// with golden refinement
double d_bl_to_m0(const Measure& m);

// quantile configuration x^{i,count} of an atomless target
std::vector<double> quantile_configuration(const Measure& target, int count);

}  // namespace bel

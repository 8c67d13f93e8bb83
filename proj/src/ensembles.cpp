#include "bel/ensembles.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bel/errors.hpp"
#include "bel/rng.hpp"

namespace bel {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
const double kSqrt2 = std::sqrt(2.0);

}  // namespace

WishartBlockSample sample_wishart_block(const WishartBlockConfig& cfg) {
  if (cfg.p < 1 || cfg.n < cfg.p) throw domain_error("wishart block requires 1 <= p <= n");
  Rng rng(cfg.seed);
  Eigen::MatrixXcd g(cfg.p, cfg.n);
  for (int i = 0; i < cfg.p; ++i)
    for (int j = 0; j < cfg.n; ++j) {
      const double re = rng.normal();
      const double im = rng.normal();
      g(i, j) = std::complex<double>(re, im);
    }
  const Eigen::MatrixXcd w = (g * g.adjoint()) / (2.0 * static_cast<double>(cfg.n));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(w, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw numerical_error("eigen decomposition failed for wishart block p=" +
                          std::to_string(cfg.p) + " n=" + std::to_string(cfg.n));
  std::vector<double> s(static_cast<std::size_t>(cfg.p));
  for (int i = 0; i < cfg.p; ++i) s[static_cast<std::size_t>(i)] = std::sqrt(std::max(0.0, es.eigenvalues()[i]));
  Measure sv = Measure::empirical(std::move(s));
  Measure refl = symmetrize(sv);
  return {std::move(sv), std::move(refl)};
}

namespace {

// log-target difference when site i moves from old_x to new_x
double site_delta(const std::vector<double>& lam, int i, double old_x, double new_x, int M,
                  int N) {
  if (new_x == 0.0) return kNegInf;
  double d = 2.0 * (N - M) * (std::log(std::abs(new_x)) - std::log(std::abs(old_x)));
  d -= 0.5 * N * (new_x * new_x - old_x * old_x);
  for (int j = 0; j < M; ++j) {
    if (j == i) continue;
    const double dn = new_x - lam[static_cast<std::size_t>(j)];
    if (dn == 0.0) return kNegInf;
    d += 2.0 * (std::log(std::abs(dn)) - std::log(std::abs(old_x - lam[static_cast<std::size_t>(j)])));
  }
  return d;
}

}  // namespace

GueSample sample_conditioned_gue(const ConditionedGueConfig& cfg,
                                 const std::function<void(std::span<const double>)>& observer) {
  if (cfg.M < 1 || cfg.N < cfg.M) throw domain_error("conditioned GUE requires 1 <= M <= N");
  if (cfg.mcmc.steps < 1) throw domain_error("mcmc steps must be >= 1");
  const int M = cfg.M, N = cfg.N;
  Rng rng(cfg.seed);
  std::vector<double> lam(static_cast<std::size_t>(M));
  for (double& x : lam) x = rng.normal();

  double sd = cfg.mcmc.proposal_sd;
  if (!(sd > 0.0)) sd = 0.5;
  GueSample out{Measure::dirac(0.0), 0.0, {}};
  long accepted_total = 0;
  bool warned = false;

  const auto sweep = [&](bool adapt_now, int k) {
    int accepted = 0;
    for (int i = 0; i < M; ++i) {
      const double old_x = lam[static_cast<std::size_t>(i)];
      const double new_x = old_x + sd * rng.normal();
      const double d = site_delta(lam, i, old_x, new_x, M, N);
      if (d >= 0.0 || std::log(rng.uniform01()) < d) {
        lam[static_cast<std::size_t>(i)] = new_x;
        ++accepted;
      }
    }
    if (adapt_now) {
      const double rate = static_cast<double>(accepted) / M;
      const double gain = 1.0 / std::pow(static_cast<double>(k + 1), 0.6);
      sd *= std::exp(gain * (rate - 0.3));
      sd = std::clamp(sd, 1e-6, 1e3);
    }
    return accepted;
  };

  for (int k = 0; k < cfg.mcmc.burnin; ++k) sweep(cfg.mcmc.adapt, k);
  for (int k = 0; k < cfg.mcmc.steps; ++k) {
    const int acc = sweep(false, 0);
    accepted_total += acc;
    if (acc == 0 && !warned) {
      out.warnings.push_back("mixing failure: zero acceptance over a full sweep after burn-in");
      warned = true;
    }
    if (observer) observer(std::span<const double>(lam.data(), lam.size()));
  }
  out.acceptance_rate =
      static_cast<double>(accepted_total) / (static_cast<double>(cfg.mcmc.steps) * M);
  out.empirical = Measure::empirical(lam);
  return out;
}

GueSample sample_conditioned_gue(const ConditionedGueConfig& cfg) {
  return sample_conditioned_gue(cfg, nullptr);
}

ThetaSolution solve_theta(int M, int N) {
  if (M < 1 || M >= N) throw domain_error("solve_theta requires 1 <= M < N");
  const double ratio = static_cast<double>(M) / static_cast<double>(N);
  double x = ratio;  // x = theta^2
  int it = 0;
  const int max_it = 10000;
  const auto residual = [&](double t2) {
    return std::abs(static_cast<double>(M) * M * std::log(1.0 / t2) -
                    static_cast<double>(N) * M * t2);
  };
  const auto target = [&](double t2) {
    return static_cast<double>(N) * M * t2;
  };
  while (it < max_it && residual(x) > 1e-9 * target(x)) {
    x += 0.5 * (ratio * std::log(1.0 / x) - x);
    if (!(x > 0.0) || !std::isfinite(x)) throw numerical_error("theta iteration left (0,1)");
    ++it;
  }
  if (it == max_it) throw numerical_error("theta fixed point did not converge");
  return {std::sqrt(x), residual(x), it};
}

ScaledPairResult scaled_pair(std::span<const double> lambdas, int M, int N) {
  if (static_cast<int>(lambdas.size()) != M)
    throw domain_error("scaled_pair: configuration size must equal M");
  const double theta = solve_theta(M, N).theta;
  ScaledPairResult r;
  for (double l : lambdas) {
    if (l >= 0.0) {
      r.pair.alpha_points.push_back((l - kSqrt2) / theta);
    } else {
      r.pair.beta_points.push_back((l + kSqrt2) / theta);
    }
  }
  r.pair.m0 = static_cast<int>(r.pair.alpha_points.size());
  const double w = 1.0 / static_cast<double>(M);
  std::vector<Atom> aa, bb;
  for (double x : r.pair.alpha_points) aa.push_back({x, w});
  for (double x : r.pair.beta_points) bb.push_back({x, w});
  r.alpha_measure = SubMeasure::atomic(std::move(aa));
  r.beta_measure = SubMeasure::atomic(std::move(bb));
  return r;
}

}  // namespace bel

#include "bel/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bel/entropy.hpp"
#include "bel/errors.hpp"
#include "bel/laws.hpp"
#include "json.hpp"

namespace bel {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
const double kSqrt2 = std::sqrt(2.0);

}  // namespace

double log_weight(const WeightModel& wm, std::span<const double> config) {
  std::vector<double> c(config.begin(), config.end());
  std::sort(c.begin(), c.end());
  const std::size_t n = c.size();
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (c[i] == c[i + 1]) return kNegInf;
  if (std::holds_alternative<WishartSingularModel>(wm)) {
    const auto& m = std::get<WishartSingularModel>(wm);
    if (static_cast<int>(n) != m.p) throw domain_error("config size must equal p");
    double lw = 0.0;
    for (double s : c) {
      if (s <= 0.0) return kNegInf;
      lw += (2.0 * (m.n - m.p) + 1.0) * std::log(s) - m.n * s * s;
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        lw += 2.0 * std::log(std::abs(c[i] * c[i] - c[j] * c[j]));
    return lw;
  }
  const auto& m = std::get<ConditionedGueModel>(wm);
  if (static_cast<int>(n) != m.M) throw domain_error("config size must equal M");
  double lw = 0.0;
  for (double l : c) {
    if (l == 0.0) return kNegInf;
    lw += 2.0 * (m.N - m.M) * std::log(std::abs(l)) - 0.5 * m.N * l * l;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      lw += 2.0 * std::log(std::abs(c[i] - c[j]));
  return lw;
}

std::vector<double> quantile_configuration(const Measure& target, int count) {
  if (count < 1) throw domain_error("quantile count must be >= 1");
  if (!target.is_grid())
    throw domain_error("quantile configuration needs an atomless (grid) target");
  // CDF of the piecewise-linear density, inverted per quantile by bisection
  const auto& v = target.values();
  const std::size_t n = v.size();
  const double h = target.dx();
  std::vector<double> cdf(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) cdf[i] = cdf[i - 1] + 0.5 * (v[i - 1] + v[i]) * h;
  const double total = cdf[n - 1];
  std::vector<double> q(static_cast<std::size_t>(count));
  for (int i = 1; i <= count; ++i) {
    const double level = total * static_cast<double>(i) / static_cast<double>(count + 1);
    const std::size_t hi = static_cast<std::size_t>(
        std::lower_bound(cdf.begin(), cdf.end(), level) - cdf.begin());
    if (hi == 0) {
      q[static_cast<std::size_t>(i - 1)] = target.node(0);
      continue;
    }
    // solve the in-cell quadratic by bisection on the monotone CDF
    double lo_x = target.node(hi - 1), hi_x = target.node(hi);
    const double base = cdf[hi - 1];
    const double fl = v[hi - 1];
    const double slope = (v[hi] - v[hi - 1]) / h;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo_x + hi_x);
      const double dxm = mid - target.node(hi - 1);
      const double mass = base + fl * dxm + 0.5 * slope * dxm * dxm;
      (mass < level ? lo_x : hi_x) = mid;
    }
    q[static_cast<std::size_t>(i - 1)] = 0.5 * (lo_x + hi_x);
  }
  return q;
}

RatioCheck ldp_weight_ratio_check(const WeightModel& wm, const Measure& target_a,
                                  const Measure& target_b, int quantile_count) {
  const auto qa = quantile_configuration(target_a, quantile_count);
  const auto qb = quantile_configuration(target_b, quantile_count);
  const double lwa = log_weight(wm, qa);
  const double lwb = log_weight(wm, qb);
  RatioCheck r{};
  if (std::holds_alternative<WishartSingularModel>(wm)) {
    const auto& m = std::get<WishartSingularModel>(wm);
    if (quantile_count != m.p) throw domain_error("quantile count must equal p");
    const double speed = static_cast<double>(m.p) * m.n;
    r.measured = (lwa - lwb) / speed;
    r.predicted = rate_jplus(target_b).normalized - rate_jplus(target_a).normalized;
  } else {
    const auto& m = std::get<ConditionedGueModel>(wm);
    if (quantile_count != m.M) throw domain_error("quantile count must equal M");
    const double speed = static_cast<double>(m.N) * m.M;
    r.measured = (lwa - lwb) / speed;
    r.predicted = rate_i(target_b).normalized - rate_i(target_a).normalized;
  }
  return r;
}

double d_bl_to_m0(const Measure& m) {
  const auto mu_p = [](double p) {
    if (p <= 0.0) return Measure::dirac(-kSqrt2);
    if (p >= 1.0) return Measure::dirac(kSqrt2);
    return Measure::atomic({{-kSqrt2, 1.0 - p}, {kSqrt2, p}});
  };
  const int n = 1000;
  double best_p = 0.0, best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= n; ++i) {
    const double p = static_cast<double>(i) / n;
    const double d = d_bl(m, mu_p(p));
    if (d < best) {
      best = d;
      best_p = p;
    }
  }
  double a = std::max(0.0, best_p - 1.0 / n), b = std::min(1.0, best_p + 1.0 / n);
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = d_bl(m, mu_p(x1)), f2 = d_bl(m, mu_p(x2));
  for (int it = 0; it < 60; ++it) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = d_bl(m, mu_p(x1));
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = d_bl(m, mu_p(x2));
    }
  }
  return std::min(best, std::min(f1, f2));
}

ConvergenceSummary convergence_stats(const EnsembleConfig& model, int replicas,
                                     std::uint64_t base_seed, Exec exec) {
  if (replicas < 1) throw domain_error("replicas must be >= 1");
  ConvergenceSummary s;
  s.replicas.resize(static_cast<std::size_t>(replicas));
  const Measure rademacher = Measure::atomic({{-1.0, 0.5}, {1.0, 0.5}});
  for_each_index(static_cast<std::size_t>(replicas), exec, [&](std::size_t i) {
    ReplicaStats& r = s.replicas[i];
    r.seed = base_seed + i;
    try {
      if (std::holds_alternative<WishartBlockConfig>(model)) {
        WishartBlockConfig cfg = std::get<WishartBlockConfig>(model);
        cfg.seed = r.seed;
        const auto sample = sample_wishart_block(cfg);
        r.d_bl_limit = d_bl(sample.reflected, rademacher);
        r.m2 = moment(sample.reflected, 2);
        r.m4 = moment(sample.reflected, 4);
      } else {
        ConditionedGueConfig cfg = std::get<ConditionedGueConfig>(model);
        cfg.seed = r.seed;
        const auto sample = sample_conditioned_gue(cfg);
        r.d_bl_limit = d_bl_to_m0(sample.empirical);
        r.m2 = moment(sample.empirical, 2);
        r.m4 = moment(sample.empirical, 4);
      }
    } catch (const std::exception& e) {
      r.error = e.what();
    }
  });
  int ok = 0;
  for (const auto& r : s.replicas) {
    if (!r.error.empty()) {
      ++s.failures;
      continue;
    }
    s.mean_d_bl += r.d_bl_limit;
    s.mean_m2 += r.m2;
    s.mean_m4 += r.m4;
    ++ok;
  }
  if (ok > 0) {
    s.mean_d_bl /= ok;
    s.mean_m2 /= ok;
    s.mean_m4 /= ok;
  }
  return s;
}

std::string convergence_summary_json(const ConvergenceSummary& s) {
  nlohmann::json j;
  j["replicas"] = nlohmann::json::array();
  for (const auto& r : s.replicas) {
    nlohmann::json e;
    e["seed"] = r.seed;
    if (r.error.empty()) {
      e["d_bl_limit"] = r.d_bl_limit;
      e["m2"] = r.m2;
      e["m4"] = r.m4;
    } else {
      e["error"] = r.error;
    }
    j["replicas"].push_back(std::move(e));
  }
  j["mean_d_bl"] = s.mean_d_bl;
  j["mean_m2"] = s.mean_m2;
  j["mean_m4"] = s.mean_m4;
  j["failures"] = s.failures;
  return j.dump(2);
}

}  // namespace bel

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "bel/measure.hpp"
#include "bel/rng.hpp"

namespace testutil {

// ---- independent quadrature oracle (adaptive Simpson) ----

inline double simpson(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  return (b - a) / 6.0 * (f(a) + 4.0 * f(c) + f(b));
}

inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double b,
                                   double whole, double tol, int depth) {
  const double c = 0.5 * (a + b);
  const double left = simpson(f, a, c);
  const double right = simpson(f, c, b);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson_rec(f, a, c, left, 0.5 * tol, depth - 1) +
         adaptive_simpson_rec(f, c, b, right, 0.5 * tol, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-10) {
  return adaptive_simpson_rec(f, a, b, simpson(f, a, b), tol, 40);
}

// integrate f over [a,b] with integrable endpoint trouble: substitute
// u = sqrt(x - a) and u = sqrt(b - x) on the two halves
inline double integrate_edge_safe(const std::function<double(double)>& f, double a, double b,
                                  double tol = 1e-10) {
  const double c = 0.5 * (a + b);
  const auto left = [&](double u) { return 2.0 * u * f(a + u * u); };
  const auto right = [&](double u) { return 2.0 * u * f(b - u * u); };
  return integrate(left, 0.0, std::sqrt(c - a), tol) +
         integrate(right, 0.0, std::sqrt(b - c), tol);
}

// ---- closed-form d_BL oracle for point masses: min(2, |x-y|) ----

inline double dbl_point_masses(double x, double y) { return std::min(2.0, std::abs(x - y)); }

// ---- exact LP oracle by vertex enumeration (small n only) ----
// At a vertex of {|f_i|<=1, |f_{i+1}-f_i| <= d_i} every coordinate is an
// anchor value +-1 propagated along a chain of tight edges, so the candidate
// value set per node is {s + signed consecutive sums of d's}. A DP over the
// candidate sets that enforces feasibility attains the LP optimum.
inline double dbl_lp_oracle(const std::vector<double>& x, const std::vector<double>& c) {
  const std::size_t n = x.size();
  std::vector<double> d(n > 0 ? n - 1 : 0);
  for (std::size_t i = 0; i + 1 < n; ++i) d[i] = x[i + 1] - x[i];
  std::vector<std::vector<double>> cand(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (double anchor : {1.0, -1.0}) {
      // chains ending at i from anchor at j <= i, all sign patterns
      for (std::size_t j = 0; j <= i; ++j) {
        const std::size_t len = i - j;
        for (unsigned mask = 0; mask < (1u << len); ++mask) {
          double v = anchor;
          for (std::size_t e = 0; e < len; ++e)
            v += ((mask >> e) & 1u) ? d[j + e] : -d[j + e];
          if (v >= -1.0 - 1e-12 && v <= 1.0 + 1e-12) cand[i].push_back(v);
        }
      }
      // chains starting at i toward anchors at j >= i
      for (std::size_t j = i; j < n; ++j) {
        const std::size_t len = j - i;
        for (unsigned mask = 0; mask < (1u << len); ++mask) {
          double v = anchor;
          for (std::size_t e = 0; e < len; ++e)
            v += ((mask >> e) & 1u) ? d[i + e] : -d[i + e];
          if (v >= -1.0 - 1e-12 && v <= 1.0 + 1e-12) cand[i].push_back(v);
        }
      }
    }
    std::sort(cand[i].begin(), cand[i].end());
    cand[i].erase(std::unique(cand[i].begin(), cand[i].end()), cand[i].end());
  }
  std::vector<double> best(cand[0].size());
  for (std::size_t a = 0; a < cand[0].size(); ++a) best[a] = c[0] * cand[0][a];
  for (std::size_t i = 1; i < n; ++i) {
    std::vector<double> next(cand[i].size(), -1e300);
    for (std::size_t b = 0; b < cand[i].size(); ++b)
      for (std::size_t a = 0; a < cand[i - 1].size(); ++a)
        if (std::abs(cand[i][b] - cand[i - 1][a]) <= d[i - 1] + 1e-12)
          next[b] = std::max(next[b], best[a] + c[i] * cand[i][b]);
    best = std::move(next);
  }
  double m = 0.0;
  for (double v : best) m = std::max(m, v);
  return m;
}

// ---- random measure generators ----

inline bel::Measure random_atomic(bel::Rng& rng, int max_atoms = 4, double spread = 2.0) {
  const int k = 2 + static_cast<int>(rng.uniform01() * (max_atoms - 1));
  std::vector<bel::Atom> atoms;
  double total = 0.0;
  for (int i = 0; i < k; ++i) {
    const double w = 0.1 + rng.uniform01();
    atoms.push_back({(2.0 * rng.uniform01() - 1.0) * spread, w});
    total += w;
  }
  for (auto& a : atoms) a.w /= total;
  return bel::Measure::atomic(std::move(atoms));
}

// centered, variance-1 atomic measure with atoms kept away from 0
inline bel::Measure random_p02_atomic(bel::Rng& rng, int max_atoms = 4) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    bel::Measure m = random_atomic(rng, max_atoms);
    const double mu = bel::moment(m, 1);
    std::vector<bel::Atom> shifted = m.atoms();
    for (auto& a : shifted) a.x -= mu;
    bel::Measure centered = bel::Measure::atomic(std::move(shifted));
    const double v = bel::moment(centered, 2);
    if (!(v > 1e-4)) continue;
    bel::Measure scaled = bel::dilate(centered, 1.0 / std::sqrt(v));
    bool ok = true;
    for (const auto& a : scaled.atoms())
      if (std::abs(a.x) < 0.2) ok = false;
    if (ok) return scaled;
  }
  return bel::Measure::atomic({{-1.0, 0.5}, {1.0, 0.5}});
}

// ---- Marsaglia-Tsang gamma sampler (rejection oracle helper) ----

inline double gamma_variate(bel::Rng& rng, double shape, double rate) {
  if (shape < 1.0) {
    const double u = rng.uniform01();
    return gamma_variate(rng, shape + 1.0, rate) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = rng.normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform01();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v / rate;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v / rate;
  }
}

}  // namespace testutil

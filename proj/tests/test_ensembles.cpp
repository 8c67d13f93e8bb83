#include <cmath>

#include "bel/ensembles.hpp"
#include "bel/entropy.hpp"
#include "bel/errors.hpp"
#include "bel/measure.hpp"
#include "bel/verify.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace bel;

TEST_SUITE("ensembles") {

TEST_CASE("wishart p=1 n=1: squared singular value is exponential(1)") {
  double sum = 0.0;
  const int reps = 10000;
  for (int seed = 0; seed < reps; ++seed) {
    const auto s = sample_wishart_block({1, 1, static_cast<std::uint64_t>(seed)});
    const double v = s.singular_values.points()[0];
    sum += v * v;
  }
  CHECK(std::abs(sum / reps - 1.0) <= 0.05);
}

TEST_CASE("wishart p=30 n=3000 concentrates near delta_1") {
  const auto s = sample_wishart_block({30, 3000, 12345});
  CHECK(d_bl(s.singular_values, Measure::dirac(1.0)) < 0.1);
  // the empirical rates at the concentration point are near their minima
  CHECK(rate_jplus(s.singular_values).normalized < 0.05);
  CHECK(rate_isym(s.reflected).normalized < 0.05);
}

TEST_CASE("wishart reflected measure: odd moments vanish exactly, trace identity") {
  const auto s = sample_wishart_block({8, 64, 7});
  for (int k : {1, 3, 5, 7}) CHECK(moment(s.reflected, k) == 0.0);
  for (int m : {1, 2, 3}) {
    const double lhs = moment(s.reflected, 2 * m);
    const double rhs = moment(s.singular_values, 2 * m);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-14));
  }
}

TEST_CASE("wishart determinism and validation") {
  const auto a = sample_wishart_block({5, 20, 99});
  const auto b = sample_wishart_block({5, 20, 99});
  for (std::size_t i = 0; i < 5; ++i)
    CHECK(a.singular_values.points()[i] == b.singular_values.points()[i]);
  CHECK_THROWS_AS(sample_wishart_block({10, 5, 1}), domain_error);
}

TEST_CASE("conditioned gue M=1: |lambda| concentrates near sqrt2") {
  std::vector<double> absolutes;
  ConditionedGueConfig cfg{1, 500, 11, {500, 1000, 0.3, true}};
  sample_conditioned_gue(cfg, [&](std::span<const double> lam) {
    absolutes.push_back(std::abs(lam[0]));
  });
  REQUIRE(absolutes.size() == 1000);
  double mean_abs = 0.0;
  for (double a : absolutes) mean_abs += a;
  mean_abs /= static_cast<double>(absolutes.size());
  CHECK(std::abs(mean_abs - std::sqrt(2.0)) < 0.05);
}

TEST_CASE("conditioned gue M=20 N=1000 lands near the minimizer set") {
  ConditionedGueConfig cfg{20, 1000, 21, {2000, 500, 0.5, true}};
  const auto s = sample_conditioned_gue(cfg);
  CHECK(d_bl_to_m0(s.empirical) < 0.1);
  CHECK(s.warnings.empty());
}

TEST_CASE("conditioned gue determinism") {
  ConditionedGueConfig cfg{4, 64, 5, {200, 100, 0.5, true}};
  const auto a = sample_conditioned_gue(cfg);
  const auto b = sample_conditioned_gue(cfg);
  for (std::size_t i = 0; i < 4; ++i)
    CHECK(a.empirical.points()[i] == b.empirical.points()[i]);
}

TEST_CASE("solve_theta") {
  const auto t = solve_theta(10, 1000);
  CHECK(std::abs(t.theta * t.theta - 0.0336) <= 1e-3);
  // residual invariant restated
  const double t2 = t.theta * t.theta;
  CHECK(t.residual <= 1e-9 * 1000.0 * 10.0 * t2);
  // independent fixed-point oracle on theta^2 = 0.01 log(1/theta^2)
  double x = 0.01;
  for (int i = 0; i < 200; ++i) x = 0.01 * std::log(1.0 / x);
  CHECK(t2 == doctest::Approx(x).epsilon(1e-6));

  CHECK_THROWS_AS(solve_theta(10, 10), domain_error);

  // theta decreases toward 0 along N = M^3
  double prev = 1.0;
  for (int M : {5, 10, 20, 40}) {
    const double th = solve_theta(M, M * M * M).theta;
    CHECK(th < prev);
    prev = th;
  }
}

TEST_CASE("scaled_pair splits by sign and rescales") {
  const double r2 = std::sqrt(2.0);
  {
    std::vector<double> lam(6, r2);
    const auto r = scaled_pair(lam, 6, 600);
    CHECK(r.pair.m0 == 6);
    CHECK(r.alpha_measure.mass() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(r.beta_measure.empty());
    for (double a : r.pair.alpha_points) CHECK(a == 0.0);
  }
  {
    const double theta = solve_theta(2, 200).theta;
    std::vector<double> lam{r2 + theta, -r2 - theta};
    const auto r = scaled_pair(lam, 2, 200);
    REQUIRE(r.pair.alpha_points.size() == 1);
    REQUIRE(r.pair.beta_points.size() == 1);
    CHECK(r.pair.alpha_points[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.pair.beta_points[0] == doctest::Approx(-1.0).epsilon(1e-12));
  }
  {
    // lambda = 0 counts to the alpha side
    std::vector<double> lam{0.0, -1.0};
    const auto r = scaled_pair(lam, 2, 200);
    CHECK(r.pair.m0 == 1);
  }
}

TEST_CASE("rate_pair of scaled pairs never beats the minimizer") {
  const SubMeasure half0 = SubMeasure::atomic({{0.0, 0.5}});
  const double floor = rate_pair(half0, half0).raw;
  for (int seed = 0; seed < 5; ++seed) {
    ConditionedGueConfig cfg{10, 500, static_cast<std::uint64_t>(seed), {500, 200, 0.5, true}};
    const auto s = sample_conditioned_gue(cfg);
    const auto sp = scaled_pair(s.empirical.points(), 10, 500);
    CHECK(rate_pair(sp.alpha_measure, sp.beta_measure).raw >= floor - 1e-12);
  }
}

}  // TEST_SUITE

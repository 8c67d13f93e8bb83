#include <cmath>

#include "bel/booleanclt.hpp"
#include "bel/entropy.hpp"
#include "bel/errors.hpp"
#include "bel/laws.hpp"
#include "bel/measure.hpp"
#include "bel/rng.hpp"
#include "bel/transforms.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace bel;

namespace {

Measure rademacher() { return Measure::atomic({{-1.0, 0.5}, {1.0, 0.5}}); }

// base semicircle standardized so the trapezoid moments meet the P_0^2 gate
Measure standardized_semicircle(double dx = 0.005) {
  const int half = static_cast<int>(std::lround(2.2 / dx));
  Measure sc = make_law(LawSpec::semicircle(), {-dx * half, dx, 2 * half + 1});
  return dilate(sc, 1.0 / std::sqrt(moment(sc, 2)));
}

// two-atom centered unit-variance measure p delta_a + (1-p) delta_b
Measure two_atom_p02(double p) {
  const double a = std::sqrt((1.0 - p) / p);
  const double b = -std::sqrt(p / (1.0 - p));
  return Measure::atomic({{b, 1.0 - p}, {a, p}});
}

}  // namespace

TEST_SUITE("booleanclt") {

TEST_CASE("semigroup evaluator validates P_0^2 and t >= 1") {
  CHECK_THROWS_AS(SemigroupEvaluator(Measure::dirac(1.0), 2.0), domain_error);
  CHECK_THROWS_AS(SemigroupEvaluator(rademacher(), 0.5), domain_error);
  CHECK_NOTHROW(SemigroupEvaluator(rademacher(), 1.0));
}

TEST_CASE("rademacher is a fixed point of the semigroup transform") {
  for (double t : {1.0, 2.0, 7.5, 16.0}) {
    const SemigroupEvaluator s(rademacher(), t);
    const Complex z(0.0, 2.0);
    const Complex want = z / (z * z - 1.0);
    CHECK(std::abs(mu_t_cauchy(s, z) - want) <= 1e-12);
  }
}

TEST_CASE("t = 1 reproduces the base transform") {
  Rng rng(83);
  const Measure m = testutil::random_p02_atomic(rng);
  const SemigroupEvaluator s(m, 1.0);
  for (int i = 0; i < 10; ++i) {
    const Complex z(3.0 * (rng.uniform01() - 0.5), 0.2 + 2.0 * rng.uniform01());
    CHECK(std::abs(mu_t_cauchy(s, z) - cauchy_transform(m, z)) <= 1e-12);
  }
}

TEST_CASE("t = 2 matches the two-fold boolean convolution of the dilated base") {
  Rng rng(89);
  const Measure base = two_atom_p02(0.3);
  const Measure d = dilate(base, 1.0 / std::sqrt(2.0));
  const Measure conv = boolean_convolve(d, d);
  const SemigroupEvaluator s(base, 2.0);
  for (int i = 0; i < 10; ++i) {
    const Complex z(3.0 * (rng.uniform01() - 0.5), 0.3 + 2.0 * rng.uniform01());
    CHECK(std::abs(mu_t_cauchy(s, z) - cauchy_transform(conv, z)) <= 1e-10);
  }
}

TEST_CASE("mu_t_measure: rademacher base gives bumps at +-1, P_0^2 within 2e-2") {
  const SemigroupEvaluator s(rademacher(), 5.0);
  const Measure m = mu_t_measure(s, {-3.0, 0.005, 1201});
  CHECK(std::abs(moment(m, 1)) <= 2e-2);
  CHECK(std::abs(moment(m, 2) - 1.0) <= 2e-2);
  CHECK(d_bl(m, rademacher()) <= 5e-2);
}

TEST_CASE("mu_t_measure: semicircle base approaches rademacher at large t") {
  const Measure base = standardized_semicircle();
  const SemigroupEvaluator s(base, 1e4);
  const Measure m = mu_t_measure(s, {-3.0, 0.004, 1501});
  CHECK(d_bl(m, rademacher()) < 0.05);
}

TEST_CASE("mu_t_measure: semicircle base keeps variance 1 across t") {
  const Measure base = standardized_semicircle();
  for (double t : {1.0, 2.0, 5.0}) {
    const SemigroupEvaluator s(base, t);
    const Measure m = mu_t_measure(s, {-3.5, 0.005, 1401});
    CHECK(std::abs(variance(m) - 1.0) <= 2e-2);
  }
}

TEST_CASE("semigroup law through density recovery") {
  const Measure base = standardized_semicircle();
  for (auto [s_t, t_t] : {std::pair{2.0, 4.0}, std::pair{2.0, 8.0}}) {
    const SemigroupEvaluator s2(base, s_t);
    const Measure mid = mu_t_measure(s2, {-3.5, 0.005, 1401});
    // recenter (grid origin shift) and rescale so the P_0^2 gate accepts
    const Measure recentered =
        Measure::grid_density(mid.x0() - mean(mid), mid.dx(), mid.values());
    const Measure mid_std = dilate(recentered, 1.0 / std::sqrt(moment(recentered, 2)));
    const SemigroupEvaluator chained(mid_std, t_t / s_t);
    const SemigroupEvaluator direct(base, t_t);
    Rng rng(97);
    for (int i = 0; i < 5; ++i) {
      const Complex z(2.0 * (rng.uniform01() - 0.5), 0.5 + rng.uniform01());
      CHECK(std::abs(mu_t_cauchy(chained, z) - mu_t_cauchy(direct, z)) <= 2e-2);
    }
  }
}

TEST_CASE("gamma curve: rademacher base is exactly constant 0") {
  const SemigroupEvaluator s(rademacher(), 1.0);
  std::vector<double> ts;
  for (int t = 1; t <= 16; ++t) ts.push_back(t);
  const auto curve = gamma_curve(s, ts);
  for (const auto& [t, g] : curve) CHECK(std::abs(g) <= 1e-9);
}

TEST_CASE("gamma curve: semicircle base increases from -1 toward 0") {
  const Measure base = standardized_semicircle();
  const SemigroupEvaluator s(base, 1.0);
  const auto curve = gamma_curve(s, {1.0, 2.0, 4.0, 8.0, 16.0});
  CHECK(curve.front().second == doctest::Approx(-1.0).epsilon(2e-2));
  for (std::size_t i = 1; i < curve.size(); ++i)
    CHECK(curve[i].second > curve[i - 1].second - 5e-3);
  CHECK(curve.back().second > curve.front().second + 0.3);
}

TEST_CASE("gamma curve: atomic base goes through the exact rational route") {
  const Measure base = two_atom_p02(0.3);
  const auto curve = gamma_curve(SemigroupEvaluator(base, 1.0), {1.0, 2.0, 4.0});
  CHECK(curve[0].second == doctest::Approx(gamma_entropy(base)).epsilon(1e-12));
  // t = 2 equals the dilated two-fold convolution's entropy
  const Measure d = dilate(base, 1.0 / std::sqrt(2.0));
  const Measure conv = boolean_convolve(d, d);
  CHECK(curve[1].second == doctest::Approx(gamma_entropy(conv)).epsilon(1e-10));
  for (std::size_t i = 1; i < curve.size(); ++i) CHECK(curve[i].second >= curve[i - 1].second - 1e-12);
}

TEST_CASE("ell function") {
  CHECK(ell(-1.0) == 0.0);
  CHECK(ell(1.0) == doctest::Approx(4.0).epsilon(1e-12));
  const double e = std::exp(1.0);
  CHECK(ell(e) == doctest::Approx((e + 1.0) / (e - 1.0) * 2.0).epsilon(1e-14));
  CHECK(std::isinf(ell(0.0)));
  // nonnegative on a dense probe; local minima structure at -1 and 1
  for (int i = -4000; i <= 4000; ++i) {
    const double x = i / 1000.0;
    if (x == 0.0) continue;
    CHECK(ell(x) >= 0.0);
  }
  CHECK(ell(1.0 + 1e-7) > 4.0 - 1e-6);
  CHECK(ell(1.0 - 1e-7) > 4.0 - 1e-6);
}

TEST_CASE("gamma_prime_1: rademacher sits at the equality case") {
  CHECK(std::abs(gamma_prime_1(rademacher())) <= 1e-12);
}

TEST_CASE("gamma_prime_1: exact four-term sum for a two-atom measure") {
  const double p = 0.3;
  const Measure m = two_atom_p02(p);
  const double a = m.atoms()[1].x, b = m.atoms()[0].x;
  const double wa = p, wb = 1.0 - p;
  const double oracle =
      0.5 * (wa * wa * ell(1.0) + wb * wb * ell(1.0) + wa * wb * ell(a / b) + wb * wa * ell(b / a)) -
      1.0;
  CHECK(gamma_prime_1(m) == doctest::Approx(oracle).epsilon(1e-12));
  CHECK(oracle > 0.0);
}

TEST_CASE("gamma_prime_1: nonnegativity on random P_0^2 atomics") {
  Rng rng(101);
  for (int i = 0; i < 200; ++i) {
    const Measure m = testutil::random_p02_atomic(rng);
    CHECK(gamma_prime_1(m) >= -1e-6);
  }
}

TEST_CASE("gamma_prime_1: semicircle matches the forward difference of the curve") {
  const Measure base = standardized_semicircle();
  const double gp = gamma_prime_1(base);
  const auto curve = gamma_curve(SemigroupEvaluator(base, 1.0), {1.0, 1.01});
  const double fd = (curve[1].second - curve[0].second) / 0.01;
  CHECK(std::abs(gp - fd) <= 5e-2);
  CHECK(gp > 0.0);
}

TEST_CASE("gamma_prime_1 rejects mass at 0") {
  CHECK_THROWS_AS(
      gamma_prime_1(Measure::atomic({{-std::sqrt(2.0), 0.5}, {0.0, 1e-3}, {std::sqrt(2.0), 0.4990}})),
      domain_error);
}

TEST_CASE("maximality: gamma entropy of unit-second-moment atomics is nonpositive") {
  Rng rng(103);
  for (int i = 0; i < 1000; ++i) {
    Measure m = testutil::random_atomic(rng);
    const double m2 = moment(m, 2);
    if (!(m2 > 1e-6)) continue;
    m = dilate(m, 1.0 / std::sqrt(m2));
    const double g = gamma_entropy(m);
    CHECK(g <= 1e-12);
  }
  CHECK(std::abs(gamma_entropy(rademacher())) <= 1e-12);
}

}  // TEST_SUITE

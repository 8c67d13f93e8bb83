#include <cmath>

#include "bel/errors.hpp"
#include "bel/laws.hpp"
#include "bel/measure.hpp"
#include "bel/rng.hpp"
#include "bel/transforms.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace bel;

TEST_SUITE("laws") {

TEST_CASE("atomic laws") {
  const Measure r = make_law(LawSpec::rademacher(), {0, 1, 2});
  CHECK(r.atoms()[0].x == -1.0);
  CHECK(r.atoms()[1].x == 1.0);
  CHECK(r.atoms()[0].w == 0.5);
  const Measure h = make_law(LawSpec::mu_half(), {0, 1, 2});
  CHECK(h.atoms()[1].x == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("p_alpha(1) equals the semicircle pointwise") {
  const GridSpec grid{-2.5, 0.001, 5001};
  const Measure p1 = make_law(LawSpec::p_alpha(1.0), grid);
  const Measure sc = make_law(LawSpec::semicircle(), grid);
  double sup = 0.0;
  for (std::size_t i = 0; i < p1.node_count(); ++i)
    sup = std::max(sup, std::abs(p1.values()[i] - sc.values()[i]));
  CHECK(sup <= 1e-8);
}

TEST_CASE("p_alpha pre-normalization mass stays within 1e-3 at step 1e-4") {
  for (int ai = 1; ai <= 10; ++ai) {
    const double alpha = 0.1 * ai;
    const double g2 = p_alpha_edge_outer(alpha);
    const double dx = 1e-4;
    const int half = static_cast<int>(std::ceil((g2 + 0.02) / dx));
    const Measure p = make_law(LawSpec::p_alpha(alpha),
                               {-dx * half, dx, 2 * half + 1});
    CHECK(std::abs(p.raw_mass() - 1.0) <= 1e-3);
  }
}

TEST_CASE("p_alpha is even by construction") {
  Rng rng(37);
  for (int i = 0; i < 2000; ++i) {
    const double x = 4.4 * (rng.uniform01() - 0.5);
    CHECK(p_alpha_density(0.37, x) == p_alpha_density(0.37, -x));
  }
}

TEST_CASE("p_alpha edge identities") {
  for (double alpha : {0.1, 0.25, 0.5, 0.75, 1.0}) {
    const double g1sq = p_alpha_edge_inner(alpha) * p_alpha_edge_inner(alpha);
    const double g2sq = p_alpha_edge_outer(alpha) * p_alpha_edge_outer(alpha);
    CHECK(std::abs(g1sq + g2sq - 4.0) <= 1e-12);
    CHECK(std::abs(g1sq * g2sq - 4.0 * (alpha - 1.0) * (alpha - 1.0)) <= 1e-12);
  }
}

TEST_CASE("p_alpha moments: m2 = 2 - alpha, MuHalf limit") {
  // closed forms frozen from the u = x^2 substitution of the band integral
  for (double alpha : {1e-3, 0.25, 0.5, 1.0}) {
    const double g2 = p_alpha_edge_outer(alpha);
    const double g1 = p_alpha_edge_inner(alpha);
    const double dx = std::min(1e-4, (g2 - g1) / 200.0);
    const int half = static_cast<int>(std::ceil((g2 + 0.02) / dx));
    const Measure p = make_law(LawSpec::p_alpha(alpha), {-dx * half, dx, 2 * half + 1});
    CHECK(moment(p, 2) == doctest::Approx(2.0 - alpha).epsilon(1e-3));
    CHECK(moment(p, 4) == doctest::Approx(4.0 - 2.0 * alpha).epsilon(1e-3));
  }
  // alpha -> 0 recovers the MuHalf moments (2, 4) within 1e-2
  const double alpha = 1e-3;
  const double g2 = p_alpha_edge_outer(alpha);
  const double g1 = p_alpha_edge_inner(alpha);
  const double dx = (g2 - g1) / 400.0;
  const int half = static_cast<int>(std::ceil((g2 + 0.02) / dx));
  const Measure p = make_law(LawSpec::p_alpha(alpha), {-dx * half, dx, 2 * half + 1});
  CHECK(std::abs(moment(p, 2) - 2.0) <= 1e-2);
  CHECK(std::abs(moment(p, 4) - 4.0) <= 1e-2);
}

TEST_CASE("marchenko-pastur support and mass") {
  const auto s1 = support(LawSpec::marchenko_pastur(1.0));
  CHECK(s1[0].first == 0.0);
  CHECK(s1[0].second == 4.0);
  const Measure nu1 = make_law(LawSpec::marchenko_pastur(1.0), {0.0, 1e-3, 4301});
  CHECK(std::abs(nu1.raw_mass() - 1.0) <= 5e-3);
  CHECK(moment(nu1, 1) == doctest::Approx(1.0).epsilon(2e-3));

  const Measure nu_half = make_law(LawSpec::marchenko_pastur(0.5), {0.0, 1e-3, 3501});
  CHECK(std::abs(nu_half.raw_mass() - 1.0) <= 1e-4);
  CHECK(moment(nu_half, 1) == doctest::Approx(1.0).epsilon(1e-3));
  CHECK_THROWS_AS(make_law(LawSpec::marchenko_pastur(1.5), {0.0, 1e-3, 5001}), domain_error);
}

TEST_CASE("support sets") {
  const auto sc = support(LawSpec::semicircle());
  CHECK(sc.size() == 1);
  CHECK(sc[0].first == -2.0);
  CHECK(sc[0].second == 2.0);
  const auto ra = support(LawSpec::rademacher());
  CHECK(ra.size() == 2);
  CHECK(ra[0].first == -1.0);
  const auto pa = support(LawSpec::p_alpha(0.5));
  CHECK(pa.size() == 2);
  CHECK(pa[1].first == doctest::Approx(p_alpha_edge_inner(0.5)).epsilon(1e-15));
}

TEST_CASE("p_alpha cauchy transform consistency at random upper half-plane points") {
  Rng rng(67);
  for (double alpha : {0.3, 0.6, 1.0}) {
    const double g2 = p_alpha_edge_outer(alpha);
    const double dx = 5e-4;
    const int half = static_cast<int>(std::ceil((g2 + 0.05) / dx));
    const Measure p = make_law(LawSpec::p_alpha(alpha), {-dx * half, dx, 2 * half + 1});
    for (int i = 0; i < 20; ++i) {
      const Complex z(5.0 * (rng.uniform01() - 0.5), 0.3 + 2.0 * rng.uniform01());
      const Complex closed = p_alpha_cauchy(alpha, z);
      CHECK(closed.imag() < 0.0);
      CHECK(std::abs(cauchy_transform(p, z) - closed) <= 1e-3);
    }
  }
}

TEST_CASE("law grid must cover the support") {
  CHECK_THROWS_AS(make_law(LawSpec::semicircle(), {-1.0, 0.01, 201}), domain_error);
}

}  // TEST_SUITE

#include "bel/laws.hpp"

#include <cmath>
#include <string>

#include "bel/errors.hpp"

namespace bel {

namespace {

constexpr double kPi = 3.14159265358979323846;
const double kSqrt2 = std::sqrt(2.0);

void check_unit_interval(double v, const char* name) {
  if (!(v > 0.0) || v > 1.0)
    throw domain_error(std::string(name) + " must lie in (0,1], got " + std::to_string(v));
}

}  // namespace

double semicircle_density(double x) {
  const double t = 4.0 - x * x;
  return t > 0.0 ? std::sqrt(t) / (2.0 * kPi) : 0.0;
}

double mp_density(double gamma, double t) {
  check_unit_interval(gamma, "gamma");
  const double sq = std::sqrt(gamma);
  const double a = (1.0 - sq) * (1.0 - sq);
  const double b = (1.0 + sq) * (1.0 + sq);
  // gamma = 1 has a = 0 and a 1/sqrt(t) blowup toward 0; make_law caps the
  // edge node by matching the exact cell mass
  if (t <= a || t >= b) return 0.0;
  return std::sqrt((t - a) * (b - t)) / (2.0 * kPi * gamma * t);
}

double p_alpha_edge_inner(double alpha) {
  check_unit_interval(alpha, "alpha");
  return std::sqrt(std::max(0.0, 2.0 - 2.0 * std::sqrt(2.0 * alpha - alpha * alpha)));
}

double p_alpha_edge_outer(double alpha) {
  check_unit_interval(alpha, "alpha");
  return std::sqrt(2.0 + 2.0 * std::sqrt(2.0 * alpha - alpha * alpha));
}

double p_alpha_density(double alpha, double x) {
  check_unit_interval(alpha, "alpha");
  const double s = std::sqrt(2.0 * alpha - alpha * alpha);
  const double g1sq = 2.0 - 2.0 * s;
  const double g2sq = 2.0 + 2.0 * s;
  const double xx = x * x;
  const double t2 = g2sq - xx;
  if (t2 <= 0.0) return 0.0;
  if (g1sq <= 1e-15) {
    // alpha = 1: sqrt(x^2 - 0)/|x| cancels, leaving the semicircle form
    return std::sqrt(t2) / (2.0 * kPi * alpha);
  }
  const double t1 = xx - g1sq;
  if (t1 <= 0.0) return 0.0;
  return std::sqrt(t1) * std::sqrt(t2) / (2.0 * kPi * alpha * std::abs(x));
}

Complex p_alpha_cauchy(double alpha, Complex z) {
  check_unit_interval(alpha, "alpha");
  if (!(z.imag() > 0.0)) throw domain_error("p_alpha_cauchy requires Im z > 0");
  const double s = std::sqrt(2.0 * alpha - alpha * alpha);
  const double a = 2.0 - 2.0 * s;
  const double b = 2.0 + 2.0 * s;
  const Complex z2 = z * z;
  const Complex root = z2 * std::sqrt(1.0 - a / z2) * std::sqrt(1.0 - b / z2);
  return (z2 - 2.0 * (1.0 - alpha) - root) / (2.0 * alpha * z);
}

Measure make_law(const LawSpec& spec, const GridSpec& grid) {
  switch (spec.kind) {
    case LawKind::Rademacher:
      return Measure::atomic({{-1.0, 0.5}, {1.0, 0.5}});
    case LawKind::MuHalf:
      return Measure::atomic({{-kSqrt2, 0.5}, {kSqrt2, 0.5}});
    default:
      break;
  }
  if (grid.count < 2 || !(grid.dx > 0.0)) throw domain_error("invalid law grid");
  const double lo = grid.x0;
  const double hi = grid.x0 + static_cast<double>(grid.count - 1) * grid.dx;
  for (const auto& [slo, shi] : support(spec)) {
    if (slo < lo || shi > hi)
      throw domain_error("law grid does not cover the support");
  }
  std::vector<double> vals(static_cast<std::size_t>(grid.count));
  for (int i = 0; i < grid.count; ++i) {
    const double x = grid.x0 + static_cast<double>(i) * grid.dx;
    double v = 0.0;
    switch (spec.kind) {
      case LawKind::Semicircle:
        v = semicircle_density(x);
        break;
      case LawKind::MarchenkoPastur:
        v = mp_density(spec.gamma, x);
        break;
      case LawKind::PAlpha:
        v = p_alpha_density(spec.alpha, x);
        break;
      default:
        break;
    }
    vals[static_cast<std::size_t>(i)] = v;
  }
  if (spec.kind == LawKind::MarchenkoPastur && spec.gamma == 1.0) {
    // gamma = 1 has a 1/sqrt(t) edge at 0. Cap the edge nodes so the
    // trapezoid mass of the straddling cell matches the exact integral
    // int_0^{xr} sqrt(4-t)/(2 pi sqrt(t)) dt (u = sqrt(t) substitution),
    // without putting positive density on a negative node.
    for (int i = 0; i + 1 < grid.count; ++i) {
      const double xl = grid.x0 + static_cast<double>(i) * grid.dx;
      const double xr = xl + grid.dx;
      if (xl <= 0.0 && xr > 0.0) {
        const double u = std::sqrt(xr);
        const double cellmass =
            (u * std::sqrt(std::max(0.0, 4.0 - u * u)) + 4.0 * std::asin(u / 2.0)) / (2.0 * kPi);
        const std::size_t il = static_cast<std::size_t>(i);
        if (xl == 0.0) {
          vals[il] = std::max(0.0, 2.0 * cellmass / grid.dx - vals[il + 1]);
        } else {
          vals[il] = 0.0;
          vals[il + 1] = 2.0 * cellmass / grid.dx;
        }
        break;
      }
    }
  }
  return Measure::grid_density(grid.x0, grid.dx, std::move(vals));
}

std::vector<std::pair<double, double>> support(const LawSpec& spec) {
  switch (spec.kind) {
    case LawKind::Rademacher:
      return {{-1.0, -1.0}, {1.0, 1.0}};
    case LawKind::MuHalf:
      return {{-kSqrt2, -kSqrt2}, {kSqrt2, kSqrt2}};
    case LawKind::Semicircle:
      return {{-2.0, 2.0}};
    case LawKind::MarchenkoPastur: {
      check_unit_interval(spec.gamma, "gamma");
      const double sq = std::sqrt(spec.gamma);
      return {{(1.0 - sq) * (1.0 - sq), (1.0 + sq) * (1.0 + sq)}};
    }
    case LawKind::PAlpha: {
      const double g1 = p_alpha_edge_inner(spec.alpha);
      const double g2 = p_alpha_edge_outer(spec.alpha);
      if (g1 == 0.0) return {{-g2, g2}};
      return {{-g2, -g1}, {g1, g2}};
    }
  }
  throw domain_error("unreachable");
}

}  // namespace bel

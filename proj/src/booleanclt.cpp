#include "bel/booleanclt.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "bel/entropy.hpp"
#include "bel/errors.hpp"

namespace bel {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_p02(const Measure& m) {
  if (std::abs(moment(m, 1)) > 1e-8)
    throw domain_error("semigroup base must have mean 0");
  if (std::abs(moment(m, 2) - 1.0) > 1e-8)
    throw domain_error("semigroup base must have variance 1");
}

}  // namespace

SemigroupEvaluator::SemigroupEvaluator(Measure base_measure, double time)
    : base(std::move(base_measure)), t(time) {
  require_p02(base);
  if (!(t >= 1.0)) throw domain_error("semigroup time must be >= 1");
}

Complex mu_t_cauchy(const SemigroupEvaluator& s, Complex z) {
  if (!(z.imag() > 0.0)) throw domain_error("mu_t_cauchy requires Im z > 0");
  const double rt = std::sqrt(s.t);
  const Complex k = k_transform(s.base, rt * z);
  const Complex den = z - rt * k;
  if (std::abs(den) <= 1e-300) throw numerical_error("singular semigroup transform");
  return 1.0 / den;
}

namespace detail {

Measure mu_t_atomic(const Measure& base, double t) {
  // G_t = P(rt z) / ((1-t) z P(rt z) + rt Q(rt z)) with G_base = P/Q
  Poly p, q;
  cauchy_rational(base, p, q);
  const double rt = std::sqrt(t);
  const Poly ps = poly_compose_scale(p, rt);
  const Poly qs = poly_compose_scale(q, rt);
  Poly zps;
  zps.c.assign(ps.c.size() + 1, 0.0);
  for (std::size_t i = 0; i < ps.c.size(); ++i) zps.c[i + 1] = ps.c[i];
  const Poly den = poly_add(poly_scale(zps, 1.0 - t), poly_scale(qs, rt));
  return atomic_from_cauchy_rational(ps, den);
}

}  // namespace detail

Measure mu_t_measure(const SemigroupEvaluator& s, const GridSpec& grid, Exec exec) {
  const auto g = [&s](Complex z) { return mu_t_cauchy(s, z); };
  Measure out = stieltjes_invert(g, grid.x0, grid.dx, grid.count, {0.1, 0.05, 0.025}, exec);
  const double m1 = moment(out, 1);
  const double m2 = moment(out, 2);
  if (std::abs(m1) > 2e-2 || std::abs(m2 - m1 * m1 - 1.0) > 2e-2)
    throw numerical_error("recovered mu_t strays from P_0^2: mean " + std::to_string(m1) +
                          ", var " + std::to_string(m2 - m1 * m1));
  return out;
}

std::vector<std::pair<double, double>> gamma_curve(const SemigroupEvaluator& s,
                                                   const std::vector<double>& ts, Exec exec) {
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (!(ts[i] >= 1.0)) throw domain_error("gamma_curve times must be >= 1");
    if (i > 0 && !(ts[i] >= ts[i - 1])) throw domain_error("gamma_curve times must be sorted");
  }
  std::vector<std::pair<double, double>> out(ts.size());
  const bool atomic = s.base.is_atomic() || s.base.is_empirical();
  if (atomic) {
    for_each_index(ts.size(), exec, [&](std::size_t i) {
      out[i] = {ts[i], gamma_entropy(detail::mu_t_atomic(s.base, ts[i]))};
    });
  } else {
    // internal inversion grid with margin around the base support
    const double bound = std::max(std::abs(s.base.support_min()),
                                  std::abs(s.base.support_max()));
    const double half = std::max(4.0, 2.0 * bound);
    const int count = 1601;
    const double dx = 2.0 * half / static_cast<double>(count - 1);
    for_each_index(ts.size(), exec, [&](std::size_t i) {
      const SemigroupEvaluator st(s.base, ts[i]);
      const auto g = [&st](Complex z) { return mu_t_cauchy(st, z); };
      const Measure mt =
          stieltjes_invert(g, -half, dx, count, {0.1, 0.05, 0.025}, Exec::Serial);
      out[i] = {ts[i], gamma_entropy(mt)};
    });
  }
  return out;
}

double ell(double x) {
  if (x == 0.0) return kInf;
  if (x == -1.0) return 0.0;
  const double d = x - 1.0;
  if (std::abs(d) < 1e-6) {
    // (x+1) * 2 log(1+d)/d, stable continuation through ell(1) = 4
    const double ratio = d == 0.0 ? 1.0 : std::log1p(d) / d;
    return (x + 1.0) * 2.0 * ratio;
  }
  return (x + 1.0) / d * std::log(x * x);
}

double gamma_prime_1(const Measure& m, Exec exec) {
  require_p02(m);
  if (m.is_atomic() || m.is_empirical()) {
    std::vector<Atom> atoms;
    if (m.is_atomic()) {
      atoms = m.atoms();
    } else {
      const double w = 1.0 / static_cast<double>(m.points().size());
      for (double p : m.points()) atoms.push_back({p, w});
    }
    for (const Atom& a : atoms)
      if (std::abs(a.x) <= 1e-6 && a.w > 1e-6)
        throw domain_error("gamma_prime_1: mass at 0 makes X/Y undefined");
    double e = 0.0;
    for (const Atom& ax : atoms)
      for (const Atom& ay : atoms) e += ax.w * ay.w * ell(ax.x / ay.x);
    return 0.5 * e - 1.0;
  }
  if (!m.is_grid()) throw domain_error("gamma_prime_1 needs atomic or grid input");
  const auto& v = m.values();
  const std::size_t ncell = v.size() - 1;
  const double h = m.dx();
  std::vector<double> xm(ncell), cm(ncell);
  for (std::size_t i = 0; i < ncell; ++i) {
    xm[i] = m.node(i) + 0.5 * h;
    cm[i] = 0.5 * (v[i] + v[i + 1]) * h;
  }
  const auto density_at = [&](double y) -> double {
    const double t = (y - m.x0()) / h;
    if (t <= 0.0 || t >= static_cast<double>(v.size() - 1)) return 0.0;
    const std::size_t i = static_cast<std::size_t>(t);
    const double f = t - static_cast<double>(i);
    return (1.0 - f) * v[i] + f * v[i + 1];
  };
  // The strip hugging 0 is integrated in log coordinates (u = log|y|, where
  // ell(x/y) varies slowly) and the rest by cell midpoints. The strip edges
  // are snapped to actual cell boundaries so the two regions partition the
  // line exactly whatever the grid alignment.
  const double x0 = m.x0();
  const double bpos = x0 + std::ceil((2.0 * h - x0) / h) * h;
  const double bneg = x0 + std::floor((-2.0 * h - x0) / h) * h;
  const auto in_strip = [&](std::size_t j) { return xm[j] > bneg && xm[j] < bpos; };
  // int over (0, bound) or (bound, 0) of f(y) g(y) dy, trapezoid in u
  const auto log_strip = [&](double bound, const std::function<double(double)>& g) {
    const double uhi = std::log(std::abs(bound));
    const double ulo = uhi - 36.0;
    const int nu = 160;
    const double du = (uhi - ulo) / nu;
    const double sign = bound > 0.0 ? 1.0 : -1.0;
    double acc = 0.0;
    for (int k = 0; k <= nu; ++k) {
      const double u = ulo + du * k;
      const double y = sign * std::exp(u);
      const double w = (k == 0 || k == nu) ? 0.5 : 1.0;
      acc += w * density_at(y) * g(y) * std::exp(u);
    }
    return acc * du;
  };
  const auto inner = [&](double x) -> double {
    double s = 0.0;
    for (std::size_t j = 0; j < ncell; ++j)
      if (!in_strip(j)) s += cm[j] * ell(x / xm[j]);
    const auto g = [&](double y) { return ell(x / y); };
    return s + log_strip(bpos, g) + log_strip(bneg, g);
  };
  std::vector<double> rows(ncell, 0.0);
  for_each_index(ncell, exec, [&](std::size_t i) {
    if (!in_strip(i)) rows[i] = cm[i] * inner(xm[i]);
  });
  double e = 0.0;
  for (double r : rows) e += r;
  const auto g_outer = [&](double x) { return inner(x); };
  e += log_strip(bpos, g_outer) + log_strip(bneg, g_outer);
  return 0.5 * e - 1.0;
}

}  // namespace bel

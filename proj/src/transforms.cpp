#include "bel/transforms.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <string>

#include "bel/errors.hpp"

namespace bel {

namespace {

void require_upper_half(Complex z) {
  if (!(z.imag() > 0.0)) throw domain_error("transform evaluation requires Im z > 0");
}

}  // namespace

Complex cauchy_transform(const Measure& m, Complex z) {
  require_upper_half(z);
  switch (m.kind()) {
    case Measure::Kind::Atomic: {
      Complex g = 0.0;
      for (const Atom& a : m.atoms()) g += a.w / (z - a.x);
      return g;
    }
    case Measure::Kind::Empirical: {
      Complex g = 0.0;
      for (double p : m.points()) g += 1.0 / (z - p);
      return g / static_cast<double>(m.points().size());
    }
    case Measure::Kind::GridDensity: {
      const auto& v = m.values();
      const std::size_t n = v.size();
      const double dx = m.dx();
      Complex g = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double wtrap = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
        g += wtrap * v[i] / (z - m.node(i));
      }
      return g * dx;
    }
  }
  throw domain_error("unreachable");
}

Complex k_transform(const Measure& m, Complex z) {
  const Complex g = cauchy_transform(m, z);
  if (std::abs(g) <= 1e-300) throw numerical_error("singular transform: G(z) vanished");
  return z - 1.0 / g;
}

CumulantSeries boolean_cumulants(const Measure& m, int order) {
  if (order < 1 || order > 32) throw domain_error("cumulant order must be in [1,32]");
  std::vector<double> mom(static_cast<std::size_t>(order) + 1);
  mom[0] = 1.0;
  for (int k = 1; k <= order; ++k) mom[static_cast<std::size_t>(k)] = moment(m, k);
  CumulantSeries s;
  s.b.resize(static_cast<std::size_t>(order));
  for (int n = 1; n <= order; ++n) {
    double bn = mom[static_cast<std::size_t>(n)];
    for (int k = 1; k < n; ++k) bn -= s.b[static_cast<std::size_t>(k - 1)] * mom[static_cast<std::size_t>(n - k)];
    s.b[static_cast<std::size_t>(n - 1)] = bn;
  }
  return s;
}

namespace detail {

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly r;
  r.c.assign(a.c.size() + b.c.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.c.size(); ++i)
    for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
  return r;
}

Poly poly_add(const Poly& a, const Poly& b) {
  Poly r;
  r.c.assign(std::max(a.c.size(), b.c.size()), 0.0);
  for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
  for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
  return r;
}

Poly poly_scale(const Poly& a, double s) {
  Poly r = a;
  for (double& x : r.c) x *= s;
  return r;
}

Poly poly_compose_scale(const Poly& p, double s) {
  Poly r = p;
  double f = 1.0;
  for (std::size_t i = 0; i < r.c.size(); ++i) {
    r.c[i] *= f;
    f *= s;
  }
  return r;
}

Complex poly_eval(const Poly& p, Complex z) {
  Complex r = 0.0;
  for (std::size_t i = p.c.size(); i-- > 0;) r = r * z + p.c[i];
  return r;
}

Poly poly_derivative(const Poly& p) {
  Poly r;
  if (p.c.size() <= 1) {
    r.c = {0.0};
    return r;
  }
  r.c.resize(p.c.size() - 1);
  for (std::size_t i = 1; i < p.c.size(); ++i) r.c[i - 1] = static_cast<double>(i) * p.c[i];
  return r;
}

void cauchy_rational(const Measure& m, Poly& num, Poly& den) {
  std::vector<Atom> atoms;
  if (m.is_atomic()) {
    atoms = m.atoms();
  } else if (m.is_empirical()) {
    const double w = 1.0 / static_cast<double>(m.points().size());
    double prev = std::numeric_limits<double>::quiet_NaN();
    for (double p : m.points()) {
      if (!atoms.empty() && p == prev) {
        atoms.back().w += w;
      } else {
        atoms.push_back({p, w});
        prev = p;
      }
    }
  } else {
    throw domain_error("rational Cauchy transform needs an atomic or empirical measure");
  }
  // den = prod (z - x_i), num = sum w_i prod_{j != i} (z - x_j)
  den.c = {1.0};
  for (const Atom& a : atoms) den = poly_mul(den, Poly{{-a.x, 1.0}});
  num.c = {0.0};
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    Poly t{{atoms[i].w}};
    for (std::size_t j = 0; j < atoms.size(); ++j) {
      if (j == i) continue;
      t = poly_mul(t, Poly{{-atoms[j].x, 1.0}});
    }
    num = poly_add(num, t);
  }
}

std::vector<Complex> poly_roots(const Poly& p) {
  // strip trailing zero coefficients, then companion-matrix eigenvalues
  std::vector<double> c = p.c;
  while (c.size() > 1 && c.back() == 0.0) c.pop_back();
  const int deg = static_cast<int>(c.size()) - 1;
  if (deg < 1) return {};
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(deg, deg);
  for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -c[static_cast<std::size_t>(i)] / c.back();
  for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, /*computeEigenvectors=*/false);
  std::vector<Complex> roots;
  roots.reserve(static_cast<std::size_t>(deg));
  for (int i = 0; i < deg; ++i) roots.push_back(es.eigenvalues()[i]);
  return roots;
}

Measure atomic_from_cauchy_rational(const Poly& num, const Poly& den) {
  const std::vector<Complex> poles = poly_roots(den);
  if (poles.empty()) throw numerical_error("rational transform has no poles");
  const Poly dden = poly_derivative(den);
  std::vector<Atom> atoms;
  atoms.reserve(poles.size());
  double total = 0.0;
  for (const Complex& p : poles) {
    if (std::abs(p.imag()) > 1e-8)
      throw numerical_error("inversion failure: non-real pole at Im = " +
                            std::to_string(p.imag()));
    const Complex r = poly_eval(num, p) / poly_eval(dden, p);
    double w = r.real();
    if (w < -1e-10)
      throw numerical_error("inversion failure: negative residue " + std::to_string(w));
    w = std::max(w, 0.0);
    if (w <= 1e-12) continue;  // spurious pole from a common num/den factor
    atoms.push_back({p.real(), w});
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-8)
    throw numerical_error("inversion failure: residues sum to " + std::to_string(total));
  return Measure::atomic(std::move(atoms));
}

}  // namespace detail

namespace {

bool atomic_like(const Measure& m) { return m.is_atomic() || m.is_empirical(); }

// polynomial extrapolation to eps = 0 (Neville); the Poisson-kernel bias is
// a power series in eps, so this is the right variable
double neville_to_zero(const std::vector<double>& eps, std::vector<double> f) {
  const std::size_t n = eps.size();
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t i = 0; i + level < n; ++i)
      f[i] = ((0.0 - eps[i + level]) * f[i] + (eps[i] - 0.0) * f[i + 1]) / (eps[i] - eps[i + level]);
  return f[0];
}

}  // namespace

Measure stieltjes_invert(const TransformFn& g, double x0, double dx, int count,
                         const std::vector<double>& eps_schedule, Exec exec) {
  if (count < 2) throw domain_error("stieltjes_invert needs at least two nodes");
  if (eps_schedule.size() < 2) throw domain_error("eps schedule needs at least two entries");
  for (std::size_t i = 0; i < eps_schedule.size(); ++i) {
    if (!(eps_schedule[i] > 0.0)) throw domain_error("eps schedule must be positive");
    if (i > 0 && !(eps_schedule[i] < eps_schedule[i - 1]))
      throw domain_error("eps schedule must be strictly decreasing");
  }
  std::vector<double> density(static_cast<std::size_t>(count));
  for_each_index(static_cast<std::size_t>(count), exec, [&](std::size_t i) {
    const double x = x0 + static_cast<double>(i) * dx;
    std::vector<double> f(eps_schedule.size());
    for (std::size_t k = 0; k < eps_schedule.size(); ++k) {
      const Complex gz = g(Complex(x, eps_schedule[k]));
      f[k] = -gz.imag() / 3.14159265358979323846;
    }
    density[i] = std::max(0.0, neville_to_zero(eps_schedule, std::move(f)));
  });
  double mass = 0.0;
  for (int i = 0; i + 1 < count; ++i)
    mass += 0.5 * (density[static_cast<std::size_t>(i)] + density[static_cast<std::size_t>(i) + 1]);
  mass *= dx;
  if (std::abs(mass - 1.0) > 0.2)
    throw numerical_error("inversion failure: extrapolated mass " + std::to_string(mass));
  return Measure::grid_density(x0, dx, std::move(density));
}

double hilbert_transform(const Measure& d, double x) {
  if (!d.is_grid()) throw domain_error("hilbert_transform needs a grid density");
  const double lo = d.x0();
  const double hi = d.node(d.node_count() - 1);
  if (!(x > lo && x < hi)) throw domain_error("hilbert_transform point outside grid");
  const double h = d.dx();
  const auto eval = [&](double y) -> double {
    const double t = (y - lo) / h;
    if (t <= 0.0 || t >= static_cast<double>(d.node_count() - 1)) return 0.0;
    const std::size_t i = static_cast<std::size_t>(t);
    const double f = t - static_cast<double>(i);
    return (1.0 - f) * d.values()[i] + f * d.values()[i + 1];
  };
  const long reach = std::lround(std::ceil(std::max(x - lo, hi - x) / h)) + 1;
  double s = 0.0;
  for (long k = 1; k <= reach; ++k) {
    const double kh = static_cast<double>(k) * h;
    s += (eval(x - kh) - eval(x + kh)) / static_cast<double>(k);
  }
  return s / 3.14159265358979323846;
}

Measure boolean_convolve(const Measure& a, const Measure& b, int order) {
  (void)order;  // exactness depth; the construction below is closed-form
  if (atomic_like(a) && atomic_like(b)) {
    detail::Poly pa, qa, pb, qb;
    detail::cauchy_rational(a, pa, qa);
    detail::cauchy_rational(b, pb, qb);
    // G = 1/(z - K_a - K_b) = Pa Pb / (Qa Pb + Qb Pa - z Pa Pb)
    const detail::Poly papb = detail::poly_mul(pa, pb);
    detail::Poly zpapb;
    zpapb.c.assign(papb.c.size() + 1, 0.0);
    for (std::size_t i = 0; i < papb.c.size(); ++i) zpapb.c[i + 1] = papb.c[i];
    const detail::Poly den = detail::poly_add(
        detail::poly_add(detail::poly_mul(qa, pb), detail::poly_mul(qb, pa)),
        detail::poly_scale(zpapb, -1.0));
    return detail::atomic_from_cauchy_rational(papb, den);
  }
  // density route: evaluate G pointwise and invert on an automatic grid
  const auto g = [&a, &b](Complex z) -> Complex {
    const Complex ka = k_transform(a, z);
    const Complex kb = k_transform(b, z);
    return 1.0 / (z - ka - kb);
  };
  const double lo = a.support_min() + b.support_min();
  const double hi = a.support_max() + b.support_max();
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo) + 2.0 + 0.25 * (hi - lo);
  const int count = 2001;
  const double dx = 2.0 * half / static_cast<double>(count - 1);
  return stieltjes_invert(g, mid - half, dx, count, {0.1, 0.05, 0.025});
}

}  // namespace bel

#include "bel/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bel/errors.hpp"
#include "bel/laws.hpp"
#include "json.hpp"

namespace bel {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kLog2 = std::log(2.0);

// antiderivatives with the removable singularity at 0 patched:
// E1' = 2 log|x|, E2' = 2 x log|x|, eta' = log|t|, psi'' = log|t|
double anti_E1(double x) { return x == 0.0 ? 0.0 : 2.0 * (x * std::log(std::abs(x)) - x); }
double anti_E2(double x) { return x == 0.0 ? 0.0 : x * x * std::log(std::abs(x)) - 0.5 * x * x; }
double anti_eta(double t) { return t == 0.0 ? 0.0 : t * std::log(std::abs(t)) - t; }
double anti_psi(double t) {
  return t == 0.0 ? 0.0 : 0.5 * t * t * std::log(std::abs(t)) - 0.75 * t * t;
}

// int over one grid cell of (piecewise-linear f) * 2 log|x|
double cell_log_x2(double xl, double xr, double fl, double fr) {
  const double s = (fr - fl) / (xr - xl);
  return (fl - s * xl) * (anti_E1(xr) - anti_E1(xl)) + s * (anti_E2(xr) - anti_E2(xl));
}

bool positive_support(const Measure& m) {
  switch (m.kind()) {
    case Measure::Kind::Atomic:
      return m.atoms().front().x > 0.0;
    case Measure::Kind::Empirical:
      return m.points().front() > 0.0;
    case Measure::Kind::GridDensity: {
      // a density edge touching 0 carries no mass at the point; positive
      // values at strictly negative nodes are real mass and are rejected
      for (std::size_t i = 0; i < m.node_count(); ++i)
        if (m.values()[i] > 0.0 && m.node(i) < 0.0) return false;
      return true;
    }
  }
  return false;
}

double jensen_checked(const Measure& m, double gamma_value) {
  if (gamma_value == -kInf) return gamma_value;
  const double bound = std::log(moment(m, 2));
  if (gamma_value > bound + 1e-6)
    throw numerical_error("gamma_entropy violates the Jensen bound");
  return gamma_value;
}

}  // namespace

double gamma_entropy(const Measure& m) {
  switch (m.kind()) {
    case Measure::Kind::Atomic: {
      double s = 0.0;
      for (const Atom& a : m.atoms()) {
        if (a.x == 0.0 && a.w > 0.0) return -kInf;
        if (a.w > 0.0) s += a.w * std::log(a.x * a.x);
      }
      return jensen_checked(m, s);
    }
    case Measure::Kind::Empirical: {
      double s = 0.0;
      for (double p : m.points()) {
        if (p == 0.0) return -kInf;
        s += std::log(p * p);
      }
      return jensen_checked(m, s / static_cast<double>(m.points().size()));
    }
    case Measure::Kind::GridDensity: {
      double s = 0.0;
      for (std::size_t i = 0; i + 1 < m.node_count(); ++i)
        s += cell_log_x2(m.node(i), m.node(i + 1), m.values()[i], m.values()[i + 1]);
      return jensen_checked(m, s);
    }
  }
  return 0.0;
}

double sigma_entropy(const Measure& m, Exec exec) {
  if (!m.is_grid()) return -kInf;  // any atom makes Sigma = -inf
  const auto& v = m.values();
  const std::size_t ncell = v.size() - 1;
  const double h = m.dx();
  // cell masses of the piecewise-linear density
  std::vector<double> cm(ncell);
  for (std::size_t i = 0; i < ncell; ++i) cm[i] = 0.5 * (v[i] + v[i + 1]) * h;
  // kernel(k) = (1/h^2) iint over cells at distance k of log|x-y|
  std::vector<double> kernel(ncell);
  for (std::size_t k = 0; k < ncell; ++k) {
    const double km = static_cast<double>(k) * h;
    kernel[k] =
        (anti_psi(km + h) - 2.0 * anti_psi(km) + anti_psi(km - h)) / (h * h);
  }
  std::vector<double> row(ncell);
  for_each_index(ncell, exec, [&](std::size_t i) {
    double s = 0.0;
    for (std::size_t j = 0; j < ncell; ++j) {
      const std::size_t k = i > j ? i - j : j - i;
      s += cm[j] * kernel[k];
    }
    row[i] = cm[i] * s;
  });
  double total = 0.0;
  for (double r : row) total += r;
  return total;
}

double classical_entropy(const Measure& m) {
  if (!m.is_grid()) throw domain_error("classical_entropy needs a grid density");
  const auto& v = m.values();
  const double h = m.dx();
  // closed form per cell: int u log u along the linear segment
  const auto H = [](double u) { return u <= 0.0 ? 0.0 : 0.5 * u * u * std::log(u) - 0.25 * u * u; };
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    const double fl = v[i], fr = v[i + 1];
    if (fl == fr) {
      s += fl > 0.0 ? h * fl * std::log(fl) : 0.0;
    } else {
      s += h * (H(fr) - H(fl)) / (fr - fl);
    }
  }
  return -s;
}

const char* rate_name_str(RateName n) {
  switch (n) {
    case RateName::Isym: return "Isym";
    case RateName::I: return "I";
    case RateName::Jplus: return "Jplus";
    case RateName::Jtilde: return "Jtilde";
    case RateName::Jgamma: return "Jgamma";
    case RateName::Ialpha: return "Ialpha";
    case RateName::IgammaV: return "IgammaV";
    case RateName::Ipair: return "Ipair";
  }
  return "?";
}

std::string rate_report_json(const RateReport& r) {
  nlohmann::json j;
  j["name"] = rate_name_str(r.name);
  j["raw"] = r.raw;
  j["normalizer"] = r.normalizer;
  j["normalized"] = r.normalized;
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  j["params"] = std::move(params);
  return j.dump();
}

namespace {

RateReport make_report(RateName name, double raw, double normalizer,
                       std::vector<std::pair<std::string, double>> params = {}) {
  return RateReport{name, raw, normalizer, raw - normalizer, std::move(params)};
}

}  // namespace

RateReport rate_isym(const Measure& m) {
  for (int k : {1, 3, 5})
    if (std::abs(moment(m, k)) > 1e-8)
      throw domain_error("rate_isym requires a symmetric measure");
  const double g = gamma_entropy(m);
  const double raw = g == -kInf ? kInf : moment(m, 2) - g;
  return make_report(RateName::Isym, raw, 1.0);
}

RateReport rate_i(const Measure& m) {
  const double g = gamma_entropy(m);
  const double raw = g == -kInf ? kInf : 0.5 * moment(m, 2) - g;
  return make_report(RateName::I, raw, 1.0 - kLog2);
}

RateReport rate_jplus(const Measure& m) {
  if (!positive_support(m)) throw domain_error("rate_jplus requires support in (0, inf)");
  const double g = gamma_entropy(m);
  const double raw = g == -kInf ? kInf : moment(m, 2) - g;
  return make_report(RateName::Jplus, raw, 1.0);
}

RateReport rate_jtilde(const Measure& m) {
  if (!positive_support(m)) throw domain_error("rate_jtilde requires support in (0, inf)");
  const double g = gamma_entropy(m);  // int log x = Gamma/2 on positive support
  const double raw = g == -kInf ? kInf : moment(m, 1) - 0.5 * g;
  return make_report(RateName::Jtilde, raw, 1.0);
}

namespace {

double jgamma_raw(const Measure& m, double gamma, Exec exec) {
  const double sig = sigma_entropy(m, exec);
  if (sig == -kInf) return kInf;
  const double m1 = moment(m, 1);
  double raw = gamma * (m1 - sig);
  if (gamma < 1.0) {
    const double g = gamma_entropy(m);  // int log x = Gamma/2 on positive support
    if (g == -kInf) return kInf;
    raw += (1.0 - gamma) * (m1 - 0.5 * g);
  }
  return raw;
}

double ialpha_raw(const Measure& m, double alpha, Exec exec) {
  // alpha I1 + (1-alpha) I2 = m2/2 - alpha Sigma - (1-alpha) Gamma
  const double sig = sigma_entropy(m, exec);
  if (sig == -kInf) return kInf;
  const double g = gamma_entropy(m);
  if (g == -kInf) return kInf;
  return 0.5 * moment(m, 2) - alpha * sig - (1.0 - alpha) * g;
}

Measure reference_mp(double gamma) {
  const double b = (1.0 + std::sqrt(gamma)) * (1.0 + std::sqrt(gamma));
  const double a = (1.0 - std::sqrt(gamma)) * (1.0 - std::sqrt(gamma));
  const double dx = (b - a) / 6000.0;
  const double x0 = std::max(0.0, a - 40.0 * dx);
  const int count = static_cast<int>(std::ceil((b + 40.0 * dx - x0) / dx)) + 1;
  return make_law(LawSpec::marchenko_pastur(gamma), {x0, dx, count});
}

Measure reference_p_alpha(double alpha) {
  const double g2 = p_alpha_edge_outer(alpha);
  const double dx = std::min(1e-3, (g2 - p_alpha_edge_inner(alpha)) / 1500.0);
  const double half = g2 + 50.0 * dx;
  const int count = 2 * static_cast<int>(std::ceil(half / dx)) + 1;
  const double x0 = -dx * static_cast<double>((count - 1) / 2);
  return make_law(LawSpec::p_alpha(alpha), {x0, dx, count});
}

}  // namespace

RateReport rate_jgamma(const Measure& m, double gamma, Exec exec) {
  if (!(gamma > 0.0) || gamma > 1.0) throw domain_error("gamma must be in (0,1]");
  if (!positive_support(m)) throw domain_error("rate_jgamma requires support in (0, inf)");
  const double raw = jgamma_raw(m, gamma, exec);
  const double normalizer = jgamma_raw(reference_mp(gamma), gamma, exec);
  return make_report(RateName::Jgamma, raw, normalizer, {{"gamma", gamma}});
}

RateReport rate_ialpha(const Measure& m, double alpha, Exec exec) {
  if (!(alpha > 0.0) || alpha > 1.0) throw domain_error("alpha must be in (0,1]");
  const double raw = m.is_grid() ? ialpha_raw(m, alpha, exec) : kInf;
  const double c_alpha = ialpha_raw(reference_p_alpha(alpha), alpha, exec);
  return make_report(RateName::Ialpha, raw, c_alpha, {{"alpha", alpha}});
}

RateReport rate_igamma_v(const Measure& m, double gamma,
                         const std::function<double(double)>& potential) {
  if (gamma < 0.0) throw domain_error("gamma must be nonnegative");
  // raw = int (V - gamma log|x|) dmu
  double raw;
  const double g = gamma_entropy(m);
  if (gamma > 0.0 && g == -kInf) {
    raw = kInf;
  } else {
    double vint = 0.0;
    switch (m.kind()) {
      case Measure::Kind::Atomic:
        for (const Atom& a : m.atoms()) vint += a.w * potential(a.x);
        break;
      case Measure::Kind::Empirical:
        for (double p : m.points()) vint += potential(p);
        vint /= static_cast<double>(m.points().size());
        break;
      case Measure::Kind::GridDensity: {
        // 5-point Gauss-Legendre against the linear density per cell
        static const double gl_x[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                       0.5384693101056831, 0.9061798459386640};
        static const double gl_w[5] = {0.2369268850561891, 0.4786286704993665,
                                       0.5688888888888889, 0.4786286704993665,
                                       0.2369268850561891};
        for (std::size_t i = 0; i + 1 < m.node_count(); ++i) {
          const double xl = m.node(i), xr = m.node(i + 1);
          const double c = 0.5 * (xl + xr), hw = 0.5 * (xr - xl);
          double cell = 0.0;
          for (int q = 0; q < 5; ++q) {
            const double x = c + hw * gl_x[q];
            const double t = (x - xl) / (xr - xl);
            const double f = (1.0 - t) * m.values()[i] + t * m.values()[i + 1];
            cell += gl_w[q] * potential(x) * f;
          }
          vint += cell * hw;
        }
        break;
      }
    }
    raw = vint - 0.5 * gamma * g;
  }
  // normalizer: pointwise infimum of V(x) - gamma log|x| over the support
  // hull expanded by a margin, coarse scan then golden-section refinement.
  // Positive-support measures keep the search on (0, inf).
  const auto objective = [&](double x) {
    return potential(x) - (gamma > 0.0 ? gamma * std::log(std::abs(x)) : 0.0);
  };
  const double smin = m.support_min(), smax = m.support_max();
  const double margin = std::max(2.0, smax - smin);
  double lo = smin - margin, hi = smax + margin;
  if (smin > 0.0) lo = std::max(lo, 1e-12);
  const int scan_n = 4096;
  double best_x = smin, best_v = kInf;
  for (int i = 0; i <= scan_n; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / scan_n;
    if (gamma > 0.0 && std::abs(x) < 1e-12) continue;
    const double v = objective(x);
    if (v < best_v) {
      best_v = v;
      best_x = x;
    }
  }
  double a = best_x - (hi - lo) / scan_n;
  double b = best_x + (hi - lo) / scan_n;
  if (smin > 0.0) a = std::max(a, 1e-12);
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = objective(x1), f2 = objective(x2);
  for (int it = 0; it < 200 && b - a > 1e-13 * (1.0 + std::abs(a)); ++it) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = objective(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = objective(x2);
    }
  }
  const double normalizer = std::min(std::min(f1, f2), best_v);
  return make_report(RateName::IgammaV, raw, normalizer, {{"gamma", gamma}});
}

RateReport rate_pair(const SubMeasure& a, const SubMeasure& b) {
  if (std::abs(a.mass() + b.mass() - 1.0) > 1e-9)
    throw domain_error("rate_pair requires mass(a) + mass(b) = 1");
  const double raw = moment(a, 2) + moment(b, 2) - 2.0 * a.mass() * b.mass();
  return make_report(RateName::Ipair, raw, -0.5);
}

namespace detail {

double log_potential(const Measure& grid, double x) {
  const auto& v = grid.values();
  const double h = grid.dx();
  double u = 0.0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    const double cm = 0.5 * (v[i] + v[i + 1]) * h;
    if (cm == 0.0) continue;
    u += (cm / h) * (anti_eta(x - grid.node(i)) - anti_eta(x - grid.node(i + 1)));
  }
  return u;
}

}  // namespace detail

EulerLagrangeResidual euler_lagrange_residual(const Measure& d, double alpha, Exec exec) {
  if (!d.is_grid()) throw domain_error("euler_lagrange_residual needs a grid density");
  if (!(alpha > 0.0) || alpha > 1.0) throw domain_error("alpha must be in (0,1]");
  const std::size_t n = d.node_count();
  const double vmax = *std::max_element(d.values().begin(), d.values().end());
  if (!(vmax > 0.0)) throw domain_error("empty density");
  if (n < 8) throw domain_error("probe grid does not cover the support");

  const double support_threshold = 1e-7 * vmax;
  std::vector<double> phi(n, std::numeric_limits<double>::quiet_NaN());
  for_each_index(n, exec, [&](std::size_t i) {
    const double x = d.node(i);
    if (alpha < 1.0 && std::abs(x) < 1e-3) return;  // log x^2 pole, skipped
    const double u = detail::log_potential(d, x);
    phi[i] = 2.0 * alpha * u - 0.5 * x * x +
             (alpha < 1.0 ? (1.0 - alpha) * std::log(x * x) : 0.0);
  });

  double mean_phi = 0.0;
  std::size_t nsup = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (d.values()[i] > support_threshold && std::isfinite(phi[i])) {
      mean_phi += phi[i];
      ++nsup;
    }
  }
  if (nsup == 0) throw domain_error("no probe points on the support");
  mean_phi /= static_cast<double>(nsup);

  double max_dev = 0.0;
  double min_slack = kInf;
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(phi[i])) continue;
    if (d.values()[i] > support_threshold) {
      max_dev = std::max(max_dev, std::abs(phi[i] - mean_phi));
    } else {
      min_slack = std::min(min_slack, mean_phi - phi[i]);
    }
  }
  return {max_dev, min_slack};
}

}  // namespace bel

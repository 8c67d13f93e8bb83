#include "bel/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "bel/errors.hpp"

namespace bel {

namespace {

constexpr double kAtomMergeTol = 1e-12;   // locations closer than this merge
constexpr double kMassGate = 1e-8;        // acceptable drift of total weight from 1

}  // namespace

Measure Measure::atomic(std::vector<Atom> atoms) {
  if (atoms.empty()) throw domain_error("atomic measure needs at least one atom");
  std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.x < b.x; });
  std::vector<Atom> merged;
  merged.reserve(atoms.size());
  for (const Atom& a : atoms) {
    if (!std::isfinite(a.x) || !std::isfinite(a.w)) throw domain_error("non-finite atom");
    if (a.w < -kAtomMergeTol) throw domain_error("negative atom weight");
    const double w = std::max(a.w, 0.0);
    if (!merged.empty() && a.x - merged.back().x <= kAtomMergeTol) {
      merged.back().w += w;  // mass preserved exactly
    } else {
      merged.push_back({a.x, w});
    }
  }
  std::erase_if(merged, [](const Atom& a) { return a.w == 0.0; });
  if (merged.empty()) throw domain_error("atomic measure has zero total mass");
  double total = 0.0;
  for (const Atom& a : merged) total += a.w;
  if (std::abs(total - 1.0) > kMassGate)
    throw domain_error("atomic weights sum to " + std::to_string(total) + ", expected 1");
  for (Atom& a : merged) a.w /= total;
  Measure m;
  m.kind_ = Kind::Atomic;
  m.atoms_ = std::move(merged);
  return m;
}

Measure Measure::grid_density(double x0, double dx, std::vector<double> values) {
  if (!(dx > 0.0) || !std::isfinite(dx) || !std::isfinite(x0))
    throw domain_error("invalid measure: degenerate grid (dx <= 0)");
  if (values.size() < 2) throw domain_error("grid density needs at least two nodes");
  for (double& v : values) {
    if (!std::isfinite(v)) throw domain_error("non-finite density value");
    if (v < 0.0) {
      if (v < -1e-9) throw domain_error("negative density value");
      v = 0.0;
    }
  }
  double mass = 0.0;
  for (std::size_t i = 0; i + 1 < values.size(); ++i) mass += 0.5 * (values[i] + values[i + 1]);
  mass *= dx;
  if (!(mass > 0.0)) throw domain_error("grid density has zero mass");
  for (double& v : values) v /= mass;
  Measure m;
  m.kind_ = Kind::GridDensity;
  m.x0_ = x0;
  m.dx_ = dx;
  m.values_ = std::move(values);
  m.raw_mass_ = mass;
  return m;
}

Measure Measure::empirical(std::vector<double> points) {
  if (points.empty()) throw domain_error("empirical measure needs at least one point");
  for (double p : points)
    if (!std::isfinite(p)) throw domain_error("non-finite sample point");
  std::sort(points.begin(), points.end());
  Measure m;
  m.kind_ = Kind::Empirical;
  m.points_ = std::move(points);
  return m;
}

const std::vector<Atom>& Measure::atoms() const {
  if (kind_ != Kind::Atomic) throw domain_error("not an atomic measure");
  return atoms_;
}

double Measure::x0() const {
  if (kind_ != Kind::GridDensity) throw domain_error("not a grid density");
  return x0_;
}

double Measure::dx() const {
  if (kind_ != Kind::GridDensity) throw domain_error("not a grid density");
  return dx_;
}

const std::vector<double>& Measure::values() const {
  if (kind_ != Kind::GridDensity) throw domain_error("not a grid density");
  return values_;
}

double Measure::node(std::size_t i) const { return x0() + static_cast<double>(i) * dx_; }

std::size_t Measure::node_count() const {
  if (kind_ != Kind::GridDensity) throw domain_error("not a grid density");
  return values_.size();
}

double Measure::raw_mass() const { return kind_ == Kind::GridDensity ? raw_mass_ : 1.0; }

const std::vector<double>& Measure::points() const {
  if (kind_ != Kind::Empirical) throw domain_error("not an empirical measure");
  return points_;
}

double Measure::support_min() const {
  switch (kind_) {
    case Kind::Atomic:
      return atoms_.front().x;
    case Kind::Empirical:
      return points_.front();
    case Kind::GridDensity: {
      for (std::size_t i = 0; i < values_.size(); ++i)
        if (values_[i] > 0.0) return x0_ + static_cast<double>(i) * dx_;
      return x0_;
    }
  }
  return x0_;
}

double Measure::support_max() const {
  switch (kind_) {
    case Kind::Atomic:
      return atoms_.back().x;
    case Kind::Empirical:
      return points_.back();
    case Kind::GridDensity: {
      for (std::size_t i = values_.size(); i-- > 0;)
        if (values_[i] > 0.0) return x0_ + static_cast<double>(i) * dx_;
      return x0_ + static_cast<double>(values_.size() - 1) * dx_;
    }
  }
  return x0_;
}

double Measure::atom_mass_at(double x) const {
  if (kind_ == Kind::Atomic) {
    for (const Atom& a : atoms_)
      if (a.x == x) return a.w;
    return 0.0;
  }
  if (kind_ == Kind::Empirical) {
    double w = 0.0;
    for (double p : points_)
      if (p == x) w += 1.0;
    return w / static_cast<double>(points_.size());
  }
  return 0.0;
}

namespace detail {

double powi(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

}  // namespace detail

namespace {

// Sums term(i) over i in [0,n) pairing indices from both ends. For measures
// whose sorted support is exactly mirror-symmetric the paired terms of an odd
// integrand are exact negations, so the sum is exactly zero.
template <class Term>
double paired_sum(std::size_t n, Term term) {
  double s = 0.0;
  std::size_t lo = 0, hi = n;
  while (lo + 1 < hi) {
    --hi;
    s += term(lo) + term(hi);
    ++lo;
  }
  if (lo + 1 == hi) s += term(lo);
  return s;
}

}  // namespace

double moment(const Measure& m, int k) {
  if (k < 0 || k > 64) throw domain_error("moment order must be in [0,64]");
  switch (m.kind()) {
    case Measure::Kind::Atomic: {
      const auto& as = m.atoms();
      return paired_sum(as.size(),
                        [&](std::size_t i) { return as[i].w * detail::powi(as[i].x, k); });
    }
    case Measure::Kind::Empirical: {
      const auto& ps = m.points();
      const double w = 1.0 / static_cast<double>(ps.size());
      return paired_sum(ps.size(), [&](std::size_t i) { return w * detail::powi(ps[i], k); });
    }
    case Measure::Kind::GridDensity: {
      const auto& v = m.values();
      const std::size_t n = v.size();
      const double dx = m.dx();
      return paired_sum(n, [&](std::size_t i) {
        const double wtrap = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
        return wtrap * v[i] * detail::powi(m.node(i), k) * dx;
      });
    }
  }
  return 0.0;
}

double mean(const Measure& m) { return moment(m, 1); }

double variance(const Measure& m) {
  const double m1 = moment(m, 1);
  return moment(m, 2) - m1 * m1;
}

Measure symmetrize(const Measure& m) {
  if (m.support_min() < 0.0) throw domain_error("symmetrize requires support on [0, inf)");
  switch (m.kind()) {
    case Measure::Kind::Atomic: {
      std::vector<Atom> out;
      out.reserve(2 * m.atoms().size());
      for (const Atom& a : m.atoms()) {
        if (a.x == 0.0) {
          out.push_back({0.0, a.w});
        } else {
          out.push_back({-a.x, 0.5 * a.w});
          out.push_back({a.x, 0.5 * a.w});
        }
      }
      return Measure::atomic(std::move(out));
    }
    case Measure::Kind::Empirical: {
      std::vector<double> out;
      out.reserve(2 * m.points().size());
      for (double p : m.points()) {
        out.push_back(-p);
        out.push_back(p);
      }
      return Measure::empirical(std::move(out));
    }
    case Measure::Kind::GridDensity: {
      // resample onto a symmetric grid so reflected nodes land on nodes
      const double hi = m.node(m.node_count() - 1);
      const double dx = m.dx();
      const auto eval = [&](double x) -> double {
        const double t = (x - m.x0()) / dx;
        if (t < 0.0 || t > static_cast<double>(m.node_count() - 1)) return 0.0;
        const std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(t), m.node_count() - 2);
        const double f = t - static_cast<double>(i);
        return (1.0 - f) * m.values()[i] + f * m.values()[i + 1];
      };
      const long half = std::lround(std::ceil(hi / dx));
      std::vector<double> vals(static_cast<std::size_t>(2 * half + 1));
      for (long j = -half; j <= half; ++j) {
        const double x = static_cast<double>(j) * dx;
        vals[static_cast<std::size_t>(j + half)] = 0.5 * (eval(x) + eval(-x));
      }
      return Measure::grid_density(-static_cast<double>(half) * dx, dx, std::move(vals));
    }
  }
  throw domain_error("unreachable");
}

Measure dilate(const Measure& m, double lambda) {
  if (lambda == 0.0 || !std::isfinite(lambda))
    throw domain_error("dilate requires a nonzero finite scale");
  switch (m.kind()) {
    case Measure::Kind::Atomic: {
      std::vector<Atom> out = m.atoms();
      for (Atom& a : out) a.x *= lambda;
      return Measure::atomic(std::move(out));
    }
    case Measure::Kind::Empirical: {
      std::vector<double> out = m.points();
      for (double& p : out) p *= lambda;
      return Measure::empirical(std::move(out));
    }
    case Measure::Kind::GridDensity: {
      const double a = std::abs(lambda);
      std::vector<double> vals = m.values();
      double nx0;
      if (lambda > 0.0) {
        nx0 = m.x0() * lambda;
      } else {
        std::reverse(vals.begin(), vals.end());
        nx0 = m.node(m.node_count() - 1) * lambda;
      }
      for (double& v : vals) v /= a;
      return Measure::grid_density(nx0, m.dx() * a, std::move(vals));
    }
  }
  throw domain_error("unreachable");
}

namespace detail {

NodeWeights collapse_to_nodes(const Measure& m) {
  NodeWeights nw;
  switch (m.kind()) {
    case Measure::Kind::Atomic:
      for (const Atom& a : m.atoms()) {
        nw.x.push_back(a.x);
        nw.w.push_back(a.w);
      }
      break;
    case Measure::Kind::Empirical: {
      const double w = 1.0 / static_cast<double>(m.points().size());
      for (double p : m.points()) {
        if (!nw.x.empty() && nw.x.back() == p) {
          nw.w.back() += w;  // duplicate sample points collapse
        } else {
          nw.x.push_back(p);
          nw.w.push_back(w);
        }
      }
      break;
    }
    case Measure::Kind::GridDensity: {
      const std::size_t n = m.node_count();
      for (std::size_t i = 0; i < n; ++i) {
        const double wtrap = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
        nw.x.push_back(m.node(i));
        nw.w.push_back(wtrap * m.values()[i] * m.dx());
      }
      break;
    }
  }
  return nw;
}

namespace {

// Concave piecewise-linear function on [xs.front(), xs.back()], linear
// between breakpoints. Value function of the d_BL dynamic program.
struct ConcavePl {
  std::vector<double> xs;
  std::vector<double> ys;

  double eval(double x) const {
    if (x <= xs.front()) return ys.front();
    if (x >= xs.back()) return ys.back();
    std::size_t hi = static_cast<std::size_t>(
        std::upper_bound(xs.begin(), xs.end(), x) - xs.begin());
    const std::size_t lo = hi - 1;
    const double t = (x - xs[lo]) / (xs[hi] - xs[lo]);
    return (1.0 - t) * ys[lo] + t * ys[hi];
  }

  double max_value() const { return *std::max_element(ys.begin(), ys.end()); }
};

// M(f) = max over g in [f-d, f+d] of V(g), restricted back to [-1,1].
// For concave V with peak plateau [gL,gR] the sliding-window max is V shifted
// outward by d on each monotone branch with a flat top over [gL-d, gR+d].
ConcavePl window_max(const ConcavePl& v, double d) {
  std::size_t peak = 0;
  for (std::size_t i = 1; i < v.ys.size(); ++i)
    if (v.ys[i] > v.ys[peak]) peak = i;
  std::size_t peak_lo = peak, peak_hi = peak;
  while (peak_lo > 0 && v.ys[peak_lo - 1] == v.ys[peak]) --peak_lo;
  while (peak_hi + 1 < v.ys.size() && v.ys[peak_hi + 1] == v.ys[peak]) ++peak_hi;

  ConcavePl full;
  for (std::size_t i = 0; i < peak_lo; ++i) {
    full.xs.push_back(v.xs[i] - d);
    full.ys.push_back(v.ys[i]);
  }
  full.xs.push_back(v.xs[peak_lo] - d);
  full.ys.push_back(v.ys[peak]);
  full.xs.push_back(v.xs[peak_hi] + d);
  full.ys.push_back(v.ys[peak]);
  for (std::size_t i = peak_hi + 1; i < v.xs.size(); ++i) {
    full.xs.push_back(v.xs[i] + d);
    full.ys.push_back(v.ys[i]);
  }

  ConcavePl out;
  out.xs.push_back(-1.0);
  out.ys.push_back(full.eval(-1.0));
  for (std::size_t i = 0; i < full.xs.size(); ++i) {
    if (full.xs[i] > -1.0 && full.xs[i] < 1.0) {
      out.xs.push_back(full.xs[i]);
      out.ys.push_back(full.ys[i]);
    }
  }
  out.xs.push_back(1.0);
  out.ys.push_back(full.eval(1.0));
  return out;
}

}  // namespace

double bounded_lipschitz_lp(const std::vector<double>& x, const std::vector<double>& c) {
  if (x.empty()) throw domain_error("invalid measure: empty node set in d_bl");
  ConcavePl v;
  v.xs = {-1.0, 1.0};
  v.ys = {-c[0], c[0]};  // V_1(f) = c_1 f, linear hence concave
  for (std::size_t k = 1; k < x.size(); ++k) {
    ConcavePl m = window_max(v, x[k] - x[k - 1]);
    for (std::size_t i = 0; i < m.xs.size(); ++i) m.ys[i] += c[k] * m.xs[i];
    v = std::move(m);
  }
  return std::max(0.0, v.max_value());
}

}  // namespace detail

namespace {

double d_bl_on_nodes(const detail::NodeWeights& na, const detail::NodeWeights& nb) {
  // merge the two sorted node lists, coincident nodes combined
  std::vector<double> x;
  std::vector<double> c;
  std::size_t i = 0, j = 0;
  while (i < na.x.size() || j < nb.x.size()) {
    double xi = i < na.x.size() ? na.x[i] : std::numeric_limits<double>::infinity();
    double xj = j < nb.x.size() ? nb.x[j] : std::numeric_limits<double>::infinity();
    double nx;
    double nc = 0.0;
    if (xi <= xj) {
      nx = xi;
      nc += na.w[i++];
      if (xj - xi <= 1e-12 && j < nb.x.size()) nc -= nb.w[j++];
    } else {
      nx = xj;
      nc -= nb.w[j++];
    }
    if (!x.empty() && nx - x.back() <= 1e-12) {
      c.back() += nc;
    } else {
      x.push_back(nx);
      c.push_back(nc);
    }
  }
  if (x.size() > 10000) throw domain_error("d_bl node count exceeds 10^4");
  // the LP value is invariant under c -> -c (f -> -f); canonicalizing the
  // sign makes d_bl(a,b) and d_bl(b,a) bitwise identical
  for (double v : c) {
    if (v != 0.0) {
      if (v < 0.0)
        for (double& w : c) w = -w;
      break;
    }
  }
  return detail::bounded_lipschitz_lp(x, c);
}

}  // namespace

double d_bl(const Measure& a, const Measure& b) {
  return d_bl_on_nodes(detail::collapse_to_nodes(a), detail::collapse_to_nodes(b));
}

SubMeasure SubMeasure::atomic(std::vector<Atom> atoms) {
  double mass = 0.0;
  for (const Atom& a : atoms) {
    if (a.w < 0.0) throw domain_error("negative submeasure weight");
    mass += a.w;
  }
  if (atoms.empty() || mass == 0.0) return SubMeasure();
  if (mass > 1.0 + 1e-12) throw domain_error("submeasure mass exceeds 1");
  for (Atom& a : atoms) a.w /= mass;
  SubMeasure s;
  s.shape_ = Measure::atomic(std::move(atoms));
  s.mass_ = mass;
  return s;
}

SubMeasure SubMeasure::scaled(Measure shape, double mass) {
  if (mass < 0.0 || mass > 1.0 + 1e-12) throw domain_error("submeasure mass must be in [0,1]");
  if (mass == 0.0) return SubMeasure();
  SubMeasure s;
  s.shape_ = std::move(shape);
  s.mass_ = mass;
  return s;
}

const Measure& SubMeasure::shape() const {
  if (!shape_) throw domain_error("empty submeasure has no shape");
  return *shape_;
}

double moment(const SubMeasure& m, int k) {
  if (m.empty()) return 0.0;
  return m.mass() * moment(m.shape(), k);
}

double d_bl(const SubMeasure& a, const SubMeasure& b) {
  detail::NodeWeights na, nb;
  if (!a.empty()) {
    na = detail::collapse_to_nodes(a.shape());
    for (double& w : na.w) w *= a.mass();
  } else {
    na.x.push_back(0.0);
    na.w.push_back(0.0);
  }
  if (!b.empty()) {
    nb = detail::collapse_to_nodes(b.shape());
    for (double& w : nb.w) w *= b.mass();
  } else {
    nb.x.push_back(0.0);
    nb.w.push_back(0.0);
  }
  return d_bl_on_nodes(na, nb);
}

double d_bl_pair(const SubMeasure& a1, const SubMeasure& a2, const SubMeasure& b1,
                 const SubMeasure& b2) {
  return d_bl(a1, b1) + d_bl(a2, b2);
}

}  // namespace bel

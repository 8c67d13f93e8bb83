#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace bel {

struct Atom {
  double x;
  double w;
};

// Probability measure on the real line in one of three representations:
//   Atomic      -- weighted point masses, canonicalized (sorted, coincident
//                  atoms merged, weights renormalized to total 1)
//   GridDensity -- density values on a uniform grid, interpreted piecewise
//                  linearly; trapezoid mass renormalized to 1 at construction
//                  (the applied factor is recorded)
//   Empirical   -- sample points, each carrying weight 1/count, kept sorted
// Measures are immutable after construction; all operations on them are pure.
class Measure {
 public:
  enum class Kind { Atomic, GridDensity, Empirical };

  static Measure atomic(std::vector<Atom> atoms);
  static Measure dirac(double x) { return atomic({{x, 1.0}}); }
  static Measure grid_density(double x0, double dx, std::vector<double> values);
  static Measure empirical(std::vector<double> points);

  Kind kind() const { return kind_; }
  bool is_atomic() const { return kind_ == Kind::Atomic; }
  bool is_grid() const { return kind_ == Kind::GridDensity; }
  bool is_empirical() const { return kind_ == Kind::Empirical; }

  const std::vector<Atom>& atoms() const;

  double x0() const;
  double dx() const;
  const std::vector<double>& values() const;
  double node(std::size_t i) const;
  std::size_t node_count() const;
  // trapezoid mass before construction-time renormalization
  double raw_mass() const;

  const std::vector<double>& points() const;

  // hull of the support: atom/point extremes, or the grid span trimmed to
  // nonzero density values
  double support_min() const;
  double support_max() const;

  // mass of the atom exactly at x (atomic variant), 0 otherwise
  double atom_mass_at(double x) const;

 private:
  Measure() = default;
  Kind kind_ = Kind::Atomic;
  std::vector<Atom> atoms_;
  double x0_ = 0.0;
  double dx_ = 0.0;
  std::vector<double> values_;
  double raw_mass_ = 1.0;
  std::vector<double> points_;
};

// k-th moment: exact atomic sum / trapezoid rule / sample mean. Pairs terms
// from both ends of the sorted support so symmetric measures cancel odd
// moments exactly in floating point.
double moment(const Measure& m, int k);

// mean and variance shorthand
double mean(const Measure& m);
double variance(const Measure& m);

// Bounded-Lipschitz distance: sup over |f|<=1, Lip(f)<=1 of |int f da - int f db|.
// Both measures are collapsed to a common weighted node set (grid densities
// via trapezoid weights) and the resulting finite LP is solved exactly.
double d_bl(const Measure& a, const Measure& b);

// reflection average (m + reflect(m))/2; input must be supported on [0, inf)
Measure symmetrize(const Measure& m);

// pushforward under x -> lambda*x, lambda != 0
Measure dilate(const Measure& m, double lambda);

// Positive measure with total mass in [0,1]; an empty submeasure (mass 0) is
// allowed, e.g. when a sign-split puts every sample on one side. Internally a
// mass-scaled probability measure, so every Measure variant is supported.
class SubMeasure {
 public:
  SubMeasure() = default;  // empty, mass 0
  static SubMeasure atomic(std::vector<Atom> atoms);  // weights sum to the mass
  static SubMeasure scaled(Measure shape, double mass);

  double mass() const { return mass_; }
  bool empty() const { return !shape_.has_value(); }
  const Measure& shape() const;  // normalized; throws on empty

 private:
  std::optional<Measure> shape_;
  double mass_ = 0.0;
};

double moment(const SubMeasure& m, int k);
double d_bl(const SubMeasure& a, const SubMeasure& b);

// metric on pairs: sum of the component distances
double d_bl_pair(const SubMeasure& a1, const SubMeasure& a2, const SubMeasure& b1,
                 const SubMeasure& b2);

namespace detail {
// weighted node list (x, w) used by d_bl; exposed for tests
struct NodeWeights {
  std::vector<double> x;
  std::vector<double> w;
};
NodeWeights collapse_to_nodes(const Measure& m);
// exact maximum of sum c_i f_i over |f_i|<=1, |f_{i+1}-f_i| <= x_{i+1}-x_i
double bounded_lipschitz_lp(const std::vector<double>& x, const std::vector<double>& c);
// sign-exact integer power (x^k), k >= 0
double powi(double x, int k);
}  // namespace detail

}  // namespace bel

// bel -- Boolean entropy lab command line.
// Sampling, density tables, entropy/rate evaluation, Boolean convolution,
// CLT entropy curves, and verification suites. Emits CSV/JSON for offline
// plotting. Exit codes: 0 success, 1 domain error, 2 numerical failure,
// 64 usage error.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bel/booleanclt.hpp"
#include "bel/ensembles.hpp"
#include "bel/entropy.hpp"
#include "bel/errors.hpp"
#include "bel/laws.hpp"
#include "bel/measure.hpp"
#include "bel/measure_io.hpp"
#include "bel/rng.hpp"
#include "bel/transforms.hpp"
#include "bel/verify.hpp"
#include "bel/version.hpp"
#include "json.hpp"

namespace {

std::string g_cmdline;

std::string fmt(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string header_line(std::optional<std::uint64_t> seed) {
  std::string h = "# bel ";
  h += bel::kVersion;
  h += " | ";
  h += g_cmdline;
  h += " | seed=";
  h += seed ? std::to_string(*seed) : std::string("-");
  h += "\n";
  return h;
}

nlohmann::json meta_json(std::optional<std::uint64_t> seed) {
  nlohmann::json m;
  m["tool"] = std::string("bel ") + bel::kVersion;
  m["cmdline"] = g_cmdline;
  if (seed) m["seed"] = *seed;
  return m;
}

// single-writer atomic output: temp file in the target directory + rename
void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  const fs::path tmp = target.parent_path() / (target.filename().string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw bel::domain_error("cannot open output file: " + tmp.string());
    out << content;
    if (!out) throw bel::domain_error("write failed: " + tmp.string());
  }
  fs::rename(tmp, target);
}

void write_measure_file(const std::string& path, const bel::Measure& m,
                        std::optional<std::uint64_t> seed) {
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") {
    std::string csv = header_line(seed);
    csv += "index,value\n";
    if (m.is_empirical()) {
      for (std::size_t i = 0; i < m.points().size(); ++i)
        csv += std::to_string(i) + "," + fmt(m.points()[i]) + "\n";
    } else if (m.is_atomic()) {
      for (std::size_t i = 0; i < m.atoms().size(); ++i)
        csv += std::to_string(i) + "," + fmt(m.atoms()[i].x) + "\n";
    } else {
      throw bel::domain_error("CSV sample output needs an atomic or empirical measure");
    }
    write_atomic(path, csv);
    return;
  }
  nlohmann::json j = nlohmann::json::parse(bel::measure_to_json(m));
  j["meta"] = meta_json(seed);
  write_atomic(path, j.dump() + "\n");
}

bel::GridSpec parse_grid(const std::string& spec) {
  const auto c1 = spec.find(':');
  const auto c2 = spec.rfind(':');
  if (c1 == std::string::npos || c2 == c1)
    throw bel::domain_error("grid spec must be x0:dx:x1");
  const double x0 = std::stod(spec.substr(0, c1));
  const double dx = std::stod(spec.substr(c1 + 1, c2 - c1 - 1));
  const double x1 = std::stod(spec.substr(c2 + 1));
  if (!(dx > 0.0) || !(x1 > x0)) throw bel::domain_error("grid spec must satisfy dx>0, x1>x0");
  const int count = static_cast<int>(std::floor((x1 - x0) / dx + 0.5)) + 1;
  return {x0, dx, count};
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(std::stod(tok));
  }
  if (out.empty()) throw bel::domain_error("empty list");
  return out;
}

void require_distinct_paths(const std::vector<std::string>& paths) {
  for (std::size_t i = 0; i < paths.size(); ++i)
    for (std::size_t j = i + 1; j < paths.size(); ++j)
      if (!paths[i].empty() && paths[i] == paths[j])
        throw bel::domain_error("file paths must be distinct: " + paths[i]);
}

// The semigroup evaluator demands mean 0 / variance 1 to 1e-8, which a
// discretized base (e.g. a tabulated semicircle) only meets to grid accuracy.
// Recenter and rescale exactly when the input is close; reject otherwise.
bel::Measure standardize_base(bel::Measure m) {
  const double mu = bel::mean(m);
  const double var = bel::variance(m);
  if (std::abs(mu) > 0.05 || std::abs(var - 1.0) > 0.05)
    throw bel::domain_error("base measure must have mean ~0 and variance ~1");
  if (std::abs(mu) <= 1e-9 && std::abs(var - 1.0) <= 1e-9) return m;
  switch (m.kind()) {
    case bel::Measure::Kind::Atomic: {
      std::vector<bel::Atom> atoms = m.atoms();
      for (auto& a : atoms) a.x -= mu;
      m = bel::Measure::atomic(std::move(atoms));
      break;
    }
    case bel::Measure::Kind::Empirical: {
      std::vector<double> pts = m.points();
      for (auto& p : pts) p -= mu;
      m = bel::Measure::empirical(std::move(pts));
      break;
    }
    case bel::Measure::Kind::GridDensity:
      m = bel::Measure::grid_density(m.x0() - mu, m.dx(), m.values());
      break;
  }
  return bel::dilate(m, 1.0 / std::sqrt(bel::variance(m)));
}

bel::SubMeasure load_submeasure(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw bel::domain_error("cannot open measure file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return bel::submeasure_from_json(ss.str());
}

// ---- subcommand payloads ----

struct SampleWishartArgs {
  int p = 0, n = 0;
  std::uint64_t seed = 0;
  std::string out;
  bool reflected = false;
};

void run_sample_wishart(const SampleWishartArgs& a) {
  const auto s = bel::sample_wishart_block({a.p, a.n, a.seed});
  write_measure_file(a.out, a.reflected ? s.reflected : s.singular_values, a.seed);
}

struct SampleGueArgs {
  int M = 0, N = 0;
  int burnin = 1000, steps = 1000;
  double proposal_sd = 0.5;
  bool no_adapt = false;
  std::uint64_t seed = 0;
  std::string out;
  bool scaled_pair = false;
};

void run_sample_gue(const SampleGueArgs& a) {
  bel::ConditionedGueConfig cfg{a.M, a.N, a.seed,
                                {a.burnin, a.steps, a.proposal_sd, !a.no_adapt}};
  const auto s = bel::sample_conditioned_gue(cfg);
  for (const auto& w : s.warnings) std::cerr << "warning: " << w << "\n";
  if (!a.scaled_pair) {
    write_measure_file(a.out, s.empirical, a.seed);
    return;
  }
  const auto sp = bel::scaled_pair(s.empirical.points(), a.M, a.N);
  const auto theta = bel::solve_theta(a.M, a.N);
  nlohmann::json j;
  j["meta"] = meta_json(a.seed);
  j["theta"] = theta.theta;
  j["m0"] = sp.pair.m0;
  j["alpha"] = {{"mass", sp.alpha_measure.mass()}, {"points", sp.pair.alpha_points}};
  j["beta"] = {{"mass", sp.beta_measure.mass()}, {"points", sp.pair.beta_points}};
  write_atomic(a.out, j.dump() + "\n");
}

struct DensityArgs {
  std::string law;
  double gamma = 1.0;
  double alpha = 1.0;
  std::string grid;
  std::string out;
};

void run_density(const DensityArgs& a) {
  bel::LawSpec spec;
  if (a.law == "rademacher") spec = bel::LawSpec::rademacher();
  else if (a.law == "mu-half") spec = bel::LawSpec::mu_half();
  else if (a.law == "semicircle") spec = bel::LawSpec::semicircle();
  else if (a.law == "mp") spec = bel::LawSpec::marchenko_pastur(a.gamma);
  else if (a.law == "p-alpha") spec = bel::LawSpec::p_alpha(a.alpha);
  else throw bel::domain_error("unknown law: " + a.law);
  const bel::GridSpec grid = parse_grid(a.grid);
  const bel::Measure m = bel::make_law(spec, grid);
  std::string csv = header_line(std::nullopt);
  csv += "x,density\n";
  if (m.is_atomic()) {
    // atomic laws tabulate atom weight instead of a density
    for (const auto& at : m.atoms()) csv += fmt(at.x) + "," + fmt(at.w) + "\n";
  } else {
    for (std::size_t i = 0; i < m.node_count(); ++i)
      csv += fmt(m.node(i)) + "," + fmt(m.values()[i]) + "\n";
  }
  write_atomic(a.out, csv);
}

struct EntropyArgs {
  std::string fn;
  std::string measure;
};

void run_entropy(const EntropyArgs& a) {
  const bel::Measure m = bel::load_measure(a.measure);
  double v;
  if (a.fn == "gamma") v = bel::gamma_entropy(m);
  else if (a.fn == "sigma") v = bel::sigma_entropy(m);
  else if (a.fn == "classical") v = bel::classical_entropy(m);
  else throw bel::domain_error("unknown entropy: " + a.fn);
  std::cout << fmt(v) << "\n";
}

struct RateArgs {
  std::string fn;
  double gamma = 0.5;
  double alpha = 0.5;
  std::string potential = "quadratic";
  std::string measure;
  std::string measure2;
};

void run_rate(const RateArgs& a) {
  bel::RateReport rep;
  if (a.fn == "pair") {
    if (a.measure2.empty()) throw bel::domain_error("--fn pair needs --measure2");
    rep = bel::rate_pair(load_submeasure(a.measure), load_submeasure(a.measure2));
  } else {
    const bel::Measure m = bel::load_measure(a.measure);
    if (a.fn == "isym") rep = bel::rate_isym(m);
    else if (a.fn == "i") rep = bel::rate_i(m);
    else if (a.fn == "jplus") rep = bel::rate_jplus(m);
    else if (a.fn == "jtilde") rep = bel::rate_jtilde(m);
    else if (a.fn == "jgamma") rep = bel::rate_jgamma(m, a.gamma);
    else if (a.fn == "ialpha") rep = bel::rate_ialpha(m, a.alpha);
    else if (a.fn == "igammav") {
      std::function<double(double)> V;
      if (a.potential == "quadratic") V = [](double x) { return 0.5 * x * x; };
      else if (a.potential == "linear") V = [](double x) { return x; };
      else if (a.potential == "quartic") V = [](double x) { return x * x * x * x; };
      else throw bel::domain_error("unknown potential: " + a.potential);
      rep = bel::rate_igamma_v(m, a.gamma, V);
    } else {
      throw bel::domain_error("unknown rate: " + a.fn);
    }
  }
  std::cout << bel::rate_report_json(rep) << "\n";
}

struct ConvolveArgs {
  std::string a, b, out;
  int order = 16;
};

void run_convolve(const ConvolveArgs& args) {
  // the same measure may feed both inputs; only the output must not clobber
  require_distinct_paths({args.a, args.out});
  require_distinct_paths({args.b, args.out});
  const bel::Measure ma = bel::load_measure(args.a);
  const bel::Measure mb = bel::load_measure(args.b);
  write_measure_file(args.out, bel::boolean_convolve(ma, mb, args.order), std::nullopt);
}

struct CltCurveArgs {
  std::string measure;
  std::string ts;
  std::string out;
};

void run_clt_curve(const CltCurveArgs& a) {
  const bel::Measure base = standardize_base(bel::load_measure(a.measure));
  const auto curve =
      bel::gamma_curve(bel::SemigroupEvaluator(base, 1.0), parse_list(a.ts));
  std::string csv = header_line(std::nullopt);
  csv += "t,gamma\n";
  for (const auto& [t, g] : curve) csv += fmt(t) + "," + fmt(g) + "\n";
  write_atomic(a.out, csv);
}

void run_clt_dgamma(const std::string& measure) {
  std::cout << fmt(bel::gamma_prime_1(standardize_base(bel::load_measure(measure)))) << "\n";
}

struct VerifyArgs {
  std::string suite;
  std::string measure;
  double tmax = 16.0;
  double alpha = 0.5;
  std::string model = "wishart-block";
  int p = 30, n = 3000, M = 20, N = 1000;
  int burnin = 2000, steps = 500;
  int replicas = 20;
  int count = 1000;
  std::uint64_t seed = 1;
  std::string out;
};

void run_verify(const VerifyArgs& a) {
  if (a.suite == "monotonicity") {
    const bel::Measure base = standardize_base(bel::load_measure(a.measure));
    std::vector<double> ts{1.0};
    while (ts.back() * 2.0 <= a.tmax) ts.push_back(ts.back() * 2.0);
    const auto curve = bel::gamma_curve(bel::SemigroupEvaluator(base, 1.0), ts);
    std::string csv = header_line(std::nullopt);
    csv += "t,gamma\n";
    for (const auto& [t, g] : curve) csv += fmt(t) + "," + fmt(g) + "\n";
    write_atomic(a.out, csv);
    for (std::size_t i = 1; i < curve.size(); ++i)
      if (curve[i].second < curve[i - 1].second - 5e-3)
        throw bel::numerical_error("monotonicity violated at t=" +
                                   std::to_string(curve[i].first));
    return;
  }
  if (a.suite == "euler-lagrange") {
    const double g2 = bel::p_alpha_edge_outer(a.alpha);
    const double dx = 1e-3;
    const int half = static_cast<int>(std::ceil((g2 + 0.05) / dx));
    const bel::Measure p =
        bel::make_law(bel::LawSpec::p_alpha(a.alpha), {-dx * half, dx, 2 * half + 1});
    const auto r = bel::euler_lagrange_residual(p, a.alpha);
    std::string csv = header_line(std::nullopt);
    csv += "max_dev_on_support,min_slack_off_support\n";
    csv += fmt(r.max_dev_on_support) + "," + fmt(r.min_slack_off_support) + "\n";
    write_atomic(a.out, csv);
    if (r.max_dev_on_support > 1e-2 || r.min_slack_off_support < -1e-2)
      throw bel::numerical_error("euler-lagrange residual out of tolerance");
    return;
  }
  if (a.suite == "convergence") {
    bel::EnsembleConfig cfg;
    if (a.model == "wishart-block") {
      cfg = bel::WishartBlockConfig{a.p, a.n, a.seed};
    } else if (a.model == "cond-gue") {
      cfg = bel::ConditionedGueConfig{a.M, a.N, a.seed, {a.burnin, a.steps, 0.5, true}};
    } else {
      throw bel::domain_error("unknown model: " + a.model);
    }
    const auto s = bel::convergence_stats(cfg, a.replicas, a.seed);
    nlohmann::json j = nlohmann::json::parse(bel::convergence_summary_json(s));
    j["meta"] = meta_json(a.seed);
    write_atomic(a.out, j.dump(2) + "\n");
    return;
  }
  if (a.suite == "weight-ratio") {
    const auto uniform = [](double lo, double hi) {
      const int n = 2001;
      std::vector<double> v(static_cast<std::size_t>(n), 1.0 / (hi - lo));
      return bel::Measure::grid_density(lo, (hi - lo) / (n - 1), std::move(v));
    };
    const auto uniform_sym = [](double lo, double hi) {
      const int n = 4001;
      const double dx = 2.0 * hi / (n - 1);
      std::vector<double> v(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) {
        const double x = std::abs(-hi + dx * i);
        v[static_cast<std::size_t>(i)] = (x >= lo && x <= hi) ? 0.5 / (hi - lo) : 0.0;
      }
      return bel::Measure::grid_density(-hi, dx, std::move(v));
    };
    bel::RatioCheck r{};
    if (a.model == "wishart-block") {
      r = bel::ldp_weight_ratio_check(bel::WishartSingularModel{40, 4000},
                                      uniform(0.9, 1.1), uniform(1.9, 2.1), 40);
    } else if (a.model == "cond-gue") {
      r = bel::ldp_weight_ratio_check(bel::ConditionedGueModel{40, 4000},
                                      uniform_sym(1.3, 1.5), uniform_sym(2.3, 2.5), 40);
    } else {
      throw bel::domain_error("unknown model: " + a.model);
    }
    std::string csv = header_line(std::nullopt);
    csv += "measured,predicted\n";
    csv += fmt(r.measured) + "," + fmt(r.predicted) + "\n";
    write_atomic(a.out, csv);
    if (std::abs(r.measured - r.predicted) > 0.15 * std::abs(r.predicted))
      throw bel::numerical_error("weight ratio disagrees with the rate prediction");
    return;
  }
  if (a.suite == "maximality") {
    bel::Rng rng(a.seed);
    std::string csv = header_line(a.seed);
    csv += "gamma_entropy\n";
    bool ok = true;
    for (int i = 0; i < a.count; ++i) {
      const int k = 2 + static_cast<int>(rng.uniform01() * 3.0);
      std::vector<bel::Atom> atoms;
      double total = 0.0;
      for (int q = 0; q < k; ++q) {
        const double w = 0.1 + rng.uniform01();
        atoms.push_back({4.0 * (rng.uniform01() - 0.5), w});
        total += w;
      }
      for (auto& at : atoms) at.w /= total;
      bel::Measure m = bel::Measure::atomic(atoms);
      const double m2 = bel::moment(m, 2);
      if (!(m2 > 1e-9)) continue;
      m = bel::dilate(m, 1.0 / std::sqrt(m2));
      const double g = bel::gamma_entropy(m);
      csv += fmt(g) + "\n";
      if (g > 1e-12) ok = false;
    }
    write_atomic(a.out, csv);
    if (!ok) throw bel::numerical_error("maximality violated: found Gamma > 0");
    return;
  }
  throw bel::domain_error("unknown suite: " + a.suite);
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 0; i < argc; ++i) {
    if (i) g_cmdline += ' ';
    g_cmdline += argv[i];
  }

  CLI::App app{"Boolean entropy lab: random-matrix samplers, Boolean transforms, "
               "rate functionals, and verification suites"};
  app.require_subcommand(1);

  SampleWishartArgs wa;
  SampleGueArgs ga;
  DensityArgs da;
  EntropyArgs ea;
  RateArgs ra;
  ConvolveArgs ca;
  CltCurveArgs cca;
  std::string dgamma_measure;
  VerifyArgs va;

  auto* sample = app.add_subcommand("sample", "draw from a random matrix model");
  sample->require_subcommand(1);
  auto* sw = sample->add_subcommand("wishart-block", "singular values of the Gaussian block");
  sw->add_option("--p", wa.p, "rows")->required();
  sw->add_option("--n", wa.n, "columns")->required();
  sw->add_option("--seed", wa.seed, "rng seed")->required();
  sw->add_option("--out", wa.out, "output path (.json or .csv)")->required();
  sw->add_flag("--reflected", wa.reflected, "emit the +-s symmetrization");
  sw->callback([&] { run_sample_wishart(wa); });

  auto* sg = sample->add_subcommand("cond-gue", "conditioned GUE eigenvalues via MCMC");
  sg->add_option("--M", ga.M, "nonzero eigenvalues")->required();
  sg->add_option("--N", ga.N, "matrix dimension")->required();
  sg->add_option("--burnin", ga.burnin, "burn-in sweeps");
  sg->add_option("--steps", ga.steps, "recorded sweeps");
  sg->add_option("--proposal-sd", ga.proposal_sd, "proposal scale");
  sg->add_flag("--no-adapt", ga.no_adapt, "disable step-size adaptation");
  sg->add_option("--seed", ga.seed, "rng seed")->required();
  sg->add_option("--out", ga.out, "output path")->required();
  sg->add_flag("--scaled-pair", ga.scaled_pair, "emit the Theta-scaled pair");
  sg->callback([&] { run_sample_gue(ga); });

  auto* dens = app.add_subcommand("density", "tabulate a reference law");
  dens->add_option("--law", da.law, "rademacher|mu-half|semicircle|mp|p-alpha")->required();
  dens->add_option("--gamma", da.gamma, "mp ratio in (0,1]");
  dens->add_option("--alpha", da.alpha, "p-alpha ratio in (0,1]");
  dens->add_option("--grid", da.grid, "x0:dx:x1")->required();
  dens->add_option("--out", da.out, "output csv")->required();
  dens->callback([&] { run_density(da); });

  auto* ent = app.add_subcommand("entropy", "evaluate an entropy functional");
  ent->add_option("--fn", ea.fn, "gamma|sigma|classical")->required();
  ent->add_option("--measure", ea.measure, "measure json")->required();
  ent->callback([&] { run_entropy(ea); });

  auto* rate = app.add_subcommand("rate", "evaluate a rate functional");
  rate->add_option("--fn", ra.fn, "isym|i|jplus|jtilde|jgamma|ialpha|pair|igammav")->required();
  rate->add_option("--gamma", ra.gamma, "gamma parameter");
  rate->add_option("--alpha", ra.alpha, "alpha parameter");
  rate->add_option("--V", ra.potential, "igammav potential: quadratic|linear|quartic");
  rate->add_option("--measure", ra.measure, "measure json")->required();
  rate->add_option("--measure2", ra.measure2, "second submeasure (pair)");
  rate->callback([&] { run_rate(ra); });

  auto* conv = app.add_subcommand("convolve", "measure convolutions");
  conv->require_subcommand(1);
  auto* cb = conv->add_subcommand("boolean", "Boolean convolution via the K transform");
  cb->add_option("--a", ca.a, "first measure")->required();
  cb->add_option("--b", ca.b, "second measure")->required();
  cb->add_option("--order", ca.order, "moment-match depth");
  cb->add_option("--out", ca.out, "output measure json")->required();
  cb->callback([&] { run_convolve(ca); });

  auto* clt = app.add_subcommand("clt", "Boolean CLT semigroup");
  clt->require_subcommand(1);
  auto* curve = clt->add_subcommand("curve", "entropy curve t -> Gamma(mu_t)");
  curve->add_option("--measure", cca.measure, "base measure json (mean 0, variance 1)")
      ->required();
  curve->add_option("--ts", cca.ts, "comma-separated times, all >= 1")->required();
  curve->add_option("--out", cca.out, "output csv")->required();
  curve->callback([&] { run_clt_curve(cca); });
  auto* dg = clt->add_subcommand("dgamma", "derivative of the entropy curve at t = 1");
  dg->add_option("--measure", dgamma_measure, "base measure json")->required();
  dg->callback([&] { run_clt_dgamma(dgamma_measure); });

  auto* ver = app.add_subcommand("verify", "verification suites");
  ver->add_option("--suite", va.suite,
                  "monotonicity|euler-lagrange|convergence|weight-ratio|maximality")
      ->required();
  ver->add_option("--measure", va.measure, "base measure (monotonicity)");
  ver->add_option("--tmax", va.tmax, "largest time (monotonicity)");
  ver->add_option("--alpha", va.alpha, "alpha (euler-lagrange)");
  ver->add_option("--model", va.model, "wishart-block|cond-gue");
  ver->add_option("--p", va.p, "wishart rows");
  ver->add_option("--n", va.n, "wishart columns");
  ver->add_option("--M", va.M, "gue nonzero eigenvalues");
  ver->add_option("--N", va.N, "gue dimension");
  ver->add_option("--burnin", va.burnin, "mcmc burn-in sweeps");
  ver->add_option("--steps", va.steps, "mcmc recorded sweeps");
  ver->add_option("--replicas", va.replicas, "replica count");
  ver->add_option("--count", va.count, "trial count (maximality)");
  ver->add_option("--seed", va.seed, "base seed");
  ver->add_option("--out", va.out, "output path")->required();
  ver->callback([&] { run_verify(va); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: usage: " << e.what() << "\n";
    return 64;
  } catch (const bel::domain_error& e) {
    std::cerr << "error: domain: " << e.what() << "\n";
    return 1;
  } catch (const bel::numerical_error& e) {
    std::cerr << "error: numerical: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

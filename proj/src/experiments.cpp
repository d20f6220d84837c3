// SPDX-License-Identifier: Apache-2.0
#include "stit/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include "stit/encapsulation.hpp"
#include "stit/errors.hpp"
#include "stit/parallel.hpp"
#include "stit/pht.hpp"
#include "stit/stats.hpp"
#include "stit/stit_process.hpp"

namespace stit {

namespace {

constexpr double kSigmas = 4.0;
constexpr double kKsLevel = 0.005;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Json box_json(double lo0, double hi0, double lo1, double hi1) {
  return {{"kind", "box"}, {"lo", {lo0, lo1}}, {"hi", {hi0, hi1}}};
}
Json square_json(double a) { return box_json(-a, a, -a, a); }
Json lambda_perp_json() { return {{"g", {1.0, 1.0}}}; }

// Typed access to a merged experiment configuration.
class Cfg {
 public:
  explicit Cfg(const Json& j) : j_(j) {}

  double num(const char* key) const {
    const auto& v = j_.at(key);
    if (!v.is_number()) throw ConfigError(std::string("'") + key + "' must be a number");
    return v.get<double>();
  }
  double positive(const char* key) const {
    const double v = num(key);
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(std::string("'") + key + "' must be positive");
    return v;
  }
  std::size_t count(const char* key) const {
    const double v = num(key);
    if (!(v >= 1.0) || v != std::floor(v)) {
      throw ConfigError(std::string("'") + key + "' must be a positive integer");
    }
    return static_cast<std::size_t>(v);
  }
  Polytope poly(const char* key) const { return polytope_from_json(j_.at(key)); }
  DrivingMeasure measure(const char* key) const { return measure_from_json(j_.at(key)); }
  std::string str(const char* key) const {
    if (!j_.at(key).is_string()) throw ConfigError(std::string("'") + key + "' must be a string");
    return j_.at(key).get<std::string>();
  }
  /// Numbers, or the string "inf".
  std::vector<double> grid(const char* key) const {
    const auto& v = j_.at(key);
    if (!v.is_array() || v.empty()) throw ConfigError(std::string("'") + key + "' must be a non-empty array");
    std::vector<double> out;
    for (const auto& x : v) {
      if (x.is_string() && x.get<std::string>() == "inf") {
        out.push_back(kInfinity);
      } else if (x.is_number()) {
        out.push_back(x.get<double>());
      } else {
        throw ConfigError(std::string("'") + key + "' entries must be numbers or \"inf\"");
      }
    }
    return out;
  }
  std::vector<double> vec(const char* key) const {
    std::vector<double> out;
    for (const auto& x : j_.at(key)) {
      if (!x.is_number()) throw ConfigError(std::string("'") + key + "' must contain numbers");
      out.push_back(x.get<double>());
    }
    return out;
  }

 private:
  const Json& j_;
};

class Experiment {
 public:
  Experiment(std::string name, const Json& config, const RunContext& ctx)
      : name_(std::move(name)), cfg_(config), ctx_(ctx), salt_(fnv1a64(name_)) {
    report_.experiment = name_;
    report_.config = config;
    report_.seed = ctx.seed;
    report_.pass = true;
  }

  const Cfg& cfg() const { return cfg_; }
  unsigned threads() const { return ctx_.threads; }

  std::size_t n(const char* key = "n") const {
    const double scaled = std::round(static_cast<double>(cfg_.count(key)) * ctx_.n_scale);
    return static_cast<std::size_t>(std::max(100.0, scaled));
  }

  RandomStream stream(std::size_t replicate, std::uint64_t sub = 0) const {
    return RandomStream(ctx_.seed, replicate, salt_ + sub);
  }

  void add(ReportRow row) {
    if (row.verdict == Verdict::Fail) report_.pass = false;
    report_.rows.push_back(std::move(row));
  }
  void note(std::string s) { report_.notes.push_back(std::move(s)); }

  /// |p_hat - target| <= 4 sigma(target).
  void binomial(const std::string& label, double x, std::size_t k, std::size_t n, double target,
                bool decisive = true) {
    const auto est = wilson(k, n, ctx_.seed);
    const double sigma = binomial_sigma(target, n);
    const bool ok = std::abs(est.p_hat - target) <= kSigmas * sigma;
    add({label, x, n, est.p_hat, est.ci_lo, est.ci_hi, target, sigma, kNaN,
         decisive ? (ok ? Verdict::Pass : Verdict::Fail) : Verdict::Info});
  }

  /// Two-sample KS; `expect_equal` selects p > level or p < level.
  void ks(const std::string& label, double x, const std::vector<double>& a,
          const std::vector<double>& b, bool expect_equal = true) {
    const auto r = ks_two_sample(a, b);
    const bool ok = expect_equal ? r.p_value > kKsLevel : r.p_value < kKsLevel;
    add({label, x, r.n1, r.statistic, kNaN, kNaN, kNaN, kNaN, r.p_value,
         ok ? Verdict::Pass : Verdict::Fail});
  }

  ExperimentReport finish() { return std::move(report_); }

 private:
  std::string name_;
  Cfg cfg_;
  RunContext ctx_;
  std::uint64_t salt_;
  ExperimentReport report_;
};

struct Pair {
  StatRecord a;
  StatRecord b;
};

void ks_stats(Experiment& ex, const std::string& prefix, const std::vector<Pair>& s,
              bool expect_equal = true) {
  std::vector<double> ca, cb, ba, bb;
  for (const auto& p : s) {
    ca.push_back(static_cast<double>(p.a.cell_count));
    cb.push_back(static_cast<double>(p.b.cell_count));
    ba.push_back(p.a.boundary);
    bb.push_back(p.b.boundary);
  }
  ex.ks(prefix + "cell_count", kNaN, ca, cb, expect_equal);
  ex.ks(prefix + "boundary", kNaN, ba, bb, expect_equal);
}

// ---------------------------------------------------------------------------

void first_split(Experiment& ex) {
  const auto& c = ex.cfg();
  const auto m = c.measure("measure");
  const auto w = c.poly("window");
  const double t = c.positive("t");
  const auto method = c.str("method") == "rejection" ? Method::Rejection : Method::Direct;
  const std::size_t n = ex.n();
  const auto survived = parallel_map(n, ex.threads(), [&](std::size_t i) -> char {
    auto rng = ex.stream(i);
    return simulate(m, w, t, rng, method).jump_times().empty() ? 1 : 0;
  });
  const auto k = static_cast<std::size_t>(std::count(survived.begin(), survived.end(), 1));
  ex.binomial("survival", t, k, n, std::exp(-t * measure_hitting(m, w)));
}

void method_equivalence(Experiment& ex) {
  const auto& c = ex.cfg();
  const auto m = c.measure("measure");
  const auto w = c.poly("window");
  const double t = c.positive("t");
  const auto s = parallel_map(ex.n(), ex.threads(), [&](std::size_t i) {
    auto r1 = ex.stream(i, 1);
    auto r2 = ex.stream(i, 2);
    return Pair{summary_stats(slice(simulate(m, w, t, r1, Method::Rejection)), m),
                summary_stats(slice(simulate(m, w, t, r2, Method::Direct)), m)};
  });
  ks_stats(ex, "", s);
}

void consistency(Experiment& ex) {
  const auto& c = ex.cfg();
  const auto m = c.measure("measure");
  const auto w = c.poly("window");
  const auto inner = c.poly("inner");
  const double t = c.positive("t");
  if (!contains(w, inner, false)) throw ConfigError("'inner' must lie inside 'window'");
  const auto s = parallel_map(ex.n(), ex.threads(), [&](std::size_t i) {
    auto r1 = ex.stream(i, 1);
    auto r2 = ex.stream(i, 2);
    return Pair{summary_stats(restrict(slice(simulate(m, w, t, r1)), inner), m),
                summary_stats(slice(simulate(m, inner, t, r2)), m)};
  });
  ks_stats(ex, "", s);
}

void iteration(Experiment& ex) {
  const auto& c = ex.cfg();
  const auto m = c.measure("measure");
  const auto w = c.poly("window");
  const double t = c.positive("t");
  const double s_time = c.positive("s");
  const auto s = parallel_map(ex.n(), ex.threads(), [&](std::size_t i) {
    auto r1 = ex.stream(i, 1);
    auto r2 = ex.stream(i, 2);
    const auto direct = slice(simulate(m, w, t + s_time, r1));
    const auto base = slice(simulate(m, w, t, r2));
    std::vector<Tessellation> nests;
    for (std::size_t k = 0; k < base.cells.size(); ++k) {
      auto rk = ex.stream(i, 3 + k);
      nests.push_back(slice(simulate(m, w, s_time, rk)));
    }
    return Pair{summary_stats(direct, m), summary_stats(iterate(base, nests), m)};
  });
  ks_stats(ex, "", s);
}

void stit_property(Experiment& ex) {
  const auto& c = ex.cfg();
  const auto m = c.measure("measure");
  const auto w = c.poly("window");
  const double t = c.positive("t");
  const double factor = c.positive("power_factor");
  const auto half = scale(w, 0.5);
  struct Triple {
    StatRecord y;
    StatRecord scaled;
    StatRecord power;
  };
  const auto s = parallel_map(ex.n(), ex.threads(), [&](std::size_t i) {
    auto r1 = ex.stream(i, 1);
    auto r2 = ex.stream(i, 2);
    auto r3 = ex.stream(i, 3);
    return Triple{summary_stats(slice(simulate(m, w, t, r1)), m),
                  summary_stats(scale(slice(simulate(m, half, 2.0 * t, r2)), 2.0), m),
                  summary_stats(scale(slice(simulate(m, half, factor * t, r3)), 2.0), m)};
  });
  std::vector<Pair> same, power;
  for (const auto& x : s) {
    same.push_back({x.y, x.scaled});
    power.push_back({x.y, x.power});
  }
  ks_stats(ex, "", same);
  std::vector<double> a, b;
  for (const auto& p : power) {
    a.push_back(static_cast<double>(p.a.cell_count));
    b.push_back(static_cast<double>(p.b.cell_count));
  }
  ex.ks("power_cell_count", factor, a, b, false);
}

void capacity(Experiment& ex) {
  const auto& c = ex.cfg();
  const auto m = c.measure("measure");
  const auto w = c.poly("window");
  const auto inner = c.poly("inner");
  const double t = c.positive("t");
  if (!contains(w, inner, false)) throw ConfigError("'inner' must lie inside 'window'");
  const std::size_t n = ex.n();
  const auto trivial = parallel_map(n, ex.threads(), [&](std::size_t i) -> char {
    auto rng = ex.stream(i);
    return restrict(slice(simulate(m, w, t, rng)), inner).cells.size() == 1 ? 1 : 0;
  });
  const auto k = static_cast<std::size_t>(std::count(trivial.begin(), trivial.end(), 1));
  ex.binomial("trivial", t, k, n, std::exp(-t * measure_hitting(m, inner)));
}

void encapsulation_grid(Experiment& ex, const EncapsulationProblem& p, bool equality) {
  const auto grid = ex.cfg().grid("t_grid");
  for (double t : grid) {
    if (!(t > 0.0)) throw ConfigError("'t_grid' entries must be positive");
  }
  const double horizon = *std::max_element(grid.begin(), grid.end());
  const std::size_t n = ex.n();
  const auto times = parallel_map(n, ex.threads(), [&](std::size_t i) {
    auto rng = ex.stream(i);
    return sample_encapsulation_time(p.measure, p.inner, p.outer, horizon, rng);
  });
  const auto params = bound_params(p);
  for (double t : grid) {
    const auto k = static_cast<std::size_t>(
        std::count_if(times.begin(), times.end(), [&](double a) { return std::isfinite(a) && a <= t; }));
    const double target = lower_bound(t, params);
    const std::string label = std::isfinite(t) ? "P(aS<=t)" : "P(aS<inf)";
    if (equality) {
      ex.binomial(label, t, k, n, target);
    } else {
      const auto est = wilson(k, n);
      const double sigma = binomial_sigma(target, n);
      const bool ok = est.p_hat >= target - kSigmas * sigma;
      ex.add({label, t, n, est.p_hat, est.ci_lo, est.ci_hi, target, sigma, kNaN,
              ok ? Verdict::Pass : Verdict::Fail});
    }
  }
  ex.note("lambda_inner=" + format_double(params.lambda_inner) + " q=" + std::to_string(params.q()));
}

void encapsulation_equality(Experiment& ex) {
  const auto& c = ex.cfg();
  encapsulation_grid(ex, box_in_box(c.positive("alpha"), c.positive("beta"), c.vec("g")), true);
}

void encapsulation_bound(Experiment& ex) {
  const auto& c = ex.cfg();
  WindowKnobs k{c.positive("offset"), c.positive("band_lo"), c.positive("band_hi"),
                c.positive("arc_half_width")};
  encapsulation_grid(ex, build_window(c.poly("inner"), c.measure("measure"), k), false);
}

void coupled_inclusion(Experiment& ex) {
  const auto& c = ex.cfg();
  const auto p = box_in_box(c.positive("alpha"), c.positive("beta"), c.vec("g"));
  const double t = c.positive("t");
  SimulateOptions opt;
  opt.method = Method::Rejection;
  opt.roi = {p.inner};
  struct Outcome {
    char occurred;
    char encapsulated;
  };
  const std::size_t n = ex.n();
  const auto out = parallel_map(n, ex.threads(), [&](std::size_t i) {
    auto rng = ex.stream(i);
    const auto tree = simulate(p.measure, p.outer, t, rng, opt);
    const auto ev = sufficient_event_from_marks(p, zero_lineage_marks(tree));
    return Outcome{ev.occurred_by(t) ? char{1} : char{0},
                   encapsulation_time(tree, p.inner) <= t ? char{1} : char{0}};
  });
  std::size_t occurred = 0, violations = 0, mismatches = 0, encapsulated = 0;
  for (const auto& o : out) {
    occurred += o.occurred;
    encapsulated += o.encapsulated;
    violations += (o.occurred && !o.encapsulated) ? 1 : 0;
    mismatches += (o.occurred != o.encapsulated) ? 1 : 0;
  }
  const double nn = static_cast<double>(n);
  ex.add({"violations", t, n, static_cast<double>(violations), kNaN, kNaN, 0.0, 0.0, kNaN,
          violations == 0 ? Verdict::Pass : Verdict::Fail});
  ex.add({"equality_mismatches", t, n, static_cast<double>(mismatches), kNaN, kNaN, 0.0, 0.0, kNaN,
          Verdict::Info});
  ex.binomial("P(sufficient event)", t, occurred, n, lower_bound(t, bound_params(p)));
  ex.add({"P(aS<=t)", t, n, static_cast<double>(encapsulated) / nn, kNaN, kNaN, kNaN, kNaN, kNaN,
          Verdict::Info});
}

void cond_independence(Experiment& ex) {
  const auto& c = ex.cfg();
  const double alpha = c.positive("alpha");
  const double beta = c.positive("beta");
  const auto p = box_in_box(alpha, beta, c.vec("g"));
  const auto params = bound_params(p);
  const double eps = c.positive("eps");
  const double t = c.positive("t");
  const double t2 = c.positive("t2_factor") * t_star(eps, params.lambda_inner);
  if (!(t2 < t)) throw ConfigError("need t2 < t");
  const double L = *std::min_element(params.band_masses.begin(), params.band_masses.end());
  const double r = r_of_s(t2, eps, L, p.inner.dim());
  const auto outer = scale(p.outer, r);
  const double reach = r * beta;
  const double probe_x = reach + c.positive("probe_gap");
  const double half_len = 0.5 * c.positive("probe_length");
  const auto probe = PointSet::segment({probe_x, -half_len}, {probe_x, half_len});
  const double big = probe_x + c.positive("margin");
  const Polytope window = Box::cube(2, big);
  SimulateOptions opt;
  opt.roi = {p.inner};
  opt.roi_sets = {probe};
  const std::size_t n = ex.n();
  struct Outcome {
    char cond;
    char d;
    char e;
  };
  const auto out = parallel_map(n, ex.threads(), [&](std::size_t i) {
    auto rng = ex.stream(i);
    const auto tree = simulate(p.measure, window, t, rng, opt);
    const auto tess = slice(tree);
    const bool cond = encapsulation_time(tree, p.inner, outer) < t2;
    const bool d = contains(tree.node(tree.zero_cell_id(t)).polytope, p.inner, false);
    return Outcome{cond ? char{1} : char{0}, d ? char{1} : char{0},
                   uncut(tess, probe) ? char{1} : char{0}};
  });
  std::vector<char> dv, ev;
  for (const auto& o : out) {
    if (!o.cond) continue;
    dv.push_back(o.d);
    ev.push_back(o.e);
  }
  const std::size_t min_cond = c.count("min_conditioned");
  if (dv.size() < min_cond) {
    throw TooFewConditioned(std::to_string(dv.size()) + " conditioned replicates, need " +
                            std::to_string(min_cond));
  }
  const auto g = covariance_gap(dv, ev);
  ex.add({"conditioned_gap", t2, g.n, g.gap, g.gap - kSigmas * g.sigma, g.gap + kSigmas * g.sigma,
          0.0, g.sigma, kNaN, std::abs(g.gap) <= kSigmas * g.sigma ? Verdict::Pass : Verdict::Fail});
  ex.add({"conditioning_rate", t2, n, static_cast<double>(dv.size()) / static_cast<double>(n), kNaN,
          kNaN, kNaN, kNaN, kNaN, Verdict::Info});
  ex.add({"P(D|cond)", t2, g.n, g.p_d, kNaN, kNaN, kNaN, kNaN, kNaN, Verdict::Info});
  ex.add({"P(E|cond)", t2, g.n, g.p_e, kNaN, kNaN, kNaN, kNaN, kNaN, Verdict::Info});

  // Contrast: adjacent windows, no conditioning.
  const Polytope adjacent = Box({alpha, -alpha}, {3.0 * alpha, alpha});
  const Polytope contrast_window = Box({-alpha, -alpha}, {3.0 * alpha, alpha});
  const auto contrast = parallel_map(n, ex.threads(), [&](std::size_t i) {
    auto rng = ex.stream(i, 1);
    const auto tess = slice(simulate(p.measure, contrast_window, t, rng));
    return Outcome{1, uncut(tess, p.inner) ? char{1} : char{0},
                   uncut(tess, adjacent) ? char{1} : char{0}};
  });
  dv.clear();
  ev.clear();
  for (const auto& o : contrast) {
    dv.push_back(o.d);
    ev.push_back(o.e);
  }
  const auto gc = covariance_gap(dv, ev);
  ex.add({"contrast_gap_adjacent", 0.0, gc.n, gc.gap, gc.gap - kSigmas * gc.sigma,
          gc.gap + kSigmas * gc.sigma, 0.0, gc.sigma, kNaN, Verdict::Info});
  ex.note("t2=" + format_double(t2) + " r=" + format_double(r) + " outer_half_side=" +
          format_double(reach) + " probe_x=" + format_double(probe_x));
}

void mixing(Experiment& ex) {
  const auto& c = ex.cfg();
  const auto g = c.vec("g");
  const auto m = DrivingMeasure::axis_orthogonal(g);
  const double t = c.positive("t");
  const double rho = c.positive("rho");
  const double a = c.positive("half_length");
  const auto hs = c.grid("h_grid");
  const std::size_t n = ex.n();
  const auto segment = PointSet::segment({-a, 0.0}, {a, 0.0});
  const double p_d = 1.0 - std::exp(-rho * measure_hitting(m, segment));
  const double stit_p_d = 1.0 - std::exp(-t * measure_hitting(m, segment));

  std::vector<GapEstimate> stit_gaps;
  for (std::size_t k = 0; k < hs.size(); ++k) {
    const double h = hs[k];
    if (!(h > 0.0) || !std::isfinite(h)) throw ConfigError("'h_grid' entries must be positive");
    const auto shifted = translate(segment, {0.0, h});
    const Polytope window = Box({-a - 1.0, -1.0}, {a + 1.0, h + 1.0});
    SimulateOptions opt;
    opt.roi_sets = {segment, shifted};
    struct Outcome {
      char d;
      char e;
    };
    const auto stit = parallel_map(n, ex.threads(), [&](std::size_t i) {
      auto rng = ex.stream(i, 2 * k);
      const auto tess = slice(simulate(m, window, t, rng, opt));
      return Outcome{uncut(tess, segment) ? char{0} : char{1},
                     uncut(tess, shifted) ? char{0} : char{1}};
    });
    const auto pht = parallel_map(n, ex.threads(), [&](std::size_t i) {
      auto rng = ex.stream(i, 2 * k + 1);
      const auto pattern = simulate_pht(m, rho, window, rng);
      return Outcome{tail_event_hits_ball(pattern, segment) ? char{1} : char{0},
                     tail_event_hits_ball(pattern, shifted) ? char{1} : char{0}};
    });
    std::vector<char> d, e;
    for (const auto& o : stit) {
      d.push_back(o.d);
      e.push_back(o.e);
    }
    const auto gs = covariance_gap(d, e);
    stit_gaps.push_back(gs);
    const bool last = k + 1 == hs.size();
    ex.add({"stit_gap", h, n, std::abs(gs.gap), kNaN, kNaN, 0.0, gs.sigma, kNaN,
            last ? (std::abs(gs.gap) <= 2.0 * gs.sigma ? Verdict::Pass : Verdict::Fail)
                 : Verdict::Info});
    ex.binomial("stit_P(D)", h, static_cast<std::size_t>(std::count(d.begin(), d.end(), 1)), n,
                stit_p_d);

    d.clear();
    e.clear();
    for (const auto& o : pht) {
      d.push_back(o.d);
      e.push_back(o.e);
    }
    const auto gp = covariance_gap(d, e);
    const double target = p_d * (1.0 - p_d);
    ex.add({"pht_gap", h, n, std::abs(gp.gap), kNaN, kNaN, target, gp.sigma, kNaN,
            std::abs(std::abs(gp.gap) - target) <= kSigmas * gp.sigma ? Verdict::Pass
                                                                      : Verdict::Fail});
    ex.binomial("pht_P(D)", h, static_cast<std::size_t>(std::count(d.begin(), d.end(), 1)), n, p_d);
  }
  for (std::size_t k = 0; k + 1 < stit_gaps.size(); ++k) {
    const double g0 = std::abs(stit_gaps[k].gap);
    const double g1 = std::abs(stit_gaps[k + 1].gap);
    const double s = std::hypot(stit_gaps[k].sigma, stit_gaps[k + 1].sigma);
    ex.add({"stit_gap_step", hs[k + 1], n, g1 - g0, kNaN, kNaN, 0.0, s, kNaN,
            g1 - g0 <= kSigmas * s ? Verdict::Pass : Verdict::Fail});
  }
}

void pht_capacity(Experiment& ex) {
  const auto& c = ex.cfg();
  const auto m = c.measure("measure");
  const double rho = c.positive("rho");
  const auto w = c.poly("window");
  const auto body = c.poly("body");
  if (!contains(w, body, false)) throw ConfigError("'body' must lie inside 'window'");
  const std::size_t n = ex.n();
  const auto empty = parallel_map(n, ex.threads(), [&](std::size_t i) -> char {
    auto rng = ex.stream(i);
    return tail_event_hits_ball(simulate_pht(m, rho, w, rng), body) ? 0 : 1;
  });
  const auto k = static_cast<std::size_t>(std::count(empty.begin(), empty.end(), 1));
  ex.binomial("avoidance", rho, k, n, empty_probability(m, rho, body));
}

void no_jump(Experiment& ex) {
  const auto& c = ex.cfg();
  const auto m = c.measure("measure");
  const auto inner = c.poly("inner");
  const double t = c.positive("t");
  auto grid = c.grid("t2_grid");
  std::sort(grid.begin(), grid.end());
  for (double x : grid) {
    if (!(x > 0.0 && x < t)) throw ConfigError("'t2_grid' entries must lie in (0, t)");
  }
  const std::size_t n = ex.n();
  struct Outcome {
    std::vector<char> quiet;
    double zeta;
  };
  const auto out = parallel_map(n, ex.threads(), [&](std::size_t i) {
    auto rng = ex.stream(i);
    const auto tree = simulate(m, inner, t, rng);
    Outcome o{{}, summary_stats(slice(tree), m).zeta};
    for (double t2 : grid) {
      const auto& j = tree.jump_times();
      const bool jump = std::any_of(j.begin(), j.end(), [&](double x) { return x >= t - t2 && x < t; });
      o.quiet.push_back(jump ? 0 : 1);
    }
    return o;
  });
  double zeta = 0.0;
  for (const auto& o : out) zeta += o.zeta;
  zeta /= static_cast<double>(n);
  std::vector<EstimateWithCI> est;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    std::size_t k = 0;
    for (const auto& o : out) k += static_cast<std::size_t>(o.quiet[g]);
    est.push_back(wilson(k, n, 0));
    const double target = std::exp(-grid[g] * zeta);
    ex.add({"no_jump", grid[g], n, est.back().p_hat, est.back().ci_lo, est.back().ci_hi, target,
            binomial_sigma(target, n), kNaN, Verdict::Info});
  }
  for (std::size_t g = 0; g + 1 < est.size(); ++g) {
    const double s = std::hypot(binomial_sigma(est[g].p_hat, n), binomial_sigma(est[g + 1].p_hat, n));
    const double step = est[g + 1].p_hat - est[g].p_hat;
    ex.add({"no_jump_step", grid[g + 1], n, step, kNaN, kNaN, 0.0, s, kNaN,
            step <= 2.0 * s ? Verdict::Pass : Verdict::Fail});
  }
  ex.note("mean zeta at t=" + format_double(zeta));
}

struct Entry {
  std::function<void(Experiment&)> run;
  std::function<Json()> defaults;
};

const std::map<std::string, Entry>& registry() {
  static const std::map<std::string, Entry> r = {
      {"first_split",
       {first_split,
        [] {
          return Json{{"measure", lambda_perp_json()}, {"window", square_json(1)}, {"t", 0.25},
                      {"n", 10000}, {"method", "direct"}};
        }}},
      {"method_equivalence",
       {method_equivalence,
        [] {
          return Json{{"measure", lambda_perp_json()}, {"window", square_json(1)}, {"t", 1.0},
                      {"n", 5000}};
        }}},
      {"consistency",
       {consistency,
        [] {
          return Json{{"measure", lambda_perp_json()}, {"window", square_json(2)},
                      {"inner", square_json(1)}, {"t", 1.0}, {"n", 5000}};
        }}},
      {"iteration",
       {iteration,
        [] {
          return Json{{"measure", lambda_perp_json()}, {"window", square_json(2)}, {"t", 0.5},
                      {"s", 0.5}, {"n", 3000}};
        }}},
      {"stit_property",
       {stit_property,
        [] {
          return Json{{"measure", lambda_perp_json()}, {"window", square_json(2)}, {"t", 0.5},
                      {"n", 5000}, {"power_factor", 3.0}};
        }}},
      {"capacity",
       {capacity,
        [] {
          return Json{{"measure", lambda_perp_json()}, {"window", square_json(2)},
                      {"inner", square_json(1)}, {"t", 0.25}, {"n", 10000}};
        }}},
      {"encapsulation_equality",
       {encapsulation_equality,
        [] {
          return Json{{"g", {1.0, 1.0}}, {"alpha", 1.0}, {"beta", 2.0},
                      {"t_grid", {0.5, 1.0, 2.0, 4.0, 8.0, "inf"}}, {"n", 20000}};
        }}},
      {"encapsulation_bound",
       {encapsulation_bound,
        [] {
          return Json{{"measure", {{"gamma", 1.0}, {"directional", {{"kind", "isotropic2d"}}}}},
                      {"inner", square_json(1)},
                      {"t_grid", {0.5, 1.0, 2.0, 4.0, 8.0, "inf"}},
                      {"n", 10000},
                      {"offset", 3.0},
                      {"band_lo", 1.0},
                      {"band_hi", 2.0},
                      {"arc_half_width", std::numbers::pi / 16}};
        }}},
      {"coupled_inclusion",
       {coupled_inclusion,
        [] {
          return Json{{"g", {1.0, 1.0}}, {"alpha", 1.0}, {"beta", 2.0}, {"t", 4.0}, {"n", 10000}};
        }}},
      {"cond_independence",
       {cond_independence,
        [] {
          return Json{{"g", {1.0, 1.0}},     {"alpha", 1.0},      {"beta", 2.0},
                      {"eps", 0.19},         {"t2_factor", 0.9},  {"t", 0.2},
                      {"probe_gap", 4.0},    {"probe_length", 1.0}, {"margin", 8.0},
                      {"n", 20000},          {"min_conditioned", 200}};
        }}},
      {"mixing",
       {mixing,
        [] {
          return Json{{"g", {1.0, 1.0}}, {"t", 1.0}, {"rho", 1.0}, {"half_length", 1.0},
                      {"h_grid", {2.0, 4.0, 8.0, 16.0, 32.0}}, {"n", 20000}};
        }}},
      {"pht_capacity",
       {pht_capacity,
        [] {
          return Json{{"measure", lambda_perp_json()}, {"rho", 1.0}, {"window", square_json(4)},
                      {"body", square_json(1)}, {"n", 100000}};
        }}},
      {"no_jump",
       {no_jump,
        [] {
          return Json{{"measure", lambda_perp_json()}, {"inner", square_json(1)}, {"t", 1.0},
                      {"t2_grid", {0.001, 0.01, 0.05, 0.1, 0.2}}, {"n", 10000}};
        }}},
  };
  return r;
}

std::string csv_num(double x) { return std::isnan(x) ? "" : format_double(x); }

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [k, e] : registry()) v.push_back(k);
    return v;
  }();
  return names;
}

bool has_experiment(const std::string& name) { return registry().count(name) > 0; }

Json default_config(const std::string& name) {
  const auto it = registry().find(name);
  if (it == registry().end()) throw ConfigError("unknown experiment '" + name + "'");
  return it->second.defaults();
}

ExperimentReport run_experiment(const std::string& name, const Json& overrides,
                                const RunContext& ctx) {
  Json config = default_config(name);
  if (!overrides.is_null()) {
    if (!overrides.is_object()) throw ConfigError("experiment overrides must be an object");
    for (auto it = overrides.begin(); it != overrides.end(); ++it) {
      if (!config.contains(it.key())) {
        throw ConfigError("unknown key '" + it.key() + "' for experiment " + name);
      }
      config[it.key()] = it.value();
    }
  }
  if (!(ctx.n_scale > 0.0) || !std::isfinite(ctx.n_scale)) throw ConfigError("n-scale must be positive");
  Experiment ex(name, config, ctx);
  try {
    registry().at(name).run(ex);
  } catch (const Json::exception& e) {
    throw ConfigError(e.what());
  }
  if (ctx.n_scale != 1.0) ex.note("sample sizes scaled by " + format_double(ctx.n_scale));
  return ex.finish();
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "PASS";
    case Verdict::Fail:
      return "FAIL";
    case Verdict::Info:
      return "INFO";
  }
  return "INFO";
}

std::string to_csv(const ExperimentReport& r) {
  std::ostringstream os;
  os << "label,x,n,estimate,ci_lo,ci_hi,target,sigma,p_value,verdict\n";
  for (const auto& row : r.rows) {
    os << row.label << ',' << (std::isinf(row.x) ? "inf" : csv_num(row.x)) << ',' << row.n << ','
       << csv_num(row.estimate) << ',' << csv_num(row.ci_lo) << ',' << csv_num(row.ci_hi) << ','
       << csv_num(row.target) << ',' << csv_num(row.sigma) << ',' << csv_num(row.p_value) << ','
       << verdict_name(row.verdict) << '\n';
  }
  return os.str();
}

Json summary_json(const ExperimentReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    auto num = [](double x) { return std::isfinite(x) ? Json(x) : (std::isinf(x) ? Json("inf") : Json(nullptr)); };
    rows.push_back({{"label", row.label},
                    {"x", num(row.x)},
                    {"n", row.n},
                    {"estimate", num(row.estimate)},
                    {"ci_lo", num(row.ci_lo)},
                    {"ci_hi", num(row.ci_hi)},
                    {"target", num(row.target)},
                    {"sigma", num(row.sigma)},
                    {"p_value", num(row.p_value)},
                    {"verdict", verdict_name(row.verdict)}});
  }
  return {{"experiment", r.experiment},
          {"config_hash", config_hash(r.config)},
          {"seed", r.seed},
          {"pass", r.pass},
          {"config", r.config},
          {"rows", rows},
          {"notes", r.notes}};
}

}  // namespace stit

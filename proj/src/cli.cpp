// SPDX-License-Identifier: Apache-2.0
#include "stit/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "stit/encapsulation.hpp"
#include "stit/errors.hpp"
#include "stit/experiments.hpp"
#include "stit/pht.hpp"
#include "stit/serialize.hpp"
#include "stit/stit_process.hpp"

namespace stit {

namespace {

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ConfigError("malformed JSON in '" + path + "': " + e.what());
  }
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

void require_keys(const Json& j, std::initializer_list<const char*> allowed, const char* what) {
  if (!j.is_object()) throw ConfigError(std::string(what) + " must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::find_if(allowed.begin(), allowed.end(),
                     [&](const char* k) { return it.key() == k; }) == allowed.end()) {
      throw ConfigError("unknown key '" + it.key() + "' in " + what);
    }
  }
}

struct SimulateArgs {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string svg;
  unsigned threads = 0;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  const Json cfg = read_json_file(a.config);
  require_keys(cfg, {"process", "measure", "window", "t", "method", "rho", "seed"}, "simulate config");
  const std::string process = cfg.value("process", "stit");
  const auto m = measure_from_json(cfg.at("measure"));
  const auto w = polytope_from_json(cfg.at("window"));
  const std::uint64_t seed = a.seed ? *a.seed : cfg.value("seed", std::uint64_t{1});
  RandomStream rng(seed);
  Json result{{"config_hash", config_hash(cfg)}, {"seed", seed}};
  std::optional<Tessellation> tess;
  if (process == "stit") {
    if (!cfg.contains("t") || !cfg.at("t").is_number()) throw ConfigError("'t' must be a number");
    const std::string method = cfg.value("method", "direct");
    if (method != "direct" && method != "rejection") throw ConfigError("unknown method '" + method + "'");
    const auto tree = simulate(m, w, cfg.at("t").get<double>(), rng,
                               method == "rejection" ? Method::Rejection : Method::Direct);
    result["tree"] = to_json(tree);
    if (!a.svg.empty()) tess = slice(tree);
  } else if (process == "pht") {
    const double rho = cfg.value("rho", 1.0);
    const auto pattern = simulate_pht(m, rho, w, rng);
    Json hs = Json::array();
    for (const auto& h : pattern.hyperplanes) hs.push_back(to_json(h));
    result["pattern"] = {{"window", to_json(w)}, {"rho", rho}, {"hyperplanes", hs}};
    if (!a.svg.empty()) tess = pht_cells(pattern);
  } else {
    throw ConfigError("unknown process '" + process + "'");
  }
  const std::string text = canonical_dump(result) + "\n";
  if (a.out.empty()) {
    out << text;
  } else {
    write_file(a.out, text);
  }
  if (tess) write_file(a.svg, to_svg(*tess));
  return kExitOk;
}

struct BoundArgs {
  std::string config;
  std::optional<double> lambda;
  std::vector<double> masses;
  std::vector<double> t_grid;
};

int cmd_bound(const BoundArgs& a, std::ostream& out) {
  BoundParams p{0.0, a.masses};
  std::vector<double> grid = a.t_grid;
  if (!a.config.empty()) {
    const Json cfg = read_json_file(a.config);
    require_keys(cfg, {"lambda_inner", "masses", "t_grid"}, "bound config");
    try {
      p.lambda_inner = cfg.at("lambda_inner").get<double>();
      p.band_masses = cfg.at("masses").get<std::vector<double>>();
      if (cfg.contains("t_grid")) grid = cfg.at("t_grid").get<std::vector<double>>();
    } catch (const Json::exception& e) {
      throw ConfigError(e.what());
    }
  }
  if (a.lambda) p.lambda_inner = *a.lambda;
  if (p.band_masses.empty()) throw ConfigError("no band masses given");
  if (grid.empty()) throw ConfigError("no t grid given");
  for (double m : p.band_masses) {
    if (!(m > 0.0)) throw ConfigError("band masses must be positive");
  }
  if (!(p.lambda_inner > 0.0)) throw ConfigError("Lambda([W']) must be positive");
  std::ostringstream os;
  os << "t,lower_bound\n";
  for (double t : grid) {
    if (!(t >= 0.0)) throw ConfigError("t must be non-negative");
    os << (std::isinf(t) ? "inf" : format_double(t)) << ',' << format_double(lower_bound(t, p)) << '\n';
  }
  out << os.str();
  return kExitOk;
}

struct VerifyArgs {
  std::string name;
  std::string config;
  std::uint64_t seed = 1;
  double n_scale = 1.0;
  unsigned threads = 0;
  std::string out = "reports";
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  std::vector<std::string> names;
  if (a.name == "all") {
    names = experiment_names();
  } else if (has_experiment(a.name)) {
    names = {a.name};
  } else {
    throw ConfigError("unknown experiment '" + a.name + "'");
  }
  Json overrides = Json::object();
  if (!a.config.empty()) overrides = read_json_file(a.config);
  if (!overrides.is_object()) throw ConfigError("verify config must be a JSON object");
  if (a.name == "all") {
    for (auto it = overrides.begin(); it != overrides.end(); ++it) {
      if (!has_experiment(it.key())) throw ConfigError("unknown experiment '" + it.key() + "'");
    }
  }
  RunContext ctx{a.seed, a.n_scale, a.threads};
  std::filesystem::create_directories(a.out);
  bool all_pass = true;
  for (const auto& name : names) {
    Json ov = a.name == "all" ? overrides.value(name, Json::object()) : overrides;
    const auto report = run_experiment(name, ov, ctx);
    write_file((std::filesystem::path(a.out) / (name + ".csv")).string(), to_csv(report));
    write_file((std::filesystem::path(a.out) / (name + ".json")).string(),
               canonical_dump(summary_json(report)) + "\n");
    out << name << ' ' << (report.pass ? "PASS" : "FAIL") << '\n';
    all_pass = all_pass && report.pass;
  }
  if (a.n_scale < 1.0) out << "note: sample sizes reduced by --n-scale; statistical power is lower\n";
  return all_pass ? kExitOk : kExitVerifyFail;
}

int exit_code_for(const Error& e) {
  const auto& k = e.kind();
  if (k == "ConfigError" || k == "InvalidArgument" || k == "RegimeMismatch" ||
      k == "UnsupportedSupport" || k == "NonPositiveScale" || k == "WindowMismatch") {
    return kExitConfig;
  }
  return kExitRuntime;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"STIT tessellation simulator and verification harness", "stit"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* s = app.add_subcommand("simulate", "Simulate a tessellation and write it as JSON");
  s->add_option("--config", sim.config, "JSON run configuration")->required();
  s->add_option("--seed", sim.seed, "Random seed (overrides the config)");
  s->add_option("--out", sim.out, "Output JSON path (stdout if omitted)");
  s->add_option("--svg", sim.svg, "Also render a 2-D SVG to this path");
  s->add_option("--threads", sim.threads, "Worker threads (a single trajectory is sequential)");

  BoundArgs bnd;
  auto* b = app.add_subcommand("bound", "Print the encapsulation lower bound on a t grid as CSV");
  b->add_option("--config", bnd.config, "JSON with lambda_inner, masses and t_grid");
  b->add_option("--lambda", bnd.lambda, "Lambda([W'])");
  b->add_option("--masses", bnd.masses, "Band masses")->delimiter(',');
  b->add_option("--t-grid", bnd.t_grid, "Time grid")->delimiter(',');

  VerifyArgs ver;
  auto* v = app.add_subcommand("verify", "Run a named experiment or 'all'");
  v->add_option("experiment", ver.name, "Experiment name or 'all'")->required();
  v->add_option("--config", ver.config, "JSON overrides");
  v->add_option("--seed", ver.seed, "Random seed");
  v->add_option("--n-scale", ver.n_scale, "Multiplier for every sample size");
  v->add_option("--threads", ver.threads, "Worker threads (0 = all cores)");
  v->add_option("--out", ver.out, "Report directory");

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    if (s->parsed()) return cmd_simulate(sim, out);
    if (b->parsed()) return cmd_bound(bnd, out);
    return cmd_verify(ver, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace stit

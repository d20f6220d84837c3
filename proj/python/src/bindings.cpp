// SPDX-License-Identifier: Apache-2.0
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "stit/cli.hpp"
#include "stit/encapsulation.hpp"
#include "stit/errors.hpp"
#include "stit/experiments.hpp"
#include "stit/pht.hpp"
#include "stit/serialize.hpp"

namespace py = pybind11;
using namespace stit;

namespace {

// Complex values cross the boundary as canonical JSON text.
Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw ConfigError(e.what());
  }
}

std::string simulate_json(const std::string& measure, const std::string& window, double t,
                          std::uint64_t seed, const std::string& method) {
  if (method != "direct" && method != "rejection") throw ConfigError("unknown method '" + method + "'");
  RandomStream rng(seed);
  const auto tree = simulate(measure_from_json(parse(measure)), polytope_from_json(parse(window)), t,
                             rng, method == "rejection" ? Method::Rejection : Method::Direct);
  return canonical_dump(to_json(tree));
}

std::string simulate_pht_json(const std::string& measure, const std::string& window, double rho,
                              std::uint64_t seed) {
  RandomStream rng(seed);
  const auto w = polytope_from_json(parse(window));
  const auto pattern = simulate_pht(measure_from_json(parse(measure)), rho, w, rng);
  Json hs = Json::array();
  for (const auto& h : pattern.hyperplanes) hs.push_back(to_json(h));
  return canonical_dump(Json{{"window", to_json(w)}, {"rho", rho}, {"hyperplanes", hs}});
}

std::string verify_json(const std::string& name, const std::string& overrides, std::uint64_t seed,
                        double n_scale, unsigned threads) {
  const auto report = run_experiment(name, parse(overrides), RunContext{seed, n_scale, threads});
  return canonical_dump(summary_json(report));
}

py::tuple cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "STIT tessellation simulator";

  auto base = py::register_exception<Error>(m, "StitError", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());

  m.def("measure_hitting",
        [](const std::string& measure, const std::string& body) {
          return measure_hitting(measure_from_json(parse(measure)), polytope_from_json(parse(body)));
        },
        py::arg("measure"), py::arg("body"));
  m.def("simulate", &simulate_json, py::arg("measure"), py::arg("window"), py::arg("t"),
        py::arg("seed") = 1, py::arg("method") = "direct");
  m.def("simulate_pht", &simulate_pht_json, py::arg("measure"), py::arg("window"),
        py::arg("rho") = 1.0, py::arg("seed") = 1);
  m.def("lower_bound",
        [](double t, double lambda_inner, std::vector<double> masses) {
          return lower_bound(t, BoundParams{lambda_inner, std::move(masses)});
        },
        py::arg("t"), py::arg("lambda_inner"), py::arg("masses"));
  m.def("t_star", &t_star, py::arg("eps"), py::arg("lambda_inner"));
  m.def("r_of_s", &r_of_s, py::arg("s"), py::arg("eps"), py::arg("L"), py::arg("dim"));
  m.def("experiment_names", &experiment_names);
  m.def("verify", &verify_json, py::arg("name"), py::arg("overrides") = "{}", py::arg("seed") = 1,
        py::arg("n_scale") = 1.0, py::arg("threads") = 0, py::call_guard<py::gil_scoped_release>());
  m.def("cli", &cli, py::arg("args"));
}

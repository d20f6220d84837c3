// SPDX-License-Identifier: Apache-2.0
//
// Named Monte-Carlo experiments. Each one is a pure function of its
// configuration and seed.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stit/serialize.hpp"

namespace stit {

enum class Verdict { Pass, Fail, Info };

struct ReportRow {
  std::string label;
  double x;
  std::size_t n;
  double estimate;
  double ci_lo;
  double ci_hi;
  double target;
  double sigma;
  double p_value;
  Verdict verdict;
};

struct ExperimentReport {
  std::string experiment;
  Json config;
  std::uint64_t seed;
  bool pass;
  std::vector<ReportRow> rows;
  std::vector<std::string> notes;
};

struct RunContext {
  std::uint64_t seed = 1;
  /// Multiplies every sample size.
  double n_scale = 1.0;
  /// 0 means one worker per core.
  unsigned threads = 0;
};

const std::vector<std::string>& experiment_names();
bool has_experiment(const std::string& name);
Json default_config(const std::string& name);

/// Overrides replace top-level keys of the default configuration; unknown
/// keys raise ConfigError.
ExperimentReport run_experiment(const std::string& name, const Json& overrides,
                                const RunContext& ctx);

std::string to_csv(const ExperimentReport& r);
Json summary_json(const ExperimentReport& r);
const char* verdict_name(Verdict v);

}  // namespace stit

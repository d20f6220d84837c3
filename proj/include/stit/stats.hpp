// SPDX-License-Identifier: Apache-2.0
//
// Estimators and two-sample tests for the verification harness.
#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "stit/errors.hpp"
#include "stit/parallel.hpp"
#include "stit/random.hpp"

namespace stit {

inline constexpr double kZ95 = 1.959963984540054;

struct EstimateWithCI {
  double p_hat;
  std::size_t n;
  double ci_lo;
  double ci_hi;
  std::uint64_t seed;
};

/// Wilson score interval.
EstimateWithCI wilson(std::size_t successes, std::size_t n, std::uint64_t seed = 0,
                      double z = kZ95);

/// sqrt(p (1 - p) / n).
double binomial_sigma(double p, std::size_t n);

/// Replicate i draws from RandomStream(seed, i).
template <class Event>
EstimateWithCI mc_estimate(Event&& event, std::size_t n, std::uint64_t seed, unsigned threads = 1) {
  if (n < 100) throw InsufficientSamples("mc_estimate needs N >= 100");
  const auto hits = parallel_map(n, threads, [&](std::size_t i) -> char {
    RandomStream rng(seed, i);
    return event(rng) ? 1 : 0;
  });
  std::size_t k = 0;
  for (char h : hits) k += static_cast<std::size_t>(h);
  return wilson(k, n, seed);
}

struct KSResult {
  double statistic;
  double p_value;
  std::size_t n1;
  std::size_t n2;
};

/// Q_KS(lambda) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 lambda^2).
double kolmogorov_q(double lambda);

/// Two-sample Kolmogorov-Smirnov test; asymptotic p-value with the
/// effective-n correction (sqrt(ne) + 0.12 + 0.11/sqrt(ne)) D.
KSResult ks_two_sample(std::vector<double> xs, std::vector<double> ys);

/// Covariance of two indicator sequences, P(D and E) - P(D) P(E), with a
/// delta-method standard error.
struct GapEstimate {
  std::size_t n;
  double p_d;
  double p_e;
  double p_de;
  double gap;
  double sigma;
};

GapEstimate covariance_gap(const std::vector<char>& d, const std::vector<char>& e);

}  // namespace stit

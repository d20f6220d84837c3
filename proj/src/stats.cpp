// SPDX-License-Identifier: Apache-2.0
#include "stit/stats.hpp"

#include <algorithm>
#include <cmath>

namespace stit {

EstimateWithCI wilson(std::size_t successes, std::size_t n, std::uint64_t seed, double z) {
  if (n == 0) throw InsufficientSamples("Wilson interval of an empty sample");
  if (successes > n) throw InvalidArgument("more successes than trials");
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(successes) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double centre = (p + z2 / (2.0 * nn)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
  return {p, n, std::max(0.0, std::min(p, centre - half)), std::min(1.0, std::max(p, centre + half)),
          seed};
}

double binomial_sigma(double p, std::size_t n) {
  return std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(n));
}

double kolmogorov_q(double lambda) {
  if (lambda < 0.2) return 1.0;  // Q(0.2) = 1 - 1e-12
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 200; ++k) {
    const double term = 2.0 * std::exp(-2.0 * k * k * lambda * lambda);
    sum += sign * term;
    if (term <= 1e-16 * sum || term == 0.0) break;
    sign = -sign;
  }
  return std::clamp(sum, 0.0, 1.0);
}

KSResult ks_two_sample(std::vector<double> xs, std::vector<double> ys) {
  if (xs.size() < 50 || ys.size() < 50) {
    throw InsufficientSamples("two-sample KS needs at least 50 values per sample");
  }
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  const double n1 = static_cast<double>(xs.size());
  const double n2 = static_cast<double>(ys.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < xs.size() && j < ys.size()) {
    // Step past every copy of the smallest remaining value in both samples.
    const double v = std::min(xs[i], ys[j]);
    while (i < xs.size() && xs[i] == v) ++i;
    while (j < ys.size() && ys[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / n1 - static_cast<double>(j) / n2));
  }
  const double en = std::sqrt(n1 * n2 / (n1 + n2));
  const double p = kolmogorov_q((en + 0.12 + 0.11 / en) * d);
  return {d, p, xs.size(), ys.size()};
}

GapEstimate covariance_gap(const std::vector<char>& d, const std::vector<char>& e) {
  if (d.size() != e.size()) throw InvalidArgument("indicator sequences differ in length");
  if (d.size() < 2) throw InsufficientSamples("covariance gap needs at least two replicates");
  const double n = static_cast<double>(d.size());
  double sd = 0.0;
  double se = 0.0;
  double sde = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    sd += d[i] ? 1.0 : 0.0;
    se += e[i] ? 1.0 : 0.0;
    sde += (d[i] && e[i]) ? 1.0 : 0.0;
  }
  const double pd = sd / n;
  const double pe = se / n;
  const double pde = sde / n;
  const double gap = pde - pd * pe;
  double m2 = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double x = (d[i] ? 1.0 : 0.0) - pd;
    const double y = (e[i] ? 1.0 : 0.0) - pe;
    m2 += x * x * y * y;
  }
  m2 /= n;
  const double var = std::max(0.0, m2 - gap * gap) / n;
  return {d.size(), pd, pe, pde, gap, std::sqrt(var)};
}

}  // namespace stit

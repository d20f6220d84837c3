// SPDX-License-Identifier: Apache-2.0
#include "stit/pht.hpp"

#include <algorithm>
#include <cmath>

#include "stit/errors.hpp"

namespace stit {

PoissonHyperplanePattern simulate_pht(const DrivingMeasure& m, double rho, const Polytope& window,
                                      RandomStream& rng) {
  if (!(rho > 0.0) || !std::isfinite(rho)) throw InvalidArgument("rho must be positive");
  const double mass = measure_hitting(m, window);
  PoissonHyperplanePattern out{window, rho, {}};
  const auto n = rng.poisson(rho * mass);
  out.hyperplanes.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) out.hyperplanes.push_back(sample_hitting(m, window, rng));
  return out;
}

double empty_probability(const DrivingMeasure& m, double rho, const Polytope& c) {
  if (rho < 0.0 || !std::isfinite(rho)) throw InvalidArgument("rho must be non-negative");
  if (rho == 0.0) return 1.0;
  return std::exp(-rho * measure_hitting(m, c));
}

bool tail_event_hits_ball(const PoissonHyperplanePattern& pattern, const Polytope& b) {
  return std::any_of(pattern.hyperplanes.begin(), pattern.hyperplanes.end(),
                     [&](const Hyperplane& h) { return hits(h, b); });
}

bool tail_event_hits_ball(const PoissonHyperplanePattern& pattern, const PointSet& b) {
  return std::any_of(pattern.hyperplanes.begin(), pattern.hyperplanes.end(),
                     [&](const Hyperplane& h) { return hits(h, b); });
}

Tessellation pht_cells(const PoissonHyperplanePattern& pattern) {
  std::vector<Polytope> cells{pattern.window};
  for (const auto& h : pattern.hyperplanes) {
    std::vector<Polytope> next;
    next.reserve(cells.size() + 8);
    for (auto& c : cells) {
      if (!hits(h, c)) {
        next.push_back(std::move(c));
        continue;
      }
      const auto cons = HalfSpace{h, Side::Plus}.constraint();
      Constraint other{cons.normal, -cons.offset};
      for (auto& x : other.normal) x = -x;
      auto plus = clip_tolerant(c, cons);
      auto minus = clip_tolerant(c, other);
      if (plus && minus) {
        next.push_back(std::move(*plus));
        next.push_back(std::move(*minus));
      } else {
        next.push_back(std::move(c));
      }
    }
    cells = std::move(next);
  }
  return Tessellation{pattern.window, std::move(cells)};
}

}  // namespace stit

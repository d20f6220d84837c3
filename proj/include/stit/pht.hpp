// SPDX-License-Identifier: Apache-2.0
//
// Poisson hyperplane tessellations in a window.
#pragma once

#include <vector>

#include "stit/driving_measure.hpp"
#include "stit/geometry.hpp"
#include "stit/random.hpp"
#include "stit/stit_process.hpp"

namespace stit {

struct PoissonHyperplanePattern {
  Polytope window;
  double rho;
  std::vector<Hyperplane> hyperplanes;
};

/// N ~ Poisson(rho * Lambda([W])) i.i.d. draws from Lambda^W.
PoissonHyperplanePattern simulate_pht(const DrivingMeasure& m, double rho, const Polytope& window,
                                      RandomStream& rng);

/// exp(-rho * Lambda([C])).
double empty_probability(const DrivingMeasure& m, double rho, const Polytope& c);

bool tail_event_hits_ball(const PoissonHyperplanePattern& pattern, const Polytope& b);
bool tail_event_hits_ball(const PoissonHyperplanePattern& pattern, const PointSet& b);

/// Cells of the arrangement inside the window.
Tessellation pht_cells(const PoissonHyperplanePattern& pattern);

}  // namespace stit

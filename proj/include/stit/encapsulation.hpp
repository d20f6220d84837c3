// SPDX-License-Identifier: Apache-2.0
//
// Encapsulation of an inner window W' by the zero cell inside an outer
// window W, the sufficient event built from disjoint separating bands, and
// the lower bound on P(aS <= t).
#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "stit/driving_measure.hpp"
#include "stit/geometry.hpp"
#include "stit/random.hpp"
#include "stit/stit_process.hpp"

namespace stit {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Set of hyperplanes H with oriented normal within `half_width` radians
/// of `u` (an atom when half_width = 0) and <x,u>-offset in (d_lo, d_hi).
/// Every member separates the inner window from facet `facet` of W.
struct Band {
  std::size_t facet;
  Direction u;
  double half_width;
  double d_lo;
  double d_hi;
  double mass;
};

struct EncapsulationProblem {
  Polytope inner;
  Polytope outer;
  DrivingMeasure measure;
  std::vector<Band> bands;
};

struct BoundParams {
  double lambda_inner;
  std::vector<double> band_masses;
  std::size_t q() const { return band_masses.size(); }
};

struct WindowKnobs {
  double offset = 3.0;
  double band_lo = 1.0;
  double band_hi = 2.0;
  /// Angular half-width of the isotropic direction arcs.
  double arc_half_width = 0.19634954084936207;  // pi/16
};

/// Box-in-box equality case: W' = [-alpha, alpha]^dim, W = [-beta, beta]^dim,
/// Lambda axis-orthogonal with intensities g, and G'_a = G_a.
EncapsulationProblem box_in_box(double alpha, double beta, const std::vector<double>& g);

/// Adapted window around W' with facet distances h_{W'}(u_a) + offset and
/// bands h_{W'}(u_a) + band_lo < d < h_{W'}(u_a) + band_hi.
EncapsulationProblem build_window(const Polytope& inner, const DrivingMeasure& m,
                                  const WindowKnobs& knobs = {});

BoundParams bound_params(const EncapsulationProblem& p);

/// H in the band, as a (direction, offset) set.
bool band_contains(const Band& b, const Hyperplane& h);

/// Hyperplane drawn from Lambda restricted to the band.
Hyperplane sample_band(const Band& b, RandomStream& rng);

/// W' within the zero cell, and the zero cell strictly inside W.
bool is_encapsulated(const Polytope& zero, const Polytope& inner, const Polytope& outer);
bool is_encapsulated(const Tessellation& t, const Polytope& inner, const Polytope& outer);

/// First time the zero cell of the tree encapsulates W' inside `outer`
/// (defaults to the tree window); kInfinity if not within the horizon.
double encapsulation_time(const CellTree& tree, const Polytope& inner);
double encapsulation_time(const CellTree& tree, const Polytope& inner, const Polytope& outer);

/// Hitting times of the marked process: sigma' for [W'] and sigma_a per band.
struct SufficientEvent {
  double sigma_inner;
  std::vector<double> sigma;
  double max_sigma() const;
  /// M <= min(sigma', t).
  bool occurred_by(double t) const;
};

/// Independent exponential hitting times (the sets are disjoint).
SufficientEvent sufficient_event_time(const EncapsulationProblem& p, RandomStream& rng);

/// The same times read off a sequence of window-level marks.
SufficientEvent sufficient_event_from_marks(const EncapsulationProblem& p,
                                            const std::vector<Mark>& marks);

/// Time-ordered marks seen by the zero-cell lineage of a rejection tree:
/// the rejected draws and splitting hyperplanes of each ancestor.
std::vector<Mark> zero_lineage_marks(const CellTree& tree);

/// Lower bound on P(aS <= t); t may be kInfinity.
double lower_bound(double t, const BoundParams& p);

double t_star(double eps, double lambda_inner);
double r_of_s(double s, double eps, double L, std::size_t dim);

/// Samples aS for a single trajectory by following only the zero-cell
/// lineage (the law of aS only depends on it). Stops early once W' is cut.
/// Returns kInfinity when not encapsulated by `horizon`.
double sample_encapsulation_time(const DrivingMeasure& m, const Polytope& inner,
                                 const Polytope& outer, double horizon, RandomStream& rng);

}  // namespace stit

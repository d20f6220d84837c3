// SPDX-License-Identifier: Apache-2.0
//
// Translation-invariant hyperplane measure Lambda = gamma * (Lebesgue x theta).
#pragma once

#include <cstddef>
#include <vector>

#include "stit/geometry.hpp"
#include "stit/random.hpp"

namespace stit {

/// Number of nodes of the trapezoidal rule on [0, pi) for isotropic integrals.
inline constexpr std::size_t kIsotropicNodes = 256;

/// One atom of a discrete directional distribution; `u` is stored
/// lexicographically positive and stands for the pair {u, -u}.
struct Axis {
  Direction u;
  double w;
};

class DrivingMeasure {
 public:
  enum class Kind { Discrete, Isotropic2D };

  /// Weights must be positive and sum to 1 (within 1e-9).
  static DrivingMeasure discrete(double gamma, std::vector<Axis> axes);
  static DrivingMeasure isotropic2d(double gamma);
  /// Axis-orthogonal measure with per-axis intensities g_c:
  /// gamma = sum g, w_c = g_c / sum g.
  static DrivingMeasure axis_orthogonal(const std::vector<double>& g);

  Kind kind() const { return kind_; }
  bool is_isotropic() const { return kind_ == Kind::Isotropic2D; }
  double gamma() const { return gamma_; }
  const std::vector<Axis>& axes() const { return axes_; }
  std::size_t dim() const { return dim_; }
  /// Every atom is a coordinate direction.
  bool axis_aligned() const;

  /// Throws RegimeMismatch unless the measure can act on `p`: dimensions
  /// agree and boxes of dimension != 2 only meet coordinate directions.
  void check_regime(const Polytope& p) const;

 private:
  DrivingMeasure(Kind kind, double gamma, std::vector<Axis> axes, std::size_t dim)
      : kind_(kind), gamma_(gamma), axes_(std::move(axes)), dim_(dim) {}

  Kind kind_;
  double gamma_;
  std::vector<Axis> axes_;
  std::size_t dim_;
};

/// Direction angle of isotropic node k, in [0, pi).
double isotropic_node(std::size_t k);

/// Lambda([P]).
double measure_hitting(const DrivingMeasure& m, const Polytope& p);
double measure_hitting(const DrivingMeasure& m, const PointSet& p);

/// Lambda([A|B]): mass of hyperplanes strictly separating A and B.
double measure_separating(const DrivingMeasure& m, const Polytope& a, const Polytope& b);
double measure_separating(const DrivingMeasure& m, const Polytope& a, const PointSet& b);

/// Lambda([W'|f_a]) for facet a of W in the order of facets().
double measure_facet_separating(const DrivingMeasure& m, const Polytope& inner,
                                const Polytope& outer, std::size_t a);

/// Facet separating mass against the outer window scaled by r >= 1.
double scale_measure_check(const DrivingMeasure& m, const Polytope& inner, const Polytope& outer,
                           std::size_t a, double r);

/// Draw from the normalised restriction of Lambda to [P].
Hyperplane sample_hitting(const DrivingMeasure& m, const Polytope& p, RandomStream& rng);

}  // namespace stit

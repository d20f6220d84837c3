// SPDX-License-Identifier: Apache-2.0
#include "stit/driving_measure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "stit/errors.hpp"

namespace stit {

namespace {

constexpr std::size_t kSamplerCap = 1000000;

bool parallel_dirs(const Direction& a, const Direction& b) {
  return std::abs(std::abs(dot(a.components(), b.components())) - 1.0) <= kUnitTol;
}

template <class Body>
double gap_along(const Polytope& a, const Body& b, const Direction& u) {
  const auto [alo, ahi] = projection(a, u);
  const auto [blo, bhi] = projection(b, u);
  return std::max({0.0, blo - ahi, alo - bhi});
}

template <class Body>
double hitting_impl(const DrivingMeasure& m, const Body& p) {
  double s = 0.0;
  if (m.is_isotropic()) {
    for (std::size_t k = 0; k < kIsotropicNodes; ++k) {
      s += width(p, Direction::from_angle(isotropic_node(k)));
    }
    return m.gamma() * s / static_cast<double>(kIsotropicNodes);
  }
  for (const auto& a : m.axes()) s += a.w * width(p, a.u);
  return m.gamma() * s;
}

template <class Body>
double separating_impl(const DrivingMeasure& m, const Polytope& a, const Body& b) {
  double s = 0.0;
  if (m.is_isotropic()) {
    for (std::size_t k = 0; k < kIsotropicNodes; ++k) {
      s += gap_along(a, b, Direction::from_angle(isotropic_node(k)));
    }
    return m.gamma() * s / static_cast<double>(kIsotropicNodes);
  }
  for (const auto& ax : m.axes()) s += ax.w * gap_along(a, b, ax.u);
  return m.gamma() * s;
}

std::size_t point_dim(const PointSet& p) {
  if (p.points.empty()) throw InvalidArgument("empty point set");
  return p.points.front().size();
}

}  // namespace

double isotropic_node(std::size_t k) {
  return std::numbers::pi * static_cast<double>(k) / static_cast<double>(kIsotropicNodes);
}

DrivingMeasure DrivingMeasure::discrete(double gamma, std::vector<Axis> axes) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw InvalidArgument("gamma must be positive");
  if (axes.empty()) throw InvalidArgument("discrete measure needs at least one axis");
  const std::size_t dim = axes.front().u.dim();
  double total = 0.0;
  for (auto& a : axes) {
    if (a.u.dim() != dim) throw InvalidArgument("axes of mixed dimension");
    if (!(a.w > 0.0) || !std::isfinite(a.w)) throw InvalidArgument("axis weights must be positive");
    if (!a.u.lex_positive()) a.u = -a.u;
    total += a.w;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw InvalidArgument("axis weights must sum to 1 (got " + std::to_string(total) + ")");
  }
  for (std::size_t i = 0; i < axes.size(); ++i) {
    for (std::size_t j = i + 1; j < axes.size(); ++j) {
      if (parallel_dirs(axes[i].u, axes[j].u)) throw InvalidArgument("duplicate axis direction");
    }
  }
  // Support must not lie in a great subsphere.
  if (dim == 2) {
    if (axes.size() < 2) throw InvalidArgument("2-D measure needs two non-parallel axes");
  } else {
    std::vector<bool> seen(dim, false);
    for (const auto& a : axes) {
      const auto c = a.u.axis_index();
      if (!c) throw RegimeMismatch("only coordinate directions are supported outside 2-D");
      seen[*c] = true;
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
      throw InvalidArgument("every coordinate direction needs positive weight");
    }
  }
  return DrivingMeasure(Kind::Discrete, gamma, std::move(axes), dim);
}

DrivingMeasure DrivingMeasure::isotropic2d(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw InvalidArgument("gamma must be positive");
  return DrivingMeasure(Kind::Isotropic2D, gamma, {}, 2);
}

DrivingMeasure DrivingMeasure::axis_orthogonal(const std::vector<double>& g) {
  double total = 0.0;
  for (double x : g) {
    if (!(x > 0.0) || !std::isfinite(x)) throw InvalidArgument("g_c must be positive");
    total += x;
  }
  std::vector<Axis> axes;
  for (std::size_t c = 0; c < g.size(); ++c) {
    axes.push_back({Direction::axis(g.size(), c), g[c] / total});
  }
  return discrete(total, std::move(axes));
}

bool DrivingMeasure::axis_aligned() const {
  if (is_isotropic()) return false;
  return std::all_of(axes_.begin(), axes_.end(),
                     [](const Axis& a) { return a.u.axis_index().has_value(); });
}

void DrivingMeasure::check_regime(const Polytope& p) const {
  if (p.dim() != dim_) {
    throw RegimeMismatch("measure of dimension " + std::to_string(dim_) +
                         " on a window of dimension " + std::to_string(p.dim()));
  }
  if (p.dim() != 2 && !axis_aligned()) {
    throw RegimeMismatch("boxes outside 2-D require the axis-orthogonal measure");
  }
}

double measure_hitting(const DrivingMeasure& m, const Polytope& p) {
  m.check_regime(p);
  return hitting_impl(m, p);
}

double measure_hitting(const DrivingMeasure& m, const PointSet& p) {
  if (point_dim(p) != m.dim()) throw RegimeMismatch("dimension mismatch");
  return hitting_impl(m, p);
}

double measure_separating(const DrivingMeasure& m, const Polytope& a, const Polytope& b) {
  m.check_regime(a);
  m.check_regime(b);
  return separating_impl(m, a, b);
}

double measure_separating(const DrivingMeasure& m, const Polytope& a, const PointSet& b) {
  m.check_regime(a);
  if (point_dim(b) != m.dim()) throw RegimeMismatch("dimension mismatch");
  return separating_impl(m, a, b);
}

double measure_facet_separating(const DrivingMeasure& m, const Polytope& inner,
                                const Polytope& outer, std::size_t a) {
  const auto fs = facets(outer);
  if (a >= fs.size()) throw InvalidArgument("facet index out of range");
  return measure_separating(m, inner, fs[a].body);
}

double scale_measure_check(const DrivingMeasure& m, const Polytope& inner, const Polytope& outer,
                           std::size_t a, double r) {
  if (!(r >= 1.0)) throw InvalidArgument("scale factor must be at least 1");
  return measure_facet_separating(m, inner, scale(outer, r), a);
}

Hyperplane sample_hitting(const DrivingMeasure& m, const Polytope& p, RandomStream& rng) {
  m.check_regime(p);
  auto draw_offset = [&](const Direction& u) {
    const auto [lo, hi] = projection(p, u);
    return Hyperplane(u, rng.uniform(lo, hi));
  };
  if (m.is_isotropic()) {
    const double envelope = diameter(p);
    for (std::size_t i = 0; i < kSamplerCap; ++i) {
      const auto u = Direction::from_angle(rng.uniform(0.0, std::numbers::pi));
      if (rng.uniform() * envelope < width(p, u)) return draw_offset(u);
    }
    throw SamplerStall("isotropic direction sampler exceeded its iteration cap");
  }
  const auto& axes = m.axes();
  std::vector<double> cum(axes.size());
  double total = 0.0;
  for (std::size_t i = 0; i < axes.size(); ++i) {
    total += axes[i].w * width(p, axes[i].u);
    cum[i] = total;
  }
  if (!(total > 0.0)) throw SamplerStall("body has zero hitting mass");
  const double x = rng.uniform() * total;
  const std::size_t i = std::min<std::size_t>(
      static_cast<std::size_t>(std::upper_bound(cum.begin(), cum.end(), x) - cum.begin()),
      axes.size() - 1);
  return draw_offset(axes[i].u);
}

}  // namespace stit

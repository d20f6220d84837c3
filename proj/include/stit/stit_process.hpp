// SPDX-License-Identifier: Apache-2.0
//
// STIT cell-division process in a bounded window.
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "stit/driving_measure.hpp"
#include "stit/geometry.hpp"
#include "stit/random.hpp"

namespace stit {

enum class Method { Rejection, Direct };

/// Hyperplane with its birth time on a window clock.
struct Mark {
  Hyperplane plane;
  double time;
};

struct CellNode {
  std::size_t id;
  Polytope polytope;
  double birth;
  std::optional<double> death;
  std::optional<std::size_t> parent;
  std::optional<std::pair<std::size_t, std::size_t>> children;  // (plus, minus)
  std::optional<Hyperplane> split;
  /// Rejection method only: window-level draws that missed the cell.
  std::vector<Mark> rejected;
  /// Lambda([cell]).
  double mass;
  /// Outside every region of interest; never divided.
  bool frozen = false;
};

struct SimulateOptions {
  Method method = Method::Direct;
  /// When non-empty, only cells meeting one of these bodies are divided.
  /// The law of the tessellation restricted to the union is unchanged.
  std::vector<Polytope> roi;
  std::vector<PointSet> roi_sets;
  std::size_t event_cap = 10'000'000;
};

class CellTree {
 public:
  const Polytope& window() const { return window_; }
  const DrivingMeasure& measure() const { return measure_; }
  Method method() const { return options_.method; }
  const SimulateOptions& options() const { return options_; }
  const std::vector<CellNode>& nodes() const { return nodes_; }
  const CellNode& node(std::size_t id) const { return nodes_.at(id); }
  double current_time() const { return current_time_; }
  const std::vector<double>& jump_times() const { return jump_times_; }

  /// Ids of cells alive at time s (birth <= s < death).
  std::vector<std::size_t> live_at(double s) const;
  /// Id of the live cell at time s containing the origin in its interior.
  std::size_t zero_cell_id(double s) const;

 private:
  CellTree(Polytope window, DrivingMeasure measure, SimulateOptions options)
      : window_(std::move(window)), measure_(std::move(measure)), options_(std::move(options)) {}

  friend CellTree simulate(const DrivingMeasure&, const Polytope&, double, RandomStream&,
                           const SimulateOptions&);
  friend CellTree advance(CellTree, double, RandomStream&);
  friend class TreeRunner;

  Polytope window_;
  DrivingMeasure measure_;
  SimulateOptions options_;
  std::vector<CellNode> nodes_;
  double current_time_ = 0.0;
  std::vector<double> jump_times_;
};

/// A set of cells tiling `window`.
struct Tessellation {
  Polytope window;
  std::vector<Polytope> cells;
};

CellTree simulate(const DrivingMeasure& m, const Polytope& window, double t, RandomStream& rng,
                  const SimulateOptions& options);
inline CellTree simulate(const DrivingMeasure& m, const Polytope& window, double t,
                         RandomStream& rng, Method method = Method::Direct) {
  SimulateOptions o;
  o.method = method;
  return simulate(m, window, t, rng, o);
}

/// Continue the division process for dt more time units.
CellTree advance(CellTree tree, double dt, RandomStream& rng);

/// Cells alive at time s in (0, current_time].
Tessellation slice(const CellTree& tree, double s);
inline Tessellation slice(const CellTree& tree) { return slice(tree, tree.current_time()); }

/// Cell with the origin in its interior.
Polytope zero_cell(const Tessellation& t);
std::size_t zero_cell_index(const Tessellation& t);

/// Half-spaces whose intersection with the window is the given cell,
/// including the rejected hyperplanes of every ancestor.
std::vector<HalfSpace> halfspace_representation(const CellTree& tree, std::size_t id);

/// Cell indices in numbering order: the zero cell first, then by centroid
/// distance from the origin, ties broken lexicographically.
std::vector<std::size_t> number_cells(const Tessellation& t);

/// T iterated with nests: nests[k] is restricted to the k-th numbered cell.
Tessellation iterate(const Tessellation& t, const std::vector<Tessellation>& nests);

Tessellation restrict(const Tessellation& t, const Polytope& w);

Tessellation scale(const Tessellation& t, double r);

struct StatRecord {
  std::size_t cell_count;
  /// Internal boundary length (2-D) or (dim-1)-volume.
  double boundary;
  double zero_cell_area;
  /// Sum of Lambda([C]) over the cells.
  double zeta;
};

StatRecord summary_stats(const Tessellation& t, const DrivingMeasure& m);

/// True when no cell boundary crosses the interior of `body`.
bool uncut(const Tessellation& t, const Polytope& body);
bool uncut(const Tessellation& t, const PointSet& body);

}  // namespace stit

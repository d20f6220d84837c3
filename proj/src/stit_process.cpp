// SPDX-License-Identifier: Apache-2.0
#include "stit/stit_process.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <string>
#include <tuple>

#include "stit/errors.hpp"

namespace stit {

namespace {

struct Pieces {
  Polytope plus;
  Polytope minus;
};

// Both sides of h within p, or nullopt if h misses p or the cut is degenerate.
std::optional<Pieces> split_by(const Polytope& p, const Hyperplane& h) {
  try {
    auto plus = clip(p, HalfSpace{h, Side::Plus});
    auto minus = clip(p, HalfSpace{h, Side::Minus});
    if (!plus || !minus) return std::nullopt;
    return Pieces{std::move(*plus), std::move(*minus)};
  } catch (const DegenerateCut&) {
    return std::nullopt;
  }
}

bool degenerate_offset(const Hyperplane& h) { return std::abs(h.offset()) <= kGeomTol; }

}  // namespace

// Event loop shared by simulate() and advance().
class TreeRunner {
 public:
  TreeRunner(CellTree& tree, RandomStream& rng)
      : tree_(tree),
        rng_(rng),
        window_mass_(measure_hitting(tree.measure_, tree.window_)) {}

  void run_until(double horizon) {
    const double start = tree_.current_time_;
    for (const auto& n : tree_.nodes_) {
      if (!n.death && !n.frozen) schedule(n.id, start, horizon);
    }
    while (!queue_.empty()) {
      const auto [time, id] = queue_.top();
      queue_.pop();
      if (time > horizon) break;
      divide(id, time, horizon);
    }
    tree_.current_time_ = horizon;
  }

  void add_root() {
    CellNode root{0, tree_.window_, 0.0, std::nullopt, std::nullopt, std::nullopt, std::nullopt,
                  {}, window_mass_};
    root.frozen = !in_roi(root.polytope);
    tree_.nodes_.push_back(std::move(root));
  }

 private:
  using Event = std::pair<double, std::size_t>;

  bool in_roi(const Polytope& p) const {
    const auto& o = tree_.options_;
    if (o.roi.empty() && o.roi_sets.empty()) return true;
    for (const auto& r : o.roi) {
      if (intersects(p, r)) return true;
    }
    for (const auto& r : o.roi_sets) {
      if (intersects(p, r)) return true;
    }
    return false;
  }

  // Draws the next division of cell `id` after time `from`. Death times past
  // the horizon leave the cell open; the clock is memoryless, so advance()
  // redraws from the new start.
  void schedule(std::size_t id, double from, double horizon) {
    auto& n = tree_.nodes_[id];
    if (tree_.options_.method == Method::Direct) {
      const double t = from + rng_.exponential(n.mass);
      if (t <= horizon) queue_.push({t, id});
      return;
    }
    double t = from;
    for (;;) {
      t += rng_.exponential(window_mass_);
      if (t > horizon) return;
      for (;;) {
        auto h = sample_hitting(tree_.measure_, tree_.window_, rng_);
        // Draws through the origin or a vertex have measure zero; redraw.
        if (degenerate_offset(h)) continue;
        if (!hits(h, n.polytope)) {
          n.rejected.push_back({h, t});
          break;
        }
        auto pieces = split_by(n.polytope, h);
        if (!pieces) continue;
        pending_.resize(std::max(pending_.size(), id + 1));
        pending_[id] = Pending{h, std::move(pieces)};
        queue_.push({t, id});
        return;
      }
    }
  }

  void divide(std::size_t id, double time, double horizon) {
    if (tree_.jump_times_.size() >= tree_.options_.event_cap) {
      throw ExplosionGuard("event cap of " + std::to_string(tree_.options_.event_cap) +
                           " divisions exceeded");
    }
    std::optional<Hyperplane> h;
    std::optional<Pieces> pieces;
    if (tree_.options_.method == Method::Direct) {
      const Polytope& p = tree_.nodes_[id].polytope;
      for (;;) {
        auto cand = sample_hitting(tree_.measure_, p, rng_);
        if (degenerate_offset(cand)) continue;
        pieces = split_by(p, cand);
        if (pieces) {
          h = cand;
          break;
        }
      }
    } else {
      h = pending_[id].plane;
      pieces = std::move(pending_[id].pieces);
      pending_[id] = Pending{};
    }
    const std::size_t plus_id = tree_.nodes_.size();
    const std::size_t minus_id = plus_id + 1;
    {
      auto& n = tree_.nodes_[id];
      n.death = time;
      n.split = *h;
      n.children = {plus_id, minus_id};
    }
    tree_.jump_times_.push_back(time);
    for (auto* piece : {&pieces->plus, &pieces->minus}) {
      const double mass = measure_hitting(tree_.measure_, *piece);
      CellNode child{tree_.nodes_.size(), std::move(*piece), time, std::nullopt, id,
                     std::nullopt, std::nullopt, {}, mass};
      child.frozen = !in_roi(child.polytope);
      tree_.nodes_.push_back(std::move(child));
    }
    for (const std::size_t c : {plus_id, minus_id}) {
      if (!tree_.nodes_[c].frozen) schedule(c, time, horizon);
    }
  }

  struct Pending {
    std::optional<Hyperplane> plane;
    std::optional<Pieces> pieces;
  };

  CellTree& tree_;
  RandomStream& rng_;
  double window_mass_;
  std::priority_queue<Event, std::vector<Event>, std::greater<>> queue_;
  std::vector<Pending> pending_;
};

CellTree simulate(const DrivingMeasure& m, const Polytope& window, double t, RandomStream& rng,
                  const SimulateOptions& options) {
  m.check_regime(window);
  if (!(t > 0.0) || !std::isfinite(t)) throw InvalidArgument("simulation time must be positive");
  CellTree tree(window, m, options);
  TreeRunner runner(tree, rng);
  runner.add_root();
  runner.run_until(t);
  return tree;
}

CellTree advance(CellTree tree, double dt, RandomStream& rng) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("advance needs dt > 0");
  TreeRunner runner(tree, rng);
  runner.run_until(tree.current_time_ + dt);
  return tree;
}

std::vector<std::size_t> CellTree::live_at(double s) const {
  std::vector<std::size_t> out;
  for (const auto& n : nodes_) {
    if (n.birth <= s && (!n.death || *n.death > s)) out.push_back(n.id);
  }
  return out;
}

std::size_t CellTree::zero_cell_id(double s) const {
  // Walk down the lineage instead of scanning every live cell.
  const Vec origin(window_.dim(), 0.0);
  if (inner_margin(window_, origin) <= kGeomTol) {
    throw AmbiguousZeroCell("origin is not inside the window");
  }
  std::size_t id = 0;
  for (;;) {
    const auto& n = nodes_[id];
    if (!n.death || *n.death > s) return id;
    const auto side = side_of(*n.split, origin);
    if (!side) throw AmbiguousZeroCell("origin lies on a splitting hyperplane");
    id = *side == Side::Plus ? n.children->first : n.children->second;
  }
}

Tessellation slice(const CellTree& tree, double s) {
  if (!(s > 0.0) || s > tree.current_time()) {
    throw OutOfRange("slice time must lie in (0, current_time]");
  }
  Tessellation out{tree.window(), {}};
  for (const auto id : tree.live_at(s)) out.cells.push_back(tree.node(id).polytope);
  return out;
}

std::size_t zero_cell_index(const Tessellation& t) {
  const Vec origin(t.window.dim(), 0.0);
  std::optional<std::size_t> found;
  for (std::size_t i = 0; i < t.cells.size(); ++i) {
    const double m = inner_margin(t.cells[i], origin);
    if (m > kGeomTol) {
      found = i;
      break;
    }
    if (m >= -kGeomTol) throw AmbiguousZeroCell("origin within tolerance of a cell boundary");
  }
  if (!found) throw AmbiguousZeroCell("no cell contains the origin");
  return *found;
}

Polytope zero_cell(const Tessellation& t) { return t.cells[zero_cell_index(t)]; }

std::vector<HalfSpace> halfspace_representation(const CellTree& tree, std::size_t id) {
  if (tree.method() != Method::Rejection) {
    throw MethodMismatch("half-space representation needs a rejection-method tree");
  }
  std::vector<std::size_t> lineage;
  for (std::optional<std::size_t> cur = id; cur; cur = tree.node(*cur).parent) {
    lineage.push_back(*cur);
  }
  std::reverse(lineage.begin(), lineage.end());
  std::vector<HalfSpace> out;
  for (std::size_t k = 0; k + 1 < lineage.size(); ++k) {
    const auto& anc = tree.node(lineage[k]);
    // Rejected draws miss the ancestor, so the whole ancestor lies on one side.
    const Vec c = anc.polytope.centroid();
    for (const auto& mark : anc.rejected) {
      const auto side = side_of(mark.plane, c, 0.0);
      out.push_back({mark.plane, side.value_or(Side::Plus)});
    }
    const bool plus = anc.children->first == lineage[k + 1];
    out.push_back({*anc.split, plus ? Side::Plus : Side::Minus});
  }
  return out;
}

std::vector<std::size_t> number_cells(const Tessellation& t) {
  const std::size_t n = t.cells.size();
  std::vector<Vec> ref(n);
  std::vector<double> dist(n);
  for (std::size_t i = 0; i < n; ++i) {
    ref[i] = t.cells[i].centroid();
    dist[i] = norm(ref[i]);
  }
  std::optional<std::size_t> zero;
  try {
    zero = zero_cell_index(t);
  } catch (const AmbiguousZeroCell&) {
  }
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const bool za = zero && a == *zero;
    const bool zb = zero && b == *zero;
    if (za != zb) return za;
    if (dist[a] != dist[b]) return dist[a] < dist[b];
    return ref[a] < ref[b];
  });
  return order;
}

Tessellation iterate(const Tessellation& t, const std::vector<Tessellation>& nests) {
  if (nests.size() < t.cells.size()) {
    throw InsufficientNests("need " + std::to_string(t.cells.size()) + " nests, got " +
                            std::to_string(nests.size()));
  }
  Tessellation out{t.window, {}};
  const auto order = number_cells(t);
  for (std::size_t k = 0; k < order.size(); ++k) {
    const Polytope& cell = t.cells[order[k]];
    for (const auto& r : nests[k].cells) {
      auto piece = intersection(cell, r);
      if (piece && piece->volume() > kAreaTol) out.cells.push_back(std::move(*piece));
    }
  }
  return out;
}

Tessellation restrict(const Tessellation& t, const Polytope& w) {
  if (!contains(t.window, w, false)) throw WindowMismatch("restriction window is not inside W");
  Tessellation out{w, {}};
  for (const auto& c : t.cells) {
    auto piece = intersection(c, w);
    if (piece && piece->volume() > kAreaTol) out.cells.push_back(std::move(*piece));
  }
  return out;
}

Tessellation scale(const Tessellation& t, double r) {
  Tessellation out{scale(t.window, r), {}};
  out.cells.reserve(t.cells.size());
  for (const auto& c : t.cells) out.cells.push_back(scale(c, r));
  return out;
}

StatRecord summary_stats(const Tessellation& t, const DrivingMeasure& m) {
  StatRecord s{t.cells.size(), 0.0, 0.0, 0.0};
  double surface = 0.0;
  for (const auto& c : t.cells) {
    surface += c.surface();
    s.zeta += measure_hitting(m, c);
  }
  s.boundary = std::max(0.0, 0.5 * (surface - t.window.surface()));
  if (inner_margin(t.window, Vec(t.window.dim(), 0.0)) > kGeomTol) {
    s.zero_cell_area = zero_cell(t).volume();
  }
  return s;
}

bool uncut(const Tessellation& t, const Polytope& body) {
  return std::any_of(t.cells.begin(), t.cells.end(),
                     [&](const Polytope& c) { return contains(c, body, false); });
}

bool uncut(const Tessellation& t, const PointSet& body) {
  return std::any_of(t.cells.begin(), t.cells.end(),
                     [&](const Polytope& c) { return contains(c, body, false); });
}

}  // namespace stit

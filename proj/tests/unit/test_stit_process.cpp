// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "stit/errors.hpp"
#include "stit/stit_process.hpp"

using namespace stit;

namespace {

Polytope square(double h) { return Box::cube(2, h); }
const DrivingMeasure kPerp = DrivingMeasure::axis_orthogonal({1, 1});

double total_volume(const Tessellation& t) {
  double v = 0.0;
  for (const auto& c : t.cells) v += c.volume();
  return v;
}

}  // namespace

TEST(Simulate, NoJumpGivesRoot) {
  RandomStream rng(1);
  const auto tree = simulate(kPerp, square(1), 1e-12, rng);
  EXPECT_EQ(tree.nodes().size(), 1u);
  EXPECT_TRUE(tree.jump_times().empty());
  EXPECT_DOUBLE_EQ(tree.node(0).mass, 4.0);
}

TEST(Simulate, FirstSplitSurvival) {
  const int n = 10000;
  int survived = 0;
  for (int i = 0; i < n; ++i) {
    RandomStream rng(7, i);
    survived += simulate(kPerp, square(1), 0.25, rng).jump_times().empty() ? 1 : 0;
  }
  const double p = std::exp(-1.0);
  const double sigma = std::sqrt(p * (1 - p) / n);
  EXPECT_NEAR(survived / double(n), p, 3 * sigma);
}

TEST(Simulate, CellsTileWindow) {
  for (auto method : {Method::Direct, Method::Rejection}) {
    RandomStream rng(5);
    const auto tree = simulate(DrivingMeasure::isotropic2d(1.0), square(2), 2.0, rng, method);
    const auto t = slice(tree);
    EXPECT_GT(t.cells.size(), 1u);
    EXPECT_NEAR(total_volume(t), 16.0, 1e-9);
    const auto times = tree.jump_times();
    EXPECT_TRUE(std::is_sorted(times.begin(), times.end()));
    EXPECT_EQ(t.cells.size(), times.size() + 1);
  }
}

TEST(Simulate, DeterministicForSeed) {
  RandomStream a(11), b(11);
  const auto ta = simulate(kPerp, square(2), 1.5, a);
  const auto tb = simulate(kPerp, square(2), 1.5, b);
  EXPECT_EQ(ta.jump_times(), tb.jump_times());
}

TEST(Simulate, Errors) {
  RandomStream rng(1);
  EXPECT_THROW(simulate(kPerp, square(1), 0.0, rng), InvalidArgument);
  EXPECT_THROW(simulate(DrivingMeasure::isotropic2d(1.0), Box::cube(3, 1.0), 1.0, rng),
               RegimeMismatch);
  SimulateOptions o;
  o.event_cap = 10;
  EXPECT_THROW(simulate(kPerp, square(10), 10.0, rng, o), ExplosionGuard);
}

TEST(Advance, ExtendsHorizon) {
  RandomStream rng(3);
  auto tree = simulate(kPerp, square(1), 0.5, rng);
  const auto before = tree.jump_times();
  tree = advance(std::move(tree), 0.5, rng);
  EXPECT_DOUBLE_EQ(tree.current_time(), 1.0);
  ASSERT_GE(tree.jump_times().size(), before.size());
  EXPECT_TRUE(std::equal(before.begin(), before.end(), tree.jump_times().begin()));
}

TEST(Slice, EarlyAndLate) {
  RandomStream rng(9);
  const auto tree = simulate(kPerp, square(2), 1.0, rng);
  ASSERT_FALSE(tree.jump_times().empty());
  const double first = tree.jump_times().front();
  EXPECT_EQ(slice(tree, first / 2).cells.size(), 1u);
  EXPECT_EQ(slice(tree).cells.size(), tree.live_at(1.0).size());
  EXPECT_THROW(slice(tree, 2.0), OutOfRange);
}

TEST(ZeroCell, TrivialAndAfterCut) {
  Tessellation t{square(1), {square(1)}};
  EXPECT_TRUE(approx_equal(zero_cell(t), square(1)));
  const Hyperplane h(Direction::axis(2, 0), 0.5);
  const auto plus = *clip(square(1), {h, Side::Plus});
  const auto minus = *clip(square(1), {h, Side::Minus});
  t.cells = {minus, plus};
  EXPECT_EQ(zero_cell_index(t), 1u);
  EXPECT_TRUE(approx_equal(zero_cell(t), Box({-1, -1}, {0.5, 1})));
}

TEST(HalfspaceRepresentation, RootAndRebuild) {
  RandomStream rng(21);
  const auto tree = simulate(kPerp, square(2), 1.0, rng, Method::Rejection);
  EXPECT_TRUE(halfspace_representation(tree, 0).empty());
  for (std::size_t id = 0; id < tree.nodes().size(); ++id) {
    std::optional<Polytope> cell = tree.window();
    for (const auto& hs : halfspace_representation(tree, id)) {
      if (hits(hs.plane, *cell)) cell = clip(*cell, hs);
    }
    ASSERT_TRUE(cell);
    EXPECT_TRUE(approx_equal(*cell, tree.node(id).polytope));
  }
  RandomStream r2(21);
  const auto direct = simulate(kPerp, square(2), 1.0, r2);
  EXPECT_THROW(halfspace_representation(direct, 0), MethodMismatch);
}

TEST(HalfspaceRepresentation, SingleSplit) {
  for (std::uint64_t s = 0; s < 200; ++s) {
    RandomStream rng(s);
    const auto tree = simulate(kPerp, square(1), 0.3, rng, Method::Rejection);
    if (tree.jump_times().size() != 1) continue;
    const auto& child = tree.node(1);
    if (!child.rejected.empty()) continue;
    EXPECT_EQ(halfspace_representation(tree, 1).size(), 1u);
    return;
  }
  GTEST_SKIP() << "no single-split trajectory";
}

TEST(NumberCells, ZeroCellFirst) {
  RandomStream rng(4);
  const auto t = slice(simulate(kPerp, square(2), 1.5, rng));
  const auto order = number_cells(t);
  ASSERT_EQ(order.size(), t.cells.size());
  EXPECT_EQ(order.front(), zero_cell_index(t));
  auto sorted = order;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::size_t> expect(t.cells.size());
  std::iota(expect.begin(), expect.end(), 0);
  EXPECT_EQ(sorted, expect);
  EXPECT_EQ(number_cells(Tessellation{square(1), {square(1)}}), std::vector<std::size_t>{0});
}

TEST(Iterate, TrivialNests) {
  RandomStream rng(8);
  const auto t = slice(simulate(kPerp, square(2), 1.0, rng));
  const auto order = number_cells(t);
  std::vector<Tessellation> ordered;
  for (auto k : order) ordered.push_back({t.cells[k], {t.cells[k]}});
  const auto it = iterate(t, ordered);
  EXPECT_EQ(it.cells.size(), t.cells.size());
  EXPECT_NEAR(total_volume(it), 16.0, 1e-9);

  const Tessellation single{square(2), {square(2)}};
  const auto r = slice(simulate(kPerp, square(2), 1.0, rng));
  const auto nested = iterate(single, {r});
  EXPECT_EQ(nested.cells.size(), r.cells.size());
  EXPECT_THROW(iterate(t, {}), InsufficientNests);
}

TEST(Restrict, IdentityAndInsideCell) {
  RandomStream rng(12);
  const auto t = slice(simulate(kPerp, square(2), 1.0, rng));
  EXPECT_EQ(restrict(t, square(2)).cells.size(), t.cells.size());
  const Tessellation one{square(2), {square(2)}};
  const auto r = restrict(one, square(0.5));
  ASSERT_EQ(r.cells.size(), 1u);
  EXPECT_TRUE(approx_equal(r.cells[0], square(0.5)));
  EXPECT_THROW(restrict(one, square(3)), WindowMismatch);
}

TEST(SummaryStats, Examples) {
  const Tessellation one{square(1), {square(1)}};
  auto s = summary_stats(one, kPerp);
  EXPECT_EQ(s.cell_count, 1u);
  EXPECT_DOUBLE_EQ(s.boundary, 0.0);
  EXPECT_DOUBLE_EQ(s.zeta, 4.0);
  EXPECT_DOUBLE_EQ(s.zero_cell_area, 4.0);
  const Hyperplane h(Direction::axis(2, 0), 0.25);
  const Tessellation two{square(1), {*clip(square(1), {h, Side::Plus}),
                                     *clip(square(1), {h, Side::Minus})}};
  s = summary_stats(two, kPerp);
  EXPECT_EQ(s.cell_count, 2u);
  EXPECT_NEAR(s.boundary, 2.0, 1e-12);
}

TEST(Uncut, Bodies) {
  const Hyperplane h(Direction::axis(2, 0), 0.5);
  const Tessellation two{square(1), {*clip(square(1), {h, Side::Plus}),
                                     *clip(square(1), {h, Side::Minus})}};
  EXPECT_TRUE(uncut(two, square(0.4)));
  EXPECT_FALSE(uncut(two, square(0.6)));
  EXPECT_TRUE(uncut(two, PointSet::segment({0, -1}, {0, 1})));
  EXPECT_FALSE(uncut(two, PointSet::segment({0, 0}, {0.9, 0})));
}

TEST(ScaleTessellation, Volumes) {
  RandomStream rng(2);
  const auto t = slice(simulate(kPerp, square(1), 2.0, rng));
  const auto s = scale(t, 2.0);
  EXPECT_NEAR(total_volume(s), 16.0, 1e-9);
  EXPECT_EQ(s.cells.size(), t.cells.size());
}

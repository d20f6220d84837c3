// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>

#include "stit/errors.hpp"
#include "stit/pht.hpp"

using namespace stit;

namespace {

Polytope square(double h) { return Box::cube(2, h); }
const DrivingMeasure kPerp = DrivingMeasure::axis_orthogonal({1, 1});

}  // namespace

TEST(SimulatePht, MeanCount) {
  const int n = 10000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    RandomStream rng(1, i);
    const double k = simulate_pht(kPerp, 1.0, square(1), rng).hyperplanes.size();
    sum += k;
    sum2 += k * k;
  }
  const double mean = sum / n;
  EXPECT_NEAR(mean, 4.0, 3 * std::sqrt(4.0 / n));
  EXPECT_NEAR(sum2 / n - mean * mean, 4.0, 0.3);
}

TEST(SimulatePht, SmallRhoIsEmpty) {
  RandomStream rng(3);
  int empty = 0;
  for (int i = 0; i < 1000; ++i) {
    empty += simulate_pht(kPerp, 1e-9, square(1), rng).hyperplanes.empty() ? 1 : 0;
  }
  EXPECT_EQ(empty, 1000);
  EXPECT_THROW(simulate_pht(kPerp, 0.0, square(1), rng), InvalidArgument);
}

TEST(EmptyProbability, Examples) {
  EXPECT_NEAR(empty_probability(DrivingMeasure::isotropic2d(1.0), 1.0, Polygon::regular(256, 1.0)),
              std::exp(-2.0), 1e-4);
  EXPECT_NEAR(empty_probability(kPerp, 1.0, square(1)), std::exp(-4.0), 1e-15);
  EXPECT_DOUBLE_EQ(empty_probability(kPerp, 0.0, square(1)), 1.0);
}

TEST(TailEvent, Examples) {
  const PoissonHyperplanePattern none{square(4), 1.0, {}};
  EXPECT_FALSE(tail_event_hits_ball(none, square(1)));
  const PoissonHyperplanePattern one{square(4), 1.0, {Hyperplane(Direction::axis(2, 0), 0.0)}};
  EXPECT_TRUE(tail_event_hits_ball(one, Polygon::regular(16, 0.5)));
  EXPECT_TRUE(tail_event_hits_ball(one, PointSet::segment({-1, 0}, {1, 0})));
  EXPECT_FALSE(tail_event_hits_ball(one, PointSet::segment({1, -1}, {1, 1})));
}

TEST(TailEvent, Frequency) {
  const Polytope b = square(0.5);
  const int n = 100000;
  int k = 0;
  for (int i = 0; i < n; ++i) {
    RandomStream rng(8, i);
    k += tail_event_hits_ball(simulate_pht(kPerp, 1.0, square(2), rng), b) ? 1 : 0;
  }
  const double p = 1.0 - std::exp(-2.0);
  EXPECT_NEAR(k / double(n), p, 4 * std::sqrt(p * (1 - p) / n));
}

TEST(PhtCells, ArrangementCount) {
  const PoissonHyperplanePattern grid{
      square(2), 1.0,
      {Hyperplane(Direction::axis(2, 0), 0.5), Hyperplane(Direction::axis(2, 0), -1.0),
       Hyperplane(Direction::axis(2, 1), 0.3)}};
  const auto t = pht_cells(grid);
  EXPECT_EQ(t.cells.size(), 6u);
  double v = 0.0;
  for (const auto& c : t.cells) v += c.volume();
  EXPECT_NEAR(v, 16.0, 1e-12);
}

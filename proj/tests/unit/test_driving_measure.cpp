// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <array>
#include <cmath>

#include "stit/driving_measure.hpp"
#include "stit/errors.hpp"

using namespace stit;

namespace {

Polytope square(double h) { return Box::cube(2, h); }
Polytope rect(double x0, double x1, double y0, double y1) { return Box({x0, y0}, {x1, y1}); }

}  // namespace

TEST(MeasureHitting, AxisOrthogonal) {
  const auto m = DrivingMeasure::axis_orthogonal({1, 1});
  EXPECT_DOUBLE_EQ(measure_hitting(m, square(1)), 4.0);
  const auto g = DrivingMeasure::axis_orthogonal({0.5, 2.0, 1.5});
  const double alpha = 0.7;
  EXPECT_NEAR(measure_hitting(g, Box::cube(3, alpha)), 2 * alpha * 4.0, 1e-12);
}

TEST(MeasureHitting, IsotropicDisc) {
  const auto m = DrivingMeasure::isotropic2d(1.0);
  EXPECT_NEAR(measure_hitting(m, Polygon::regular(64, 1.0)), 2.0, 0.005);
  // Mean width of a square of side 2 is 8/pi.
  EXPECT_NEAR(measure_hitting(m, square(1)), 8.0 / M_PI, 1e-3);
}

TEST(MeasureHitting, PointSet) {
  const auto m = DrivingMeasure::axis_orthogonal({1, 1});
  EXPECT_DOUBLE_EQ(measure_hitting(m, PointSet::segment({0, -1}, {0, 1})), 2.0);
}

TEST(MeasureSeparating, Examples) {
  const auto m = DrivingMeasure::axis_orthogonal({1, 1});
  // Gap 5 - 1 along one axis, none along the other.
  EXPECT_DOUBLE_EQ(measure_separating(m, square(1), rect(5, 7, -1, 1)), 4.0);
  EXPECT_DOUBLE_EQ(measure_separating(m, square(1), rect(-1, 1, 5, 7)), 4.0);
  EXPECT_DOUBLE_EQ(measure_separating(m, square(1), rect(0, 2, 0, 2)), 0.0);
}

TEST(MeasureSeparating, InclusionExclusionOnBoxes) {
  // For disjoint axis-separated boxes: [hull] - [A] - [B].
  const auto m = DrivingMeasure::axis_orthogonal({2, 0.5});
  const Polytope a = rect(-1, 1, -1, 1);
  const Polytope b = rect(3, 4, -0.5, 0.5);
  const Polytope hull = rect(-1, 4, -1, 1);
  const double along0 = 2 * (5.0 - 2.0 - 1.0);
  EXPECT_DOUBLE_EQ(measure_separating(m, a, b), along0);
  const double hitting = measure_hitting(m, hull) - measure_hitting(m, a) - measure_hitting(m, b);
  // Axis 1 contributes overlap, not separation, so it is removed from the identity.
  EXPECT_DOUBLE_EQ(hitting + 0.5 * 1.0, along0);
}

TEST(MeasureSeparating, IsotropicGap) {
  // Two points at distance 2: isotropic measure of separating lines is 2 * (2/pi).
  const auto m = DrivingMeasure::isotropic2d(1.0);
  const double v = measure_separating(m, Polygon::regular(64, 1e-4, -1, 0),
                                      PointSet{{{1, 0}}});
  EXPECT_NEAR(v, 4.0 / M_PI, 1e-3);
}

TEST(MeasureFacetSeparating, EqualityCase) {
  const Polytope inner = square(1);
  const Polytope outer = square(2);
  const auto m = DrivingMeasure::axis_orthogonal({1, 1});
  for (std::size_t a = 0; a < 4; ++a) {
    EXPECT_DOUBLE_EQ(measure_facet_separating(m, inner, outer, a), 1.0);
  }
  const auto m31 = DrivingMeasure::axis_orthogonal({3, 1});
  EXPECT_DOUBLE_EQ(measure_facet_separating(m31, inner, outer, 2), 1.0);
  EXPECT_DOUBLE_EQ(measure_facet_separating(m31, inner, outer, 0), 3.0);
}

TEST(ScaleMeasureCheck, LinearInR) {
  const auto m = DrivingMeasure::axis_orthogonal({1, 1});
  const Polytope inner = square(1);
  const Polytope outer = square(2);
  EXPECT_DOUBLE_EQ(scale_measure_check(m, inner, outer, 0, 3.0), 5.0);
  EXPECT_DOUBLE_EQ(scale_measure_check(m, inner, outer, 0, 1.0),
                   measure_facet_separating(m, inner, outer, 0));
  EXPECT_LT(scale_measure_check(m, inner, outer, 1, 2.0),
            scale_measure_check(m, inner, outer, 1, 4.0));
}

TEST(SampleHitting, WidthProportionalDirections) {
  const auto m = DrivingMeasure::axis_orthogonal({1, 1});
  const Polytope p = rect(0, 2, 0, 1);
  RandomStream rng(42);
  const int n = 100000;
  std::array<int, 2> count{};
  for (int i = 0; i < n; ++i) {
    const auto h = sample_hitting(m, p, rng);
    ASSERT_TRUE(hits(h, p));
    const auto c = h.normal().axis_index();
    ASSERT_TRUE(c.has_value());
    ++count[*c];
  }
  // Chi-square with one degree of freedom against (2/3, 1/3).
  const double e0 = n * 2.0 / 3.0;
  const double e1 = n / 3.0;
  const double chi2 = std::pow(count[0] - e0, 2) / e0 + std::pow(count[1] - e1, 2) / e1;
  EXPECT_LT(chi2, 10.83);  // 0.999 quantile
}

TEST(SampleHitting, IsotropicAlwaysHits) {
  const auto m = DrivingMeasure::isotropic2d(2.0);
  const Polytope p = Polygon({{0.5, 0.5}, {3, 0.7}, {1, 2}});
  RandomStream rng(3);
  for (int i = 0; i < 2000; ++i) EXPECT_TRUE(hits(sample_hitting(m, p, rng), p));
}

TEST(DrivingMeasure, Regime) {
  const auto iso = DrivingMeasure::isotropic2d(1.0);
  EXPECT_THROW(iso.check_regime(Box::cube(3, 1.0)), RegimeMismatch);
  EXPECT_THROW(DrivingMeasure::axis_orthogonal({1, -1}), InvalidArgument);
  EXPECT_THROW(DrivingMeasure::isotropic2d(0.0), InvalidArgument);
  EXPECT_TRUE(DrivingMeasure::axis_orthogonal({1, 2}).axis_aligned());
}

TEST(DrivingMeasure, DiscreteWeightsNormalized) {
  const auto m = DrivingMeasure::axis_orthogonal({3, 1});
  EXPECT_DOUBLE_EQ(m.gamma(), 4.0);
  EXPECT_DOUBLE_EQ(m.axes()[0].w, 0.75);
  EXPECT_DOUBLE_EQ(m.axes()[1].w, 0.25);
}

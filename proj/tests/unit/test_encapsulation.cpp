// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "stit/encapsulation.hpp"
#include "stit/errors.hpp"

using namespace stit;

namespace {

Polytope square(double h) { return Box::cube(2, h); }

// sum_k C(4,k) (-1)^k 4 / (4 + k)
double series_limit() {
  const double c[] = {1, 4, 6, 4, 1};
  double s = 0.0;
  for (int k = 0; k <= 4; ++k) s += c[k] * ((k % 2) ? -1.0 : 1.0) * 4.0 / (4.0 + k);
  return s;
}

// Independent quadrature of P(M <= min(sigma', t)) for sigma' ~ Exp(L),
// sigma_a ~ Exp(m_a): the density of M integrated against e^{-L s}.
double quadrature_bound(double t, double L, const std::vector<double>& m) {
  auto cdf = [&](double s) {
    double p = 1.0;
    for (double x : m) p *= 1.0 - std::exp(-x * s);
    return p;
  };
  // P(M <= min(sigma', t)) = int_0^t e^{-L s} dF_M(s) = F_M(t) e^{-L t} + L int_0^t F_M e^{-L s}.
  auto f = [&](double s) { return L * cdf(s) * std::exp(-L * s); };
  const double integral = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      f, 0.0, t, 15, 1e-14);
  return cdf(t) * std::exp(-L * t) + integral;
}

}  // namespace

TEST(LowerBound, Examples) {
  const BoundParams p{4.0, {1, 1, 1, 1}};
  EXPECT_NEAR(series_limit(), 1.0 / 70.0, 1e-15);
  EXPECT_DOUBLE_EQ(lower_bound(0.0, p), 0.0);
  EXPECT_NEAR(lower_bound(kInfinity, p), 1.0 / 70.0, 1e-12);
  EXPECT_NEAR(lower_bound(1e6, p), 1.0 / 70.0, 1e-9);
  const double v = lower_bound(1.0, p);
  EXPECT_GE(v, std::exp(-4.0) * std::pow(1 - std::exp(-1.0), 4));
  EXPECT_LE(v, 1.0 / 70.0);
  EXPECT_NEAR(v, quadrature_bound(1.0, 4.0, p.band_masses), 1e-12);
}

TEST(LowerBound, MatchesQuadratureAndIsMonotone) {
  const BoundParams p{2.5, {0.5, 1.5, 1.0, 2.0, 0.7}};
  double prev = 0.0;
  for (double t : {0.1, 0.5, 1.0, 2.0, 5.0, 20.0}) {
    const double v = lower_bound(t, p);
    EXPECT_NEAR(v, quadrature_bound(t, p.lambda_inner, p.band_masses), 1e-11);
    EXPECT_GE(v, prev);
    prev = v;
  }
}

TEST(LowerBound, ManyBandsUsesQuadrature) {
  const BoundParams p{1.0, std::vector<double>(24, 3.0)};
  const double v = lower_bound(4.0, p);
  EXPECT_NEAR(v, quadrature_bound(4.0, 1.0, p.band_masses), 1e-10);
}

TEST(LowerBound, Errors) {
  EXPECT_THROW(lower_bound(-1.0, {4.0, {1}}), InvalidArgument);
  EXPECT_THROW(lower_bound(1.0, {0.0, {1}}), InvalidArgument);
  EXPECT_THROW(lower_bound(1.0, {4.0, {1, 0}}), InvalidArgument);
}

TEST(TStar, Example) {
  EXPECT_NEAR(t_star(0.19, 4.0), 0.026341, 1e-6);
  EXPECT_NEAR(t_star(0.19, 4.0), -std::log(0.9) / 4.0, 1e-15);
  EXPECT_LT(t_star(1e-9, 4.0), 1e-9);
  EXPECT_THROW(t_star(1.0, 4.0), InvalidArgument);
}

TEST(ROfS, Example) {
  const double r = r_of_s(0.1, 0.19, 1.0, 2);
  EXPECT_NEAR(r, 36.50, 0.01);
  EXPECT_GT(std::pow(1 - std::exp(-0.1 * r * 1.0), 4), 0.9);
  EXPECT_DOUBLE_EQ(r_of_s(1e9, 0.19, 1.0, 2), 1.0);
}

TEST(BoxInBox, EqualityCase) {
  const auto p = box_in_box(1, 2, {1, 1});
  ASSERT_EQ(p.bands.size(), 4u);
  const auto bp = bound_params(p);
  EXPECT_DOUBLE_EQ(bp.lambda_inner, 4.0);
  for (double m : bp.band_masses) EXPECT_DOUBLE_EQ(m, 1.0);
  EXPECT_THROW(box_in_box(2, 1, {1, 1}), InvalidArgument);
}

TEST(BuildWindow, AxisOrthogonal) {
  const auto p = build_window(square(1), DrivingMeasure::axis_orthogonal({1, 1}));
  EXPECT_TRUE(approx_equal(p.outer, square(4)));
  ASSERT_EQ(p.bands.size(), 4u);
  for (const auto& b : p.bands) {
    EXPECT_DOUBLE_EQ(b.d_lo, 2.0);
    EXPECT_DOUBLE_EQ(b.d_hi, 3.0);
    EXPECT_DOUBLE_EQ(b.mass, 1.0);
  }
}

TEST(BuildWindow, IsotropicArcs) {
  const auto m = DrivingMeasure::isotropic2d(1.0);
  const auto p = build_window(square(1), m);
  ASSERT_EQ(p.bands.size(), 4u);
  for (const auto& b : p.bands) EXPECT_NEAR(b.mass, 0.125, 1e-12);
  // Fraction of hitting draws falling in each band, against mass / Lambda([W]).
  RandomStream rng(17);
  const int n = 200000;
  std::vector<int> count(4, 0);
  for (int i = 0; i < n; ++i) {
    const auto h = sample_hitting(m, p.outer, rng);
    for (std::size_t a = 0; a < 4; ++a) count[a] += band_contains(p.bands[a], h) ? 1 : 0;
  }
  const double q = 0.125 / measure_hitting(m, p.outer);
  const double sigma = std::sqrt(q * (1 - q) / n);
  for (int c : count) EXPECT_NEAR(c / double(n), q, 4 * sigma);
}

TEST(SampleBand, MembersSeparate) {
  const auto p = build_window(square(1), DrivingMeasure::isotropic2d(1.0));
  RandomStream rng(4);
  for (const auto& b : p.bands) {
    for (int i = 0; i < 200; ++i) {
      const auto h = sample_band(b, rng);
      EXPECT_TRUE(band_contains(b, h));
      EXPECT_TRUE(separates(h, p.inner, facets(p.outer)[b.facet].body));
    }
  }
}

TEST(IsEncapsulated, Examples) {
  const Polytope inner = square(1);
  const Polytope outer = square(2);
  EXPECT_FALSE(is_encapsulated(outer, inner, outer));
  EXPECT_TRUE(is_encapsulated(inner, inner, outer));
  const Polytope notched = Polygon({{-1, -1}, {1, -1}, {1, 0.5}, {0.5, 1}, {-1, 1}});
  EXPECT_FALSE(is_encapsulated(notched, inner, outer));
}

TEST(SufficientEvent, LimitAndZero) {
  const auto p = box_in_box(1, 2, {1, 1});
  const int n = 100000;
  int hits = 0;
  for (int i = 0; i < n; ++i) {
    RandomStream rng(99, i);
    const auto e = sufficient_event_time(p, rng);
    EXPECT_FALSE(e.occurred_by(0.0));
    hits += e.occurred_by(kInfinity) ? 1 : 0;
  }
  const double q = 1.0 / 70.0;
  EXPECT_NEAR(hits / double(n), q, 4 * std::sqrt(q * (1 - q) / n));
}

TEST(EncapsulationTime, NeedsFourCuts) {
  const auto p = box_in_box(1, 2, {1, 1});
  for (std::uint64_t s = 0; s < 300; ++s) {
    RandomStream rng(s);
    const auto tree = simulate(p.measure, p.outer, 3.0, rng);
    const double a = encapsulation_time(tree, p.inner);
    if (a == kInfinity) continue;
    std::size_t depth = 0;
    for (auto id = tree.zero_cell_id(a); tree.node(id).parent; id = *tree.node(id).parent) ++depth;
    EXPECT_GE(depth, 4u);
  }
}

TEST(EncapsulationTime, LineageSamplerAgreesWithTree) {
  const auto p = box_in_box(1, 2, {1, 1});
  const int n = 4000;
  std::vector<double> tree_t, lineage_t;
  int tree_hits = 0, lineage_hits = 0;
  for (int i = 0; i < n; ++i) {
    RandomStream a(5, i), b(6, i);
    tree_hits += encapsulation_time(simulate(p.measure, p.outer, 4.0, a), p.inner) <= 4.0;
    lineage_hits += sample_encapsulation_time(p.measure, p.inner, p.outer, 4.0, b) <= 4.0;
  }
  const double pa = tree_hits / double(n);
  const double pb = lineage_hits / double(n);
  const double sigma = std::sqrt(2 * (1.0 / 70) * (1 - 1.0 / 70) / n);
  EXPECT_NEAR(pa, pb, 4 * sigma);
}

// SPDX-License-Identifier: Apache-2.0
#include "stit/encapsulation.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <string>

#include "stit/errors.hpp"

namespace stit {

namespace {

constexpr std::size_t kExactExpansionMaxQ = 20;

// Facet of `outer` whose outward normal is u.
std::size_t facet_with_normal(const Polytope& outer, const Direction& u) {
  const auto fs = facets(outer);
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (std::abs(dot(fs[i].outward_normal, u.components()) - 1.0) <= 1e-9) return i;
  }
  throw InvalidArgument("outer window has no facet with the requested normal");
}

// Oriented offset of h along a direction close to u, with the angle between.
std::pair<double, double> oriented(const Hyperplane& h, const Direction& u) {
  const double c = dot(h.normal().components(), u.components());
  const double sign = c >= 0.0 ? 1.0 : -1.0;
  const double angle = std::acos(std::clamp(std::abs(c), 0.0, 1.0));
  return {sign * h.offset(), angle};
}

void check_problem_band(const EncapsulationProblem& p, const Band& b) {
  if (!(b.mass > 0.0)) throw InvalidArgument("band masses must be positive");
  const auto fs = facets(p.outer);
  if (b.facet >= fs.size()) throw InvalidArgument("band facet index out of range");
  // Every member must separate W' from its facet; check the extreme directions.
  const std::size_t steps = b.half_width > 0.0 ? 64 : 0;
  for (std::size_t k = 0; k <= steps; ++k) {
    const double phi =
        steps ? -b.half_width + 2.0 * b.half_width * static_cast<double>(k) / steps : 0.0;
    Vec v = b.u.components();
    if (steps) {
      v = {std::cos(phi) * b.u[0] - std::sin(phi) * b.u[1],
           std::sin(phi) * b.u[0] + std::cos(phi) * b.u[1]};
    }
    const auto dir = Direction::normalized(v);
    const double h_inner = support_function(p.inner, dir);
    const double f_min = -support_function(fs[b.facet].body, -dir);
    if (!(h_inner <= b.d_lo && b.d_hi <= f_min)) {
      throw InvalidArgument("band hyperplanes do not separate W' from facet " +
                            std::to_string(b.facet));
    }
  }
}

}  // namespace

EncapsulationProblem box_in_box(double alpha, double beta, const std::vector<double>& g) {
  if (!(alpha > 0.0) || !(beta > alpha)) throw InvalidArgument("need 0 < alpha < beta");
  const std::size_t dim = g.size();
  auto m = DrivingMeasure::axis_orthogonal(g);
  EncapsulationProblem p{Box::cube(dim, alpha), Box::cube(dim, beta), m, {}};
  for (std::size_t c = 0; c < dim; ++c) {
    for (const double sign : {1.0, -1.0}) {
      const auto u = Direction::axis(dim, c, sign);
      p.bands.push_back({facet_with_normal(p.outer, u), u, 0.0, alpha, beta, g[c] * (beta - alpha)});
    }
  }
  for (const auto& b : p.bands) check_problem_band(p, b);
  return p;
}

EncapsulationProblem build_window(const Polytope& inner, const DrivingMeasure& m,
                                  const WindowKnobs& knobs) {
  m.check_regime(inner);
  const Vec origin(inner.dim(), 0.0);
  if (inner_margin(inner, origin) <= kGeomTol) {
    throw InvalidArgument("origin must lie in the interior of W'");
  }
  if (!(knobs.band_lo > 0.0 && knobs.band_hi > knobs.band_lo && knobs.offset > knobs.band_hi)) {
    throw InvalidArgument("need 0 < band_lo < band_hi < offset");
  }
  const std::size_t dim = inner.dim();

  // Axis directions u_a with their weights theta(U_a).
  std::vector<Direction> centers;
  std::vector<double> theta;
  double half_width = 0.0;
  if (m.is_isotropic()) {
    half_width = knobs.arc_half_width;
    if (!(half_width > 0.0 && half_width < std::numbers::pi / 4)) {
      throw InvalidArgument("arc half-width must lie in (0, pi/4)");
    }
    for (std::size_t c = 0; c < 2; ++c) {
      centers.push_back(Direction::axis(2, c));
      theta.push_back(2.0 * half_width / std::numbers::pi);
    }
  } else if (dim == 2) {
    std::vector<std::size_t> order(m.axes().size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return m.axes()[a].w > m.axes()[b].w; });
    if (order.size() < 2) throw UnsupportedSupport("directions do not positively span the plane");
    for (std::size_t k = 0; k < 2; ++k) {
      centers.push_back(m.axes()[order[k]].u);
      theta.push_back(m.axes()[order[k]].w);
    }
    const double c = dot(centers[0].components(), centers[1].components());
    if (std::abs(std::abs(c) - 1.0) <= kUnitTol) {
      throw UnsupportedSupport("directions do not positively span the plane");
    }
  } else {
    for (const auto& a : m.axes()) {
      centers.push_back(a.u);
      theta.push_back(a.w);
    }
  }

  // Directions +-u in facet order, and W as the intersection of half-spaces.
  std::vector<Direction> dirs;
  std::vector<double> weight;
  for (std::size_t i = 0; i < centers.size(); ++i) {
    dirs.push_back(centers[i]);
    dirs.push_back(-centers[i]);
    weight.push_back(theta[i]);
    weight.push_back(theta[i]);
  }
  std::vector<double> dist;
  for (const auto& u : dirs) dist.push_back(support_function(inner, u) + knobs.offset);

  std::optional<Polytope> outer;
  const bool axis_dirs =
      std::all_of(dirs.begin(), dirs.end(), [](const Direction& u) { return u.axis_index(); });
  if (axis_dirs) {
    Vec lo(dim), hi(dim);
    for (std::size_t i = 0; i < dirs.size(); ++i) {
      const std::size_t c = *dirs[i].axis_index();
      if (dirs[i][c] > 0) {
        hi[c] = dist[i];
      } else {
        lo[c] = -dist[i];
      }
    }
    outer = Box(lo, hi);
  } else {
    double far = 0.0;
    for (double d : dist) far += d;
    const double s = std::abs(dirs[0][0] * dirs[2][1] - dirs[0][1] * dirs[2][0]);
    outer = Polytope(Box::cube(2, 4.0 * far / s));
    for (std::size_t i = 0; i < dirs.size(); ++i) {
      outer = clip_tolerant(*outer, Constraint{dirs[i].components(), dist[i]});
    }
  }

  EncapsulationProblem p{inner, *outer, m, {}};
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    const double h = dist[i] - knobs.offset;
    p.bands.push_back({facet_with_normal(*outer, dirs[i]), dirs[i], half_width, h + knobs.band_lo,
                       h + knobs.band_hi,
                       m.gamma() * weight[i] * (knobs.band_hi - knobs.band_lo)});
  }
  for (const auto& b : p.bands) check_problem_band(p, b);
  return p;
}

BoundParams bound_params(const EncapsulationProblem& p) {
  BoundParams out{measure_hitting(p.measure, p.inner), {}};
  for (const auto& b : p.bands) out.band_masses.push_back(b.mass);
  return out;
}

bool band_contains(const Band& b, const Hyperplane& h) {
  if (h.dim() != b.u.dim()) return false;
  const auto [d, angle] = oriented(h, b.u);
  const bool dir_ok = b.half_width > 0.0 ? angle <= b.half_width : angle <= 1e-6;
  return dir_ok && b.d_lo < d && d < b.d_hi;
}

Hyperplane sample_band(const Band& b, RandomStream& rng) {
  const double d = rng.uniform(b.d_lo, b.d_hi);
  if (b.half_width == 0.0) return Hyperplane(b.u, d);
  const double phi = std::atan2(b.u[1], b.u[0]) + rng.uniform(-b.half_width, b.half_width);
  return Hyperplane(Direction::from_angle(phi), d);
}

bool is_encapsulated(const Polytope& zero, const Polytope& inner, const Polytope& outer) {
  return contains(zero, inner, false) && contains(outer, zero, true);
}

bool is_encapsulated(const Tessellation& t, const Polytope& inner, const Polytope& outer) {
  return is_encapsulated(zero_cell(t), inner, outer);
}

double encapsulation_time(const CellTree& tree, const Polytope& inner) {
  return encapsulation_time(tree, inner, tree.window());
}

double encapsulation_time(const CellTree& tree, const Polytope& inner, const Polytope& outer) {
  // The zero cell only changes when its lineage splits, so checking each
  // lineage node at its birth covers every jump.
  const Vec origin(tree.window().dim(), 0.0);
  std::size_t id = tree.zero_cell_id(0.0);
  for (;;) {
    const auto& n = tree.node(id);
    if (is_encapsulated(n.polytope, inner, outer)) return n.birth;
    if (!n.death) return kInfinity;
    const auto side = side_of(*n.split, origin);
    if (!side) throw AmbiguousZeroCell("origin lies on a splitting hyperplane");
    id = *side == Side::Plus ? n.children->first : n.children->second;
  }
}

double SufficientEvent::max_sigma() const {
  double m = 0.0;
  for (double s : sigma) m = std::max(m, s);
  return m;
}

bool SufficientEvent::occurred_by(double t) const {
  const double m = max_sigma();
  return m <= t && m <= sigma_inner;
}

SufficientEvent sufficient_event_time(const EncapsulationProblem& p, RandomStream& rng) {
  SufficientEvent e{rng.exponential(measure_hitting(p.measure, p.inner)), {}};
  for (const auto& b : p.bands) {
    if (!(b.mass > 0.0)) throw InvalidArgument("band masses must be positive");
    e.sigma.push_back(rng.exponential(b.mass));
  }
  return e;
}

SufficientEvent sufficient_event_from_marks(const EncapsulationProblem& p,
                                            const std::vector<Mark>& marks) {
  SufficientEvent e{kInfinity, std::vector<double>(p.bands.size(), kInfinity)};
  for (const auto& mk : marks) {
    if (e.sigma_inner == kInfinity && hits(mk.plane, p.inner)) e.sigma_inner = mk.time;
    for (std::size_t a = 0; a < p.bands.size(); ++a) {
      if (e.sigma[a] == kInfinity && band_contains(p.bands[a], mk.plane)) e.sigma[a] = mk.time;
    }
  }
  return e;
}

std::vector<Mark> zero_lineage_marks(const CellTree& tree) {
  if (tree.method() != Method::Rejection) {
    throw MethodMismatch("window-level marks exist only for rejection-method trees");
  }
  const Vec origin(tree.window().dim(), 0.0);
  std::vector<Mark> out;
  std::size_t id = tree.zero_cell_id(0.0);
  for (;;) {
    const auto& n = tree.node(id);
    out.insert(out.end(), n.rejected.begin(), n.rejected.end());
    if (!n.death) break;
    out.push_back({*n.split, *n.death});
    const auto side = side_of(*n.split, origin);
    if (!side) throw AmbiguousZeroCell("origin lies on a splitting hyperplane");
    id = *side == Side::Plus ? n.children->first : n.children->second;
  }
  return out;
}

double lower_bound(double t, const BoundParams& p) {
  if (!(p.lambda_inner > 0.0)) throw InvalidArgument("Lambda([W']) must be positive");
  for (double m : p.band_masses) {
    if (!(m > 0.0)) throw InvalidArgument("band masses must be positive");
  }
  if (std::isnan(t) || t < 0.0) throw InvalidArgument("t must be non-negative");
  if (t == 0.0) return 0.0;
  const double lam = p.lambda_inner;
  const std::size_t q = p.q();

  double closed = 0.0;
  if (std::isfinite(t)) {
    closed = std::exp(-t * lam);
    for (double m : p.band_masses) closed *= -std::expm1(-t * m);
  }

  double integral = 0.0;
  if (q <= kExactExpansionMaxQ) {
    // prod_a (1 - e^{-x m_a}) = sum_S (-1)^{|S|} e^{-x m_S}
    const std::size_t subsets = std::size_t{1} << q;
    for (std::size_t s = 0; s < subsets; ++s) {
      double ms = 0.0;
      int parity = 1;
      for (std::size_t a = 0; a < q; ++a) {
        if ((s >> a) & 1U) {
          ms += p.band_masses[a];
          parity = -parity;
        }
      }
      const double rate = lam + ms;
      const double mass = std::isfinite(t) ? -std::expm1(-t * rate) : 1.0;
      integral += parity * lam / rate * mass;
    }
  } else {
    auto f = [&](double x) {
      double v = lam * std::exp(-x * lam);
      for (double m : p.band_masses) v *= -std::expm1(-x * m);
      return v;
    };
    using boost::math::quadrature::gauss_kronrod;
    integral = gauss_kronrod<double, 61>::integrate(f, 0.0, t, 15, 1e-13);
  }
  return std::clamp(closed + integral, 0.0, 1.0);
}

double t_star(double eps, double lambda_inner) {
  if (!(eps > 0.0 && eps < 1.0)) throw InvalidArgument("eps must lie in (0, 1)");
  if (!(lambda_inner > 0.0)) throw InvalidArgument("Lambda([W']) must be positive");
  return -std::log(std::sqrt(1.0 - eps)) / lambda_inner;
}

double r_of_s(double s, double eps, double L, std::size_t dim) {
  if (!(s > 0.0) || !(L > 0.0) || dim < 1) throw InvalidArgument("need s > 0, L > 0, dim >= 1");
  if (!(eps > 0.0 && eps < 1.0)) throw InvalidArgument("eps must lie in (0, 1)");
  const double root = std::pow(1.0 - eps, 1.0 / (4.0 * static_cast<double>(dim)));
  const double v = -std::log1p(-root) / (s * L);
  return std::max(1.0, v * (1.0 + 1e-9));
}

double sample_encapsulation_time(const DrivingMeasure& m, const Polytope& inner,
                                 const Polytope& outer, double horizon, RandomStream& rng) {
  m.check_regime(outer);
  Polytope cell = outer;
  double t = 0.0;
  for (std::size_t events = 0;; ++events) {
    if (events > 10'000'000) throw ExplosionGuard("zero-cell lineage exceeded the event cap");
    t += rng.exponential(measure_hitting(m, cell));
    if (t > horizon) return kInfinity;
    for (;;) {
      const auto h = sample_hitting(m, cell, rng);
      if (std::abs(h.offset()) <= kGeomTol) continue;
      try {
        auto plus = clip(cell, HalfSpace{h, Side::Plus});
        auto minus = clip(cell, HalfSpace{h, Side::Minus});
        if (!plus || !minus) continue;
        cell = std::move(*plus);
      } catch (const DegenerateCut&) {
        continue;
      }
      break;
    }
    if (!contains(cell, inner, false)) return kInfinity;
    if (contains(outer, cell, true)) return t;
  }
}

}  // namespace stit

// SPDX-License-Identifier: Apache-2.0
#include "stit/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "stit/errors.hpp"

namespace stit {

namespace detail {
Polygon make_polygon_unchecked(std::vector<Point2> vertices) {
  return Polygon(std::move(vertices), Polygon::Unchecked{});
}
}  // namespace detail

namespace {

double cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

double signed_area(const std::vector<Point2>& v) {
  double s = 0.0;
  for (std::size_t i = 0, n = v.size(); i < n; ++i) {
    const auto& a = v[i];
    const auto& b = v[(i + 1) % n];
    s += a.x * b.y - b.x * a.y;
  }
  return 0.5 * s;
}

void require_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw InvalidArgument(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                          " vs " + std::to_string(b) + ")");
  }
}

// Drops consecutive vertices closer than tol (including the wrap-around pair).
void dedupe_ring(std::vector<Point2>& v) {
  std::vector<Point2> out;
  out.reserve(v.size());
  for (const auto& p : v) {
    if (out.empty() || std::hypot(p.x - out.back().x, p.y - out.back().y) > kGeomTol) {
      out.push_back(p);
    }
  }
  while (out.size() > 1 &&
         std::hypot(out.front().x - out.back().x, out.front().y - out.back().y) <= kGeomTol) {
    out.pop_back();
  }
  v = std::move(out);
}

std::optional<Polytope> finish_polygon(std::vector<Point2> out) {
  dedupe_ring(out);
  if (out.size() < 3 || signed_area(out) <= kAreaTol) return std::nullopt;
  return Polytope(detail::make_polygon_unchecked(std::move(out)));
}

// Sutherland-Hodgman against {<n,x> <= c} with unit n. Vertices with slack
// inside tol are kept as-is and never produce a crossing point.
std::optional<Polytope> clip_ring(const std::vector<Point2>& v, double nx, double ny, double c,
                                  double tol) {
  const std::size_t n = v.size();
  std::vector<double> s(n);
  bool any_out = false;
  bool any_in = false;
  for (std::size_t i = 0; i < n; ++i) {
    s[i] = nx * v[i].x + ny * v[i].y - c;
    if (s[i] > tol) any_out = true;
    if (s[i] <= tol) any_in = true;
  }
  if (!any_out) return Polytope(detail::make_polygon_unchecked(v));
  if (!any_in) return std::nullopt;

  std::vector<Point2> out;
  out.reserve(n + 2);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    const bool in_i = s[i] <= tol;
    const bool in_j = s[j] <= tol;
    if (in_i) out.push_back(v[i]);
    if (in_i != in_j) {
      // Only a strictly interior endpoint paired with a strictly exterior one
      // yields a new vertex; a boundary endpoint is its own crossing.
      const bool strict_pair = in_i ? (s[i] < -tol) : (s[j] < -tol);
      if (strict_pair) {
        const double t = s[i] / (s[i] - s[j]);
        out.push_back({v[i].x + t * (v[j].x - v[i].x), v[i].y + t * (v[j].y - v[i].y)});
      }
    }
  }
  return finish_polygon(std::move(out));
}

std::vector<Point2> box_ring(const Box& b) {
  return {{b.lo()[0], b.lo()[1]},
          {b.hi()[0], b.lo()[1]},
          {b.hi()[0], b.hi()[1]},
          {b.lo()[0], b.hi()[1]}};
}

// Axis of a constraint normal when it is +-e_c.
std::optional<std::size_t> normal_axis(const Vec& n) {
  std::optional<std::size_t> axis;
  for (std::size_t c = 0; c < n.size(); ++c) {
    if (n[c] != 0.0) {
      if (axis) return std::nullopt;
      axis = c;
    }
  }
  return axis;
}

Constraint unit_constraint(const Constraint& c) {
  const double len = norm(c.normal);
  if (!(len > 0.0)) throw InvalidArgument("constraint with zero normal");
  Constraint out{c.normal, c.offset / len};
  for (auto& x : out.normal) x /= len;
  return out;
}

}  // namespace

double dot(const Vec& a, const Vec& b) {
  require_dim(a.size(), b.size(), "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const Vec& a) {
  double s = 0.0;
  for (double x : a) s += x * x;
  return std::sqrt(s);
}

// ---------------------------------------------------------------------------
// Direction / Hyperplane / HalfSpace

Direction::Direction(Vec components) : c_(std::move(components)) {
  if (c_.empty()) throw InvalidArgument("direction of dimension 0");
  if (std::abs(norm(c_) - 1.0) > kUnitTol) {
    throw InvalidArgument("direction is not a unit vector (norm " + std::to_string(norm(c_)) + ")");
  }
}

Direction Direction::normalized(Vec v) {
  const double len = norm(v);
  if (!(len > 0.0) || !std::isfinite(len)) throw InvalidArgument("cannot normalize zero vector");
  for (auto& x : v) x /= len;
  return Direction(std::move(v), Unchecked{});
}

Direction Direction::axis(std::size_t dim, std::size_t c, double sign) {
  if (c >= dim) throw InvalidArgument("axis index out of range");
  Vec v(dim, 0.0);
  v[c] = sign < 0 ? -1.0 : 1.0;
  return Direction(std::move(v), Unchecked{});
}

Direction Direction::from_angle(double phi) {
  return Direction(Vec{std::cos(phi), std::sin(phi)}, Unchecked{});
}

Direction Direction::operator-() const {
  Vec v = c_;
  for (auto& x : v) x = -x;
  return Direction(std::move(v), Unchecked{});
}

bool Direction::lex_positive() const {
  for (double x : c_) {
    if (x > 0.0) return true;
    if (x < 0.0) return false;
  }
  return false;
}

std::optional<std::size_t> Direction::axis_index() const { return normal_axis(c_); }

Hyperplane::Hyperplane(Direction u, double d) : u_(std::move(u)), d_(d) {
  if (!std::isfinite(d)) throw InvalidArgument("hyperplane offset is not finite");
  if (!u_.lex_positive()) {
    u_ = -u_;
    d_ = -d_;
  }
}

Vec Hyperplane::plus_normal() const {
  Vec n = u_.components();
  if (d_ < 0.0) {
    for (auto& x : n) x = -x;
  }
  return n;
}

Constraint HalfSpace::constraint() const {
  Vec n = plane.plus_normal();
  const double c = std::abs(plane.offset());
  if (side == Side::Plus) return {std::move(n), c};
  for (auto& x : n) x = -x;
  return {std::move(n), -c};
}

bool HalfSpace::contains(const Vec& x, double tol) const {
  const auto c = constraint();
  return dot(c.normal, x) <= c.offset + tol;
}

std::optional<Side> side_of(const Hyperplane& h, const Vec& x, double tol) {
  const double s = dot(h.plus_normal(), x) - std::abs(h.offset());
  if (s < -tol) return Side::Plus;
  if (s > tol) return Side::Minus;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Polygon / Box / Polytope

Polygon::Polygon(std::vector<Point2> vertices) : v_(std::move(vertices)) {
  if (v_.size() < 3) throw InvalidArgument("polygon needs at least 3 vertices");
  for (const auto& p : v_) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw InvalidArgument("polygon vertex is not finite");
    }
  }
  if (signed_area(v_) < 0.0) std::reverse(v_.begin(), v_.end());
  if (signed_area(v_) <= kAreaTol) throw InvalidArgument("polygon has no interior");
  const std::size_t n = v_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = v_[i];
    const auto& b = v_[(i + 1) % n];
    const auto& c = v_[(i + 2) % n];
    const double scale = std::hypot(b.x - a.x, b.y - a.y) * std::hypot(c.x - b.x, c.y - b.y);
    if (cross(a, b, c) < -kGeomTol * std::max(scale, 1.0)) {
      throw InvalidArgument("polygon is not convex");
    }
  }
}

Polygon Polygon::regular(std::size_t n, double radius, double cx, double cy) {
  if (n < 3 || !(radius > 0.0)) throw InvalidArgument("regular polygon needs n >= 3, radius > 0");
  std::vector<Point2> v;
  v.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double phi = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    v.push_back({cx + radius * std::cos(phi), cy + radius * std::sin(phi)});
  }
  return Polygon(std::move(v));
}

double Polygon::area() const { return signed_area(v_); }

double Polygon::perimeter() const {
  double s = 0.0;
  for (std::size_t i = 0, n = v_.size(); i < n; ++i) {
    const auto& a = v_[i];
    const auto& b = v_[(i + 1) % n];
    s += std::hypot(b.x - a.x, b.y - a.y);
  }
  return s;
}

Point2 Polygon::centroid() const {
  double cx = 0.0;
  double cy = 0.0;
  double a2 = 0.0;
  // Shift to the first vertex to keep the sums well conditioned.
  const Point2 o = v_.front();
  for (std::size_t i = 0, n = v_.size(); i < n; ++i) {
    const Point2 p{v_[i].x - o.x, v_[i].y - o.y};
    const Point2 q{v_[(i + 1) % n].x - o.x, v_[(i + 1) % n].y - o.y};
    const double w = p.x * q.y - q.x * p.y;
    a2 += w;
    cx += (p.x + q.x) * w;
    cy += (p.y + q.y) * w;
  }
  return {o.x + cx / (3.0 * a2), o.y + cy / (3.0 * a2)};
}

Box::Box(Vec lo, Vec hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_.empty()) throw InvalidArgument("box of dimension 0");
  require_dim(lo_.size(), hi_.size(), "box");
  for (std::size_t c = 0; c < lo_.size(); ++c) {
    if (!std::isfinite(lo_[c]) || !std::isfinite(hi_[c]) || !(lo_[c] < hi_[c])) {
      throw InvalidArgument("box requires finite lo < hi on every axis");
    }
  }
}

Box Box::cube(std::size_t dim, double half_side) {
  return Box(Vec(dim, -half_side), Vec(dim, half_side));
}

double Box::volume() const {
  double v = 1.0;
  for (std::size_t c = 0; c < dim(); ++c) v *= length(c);
  return v;
}

double Box::surface() const {
  double s = 0.0;
  for (std::size_t c = 0; c < dim(); ++c) {
    double face = 1.0;
    for (std::size_t k = 0; k < dim(); ++k) {
      if (k != c) face *= length(k);
    }
    s += 2.0 * face;
  }
  return s;
}

std::size_t Polytope::dim() const { return is_box() ? box().dim() : 2; }

double Polytope::volume() const { return is_box() ? box().volume() : polygon().area(); }

double Polytope::surface() const { return is_box() ? box().surface() : polygon().perimeter(); }

Vec Polytope::centroid() const {
  if (is_box()) {
    Vec c(box().dim());
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = 0.5 * (box().lo()[k] + box().hi()[k]);
    return c;
  }
  const auto p = polygon().centroid();
  return {p.x, p.y};
}

std::vector<Vec> Polytope::vertices() const {
  std::vector<Vec> out;
  if (is_polygon()) {
    for (const auto& p : polygon().vertices()) out.push_back({p.x, p.y});
    return out;
  }
  const auto& b = box();
  if (b.dim() > 20) throw InvalidArgument("box vertex enumeration beyond 20 dimensions");
  const std::size_t count = std::size_t{1} << b.dim();
  out.reserve(count);
  for (std::size_t mask = 0; mask < count; ++mask) {
    Vec v(b.dim());
    for (std::size_t c = 0; c < b.dim(); ++c) v[c] = (mask >> c) & 1U ? b.hi()[c] : b.lo()[c];
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<Constraint> Polytope::constraints() const {
  std::vector<Constraint> out;
  if (is_box()) {
    const auto& b = box();
    for (std::size_t c = 0; c < b.dim(); ++c) {
      Vec n(b.dim(), 0.0);
      n[c] = 1.0;
      out.push_back({n, b.hi()[c]});
      n[c] = -1.0;
      out.push_back({n, -b.lo()[c]});
    }
    return out;
  }
  const auto& v = polygon().vertices();
  for (std::size_t i = 0, n = v.size(); i < n; ++i) {
    const auto& a = v[i];
    const auto& b = v[(i + 1) % n];
    const double len = std::hypot(b.x - a.x, b.y - a.y);
    Vec nrm{(b.y - a.y) / len, -(b.x - a.x) / len};
    const double off = nrm[0] * a.x + nrm[1] * a.y;
    out.push_back({std::move(nrm), off});
  }
  return out;
}

Polygon as_polygon(const Polytope& p) {
  if (p.is_polygon()) return p.polygon();
  if (p.box().dim() != 2) throw RegimeMismatch("only 2-D boxes convert to polygons");
  return detail::make_polygon_unchecked(box_ring(p.box()));
}

// ---------------------------------------------------------------------------
// Support function and friends

double support_function(const Polytope& p, const Vec& u) {
  require_dim(p.dim(), u.size(), "support_function");
  if (p.is_box()) {
    const auto& b = p.box();
    double s = 0.0;
    for (std::size_t c = 0; c < b.dim(); ++c) s += std::max(u[c] * b.lo()[c], u[c] * b.hi()[c]);
    return s;
  }
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& v : p.polygon().vertices()) best = std::max(best, u[0] * v.x + u[1] * v.y);
  return best;
}

double support_function(const PointSet& p, const Vec& u) {
  if (p.points.empty()) throw InvalidArgument("support function of an empty point set");
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& x : p.points) best = std::max(best, dot(x, u));
  return best;
}

double support_function(const Polytope& p, const Direction& u) {
  return support_function(p, u.components());
}

double support_function(const PointSet& p, const Direction& u) {
  return support_function(p, u.components());
}

double diameter(const Polytope& p) {
  if (p.is_box()) {
    Vec d(p.box().dim());
    for (std::size_t c = 0; c < d.size(); ++c) d[c] = p.box().length(c);
    return norm(d);
  }
  const auto& v = p.polygon().vertices();
  double best = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      best = std::max(best, std::hypot(v[i].x - v[j].x, v[i].y - v[j].y));
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Clipping

std::optional<Polytope> clip(const Polytope& p, const HalfSpace& hs) {
  require_dim(p.dim(), hs.plane.dim(), "clip");
  const Constraint c = hs.constraint();
  if (p.is_box()) {
    if (const auto axis = normal_axis(c.normal)) {
      const auto& b = p.box();
      const std::size_t k = *axis;
      const bool upper = c.normal[k] > 0.0;  // x_k <= v, else x_k >= v
      const double v = upper ? c.offset : -c.offset;
      if (std::abs(v - b.lo()[k]) <= kGeomTol || std::abs(v - b.hi()[k]) <= kGeomTol) {
        throw DegenerateCut("cut passes through a box face");
      }
      Vec lo = b.lo();
      Vec hi = b.hi();
      if (upper) {
        if (v >= hi[k]) return p;
        if (v <= lo[k]) return std::nullopt;
        hi[k] = v;
      } else {
        if (v <= lo[k]) return p;
        if (v >= hi[k]) return std::nullopt;
        lo[k] = v;
      }
      return Polytope(Box(std::move(lo), std::move(hi)));
    }
    if (p.box().dim() != 2) {
      throw RegimeMismatch("oblique cut of a box is only supported in 2-D");
    }
  }
  const Polygon poly = as_polygon(p);
  for (const auto& v : poly.vertices()) {
    if (std::abs(c.normal[0] * v.x + c.normal[1] * v.y - c.offset) <= kGeomTol) {
      throw DegenerateCut("cut passes within tolerance of a vertex");
    }
  }
  if (p.is_polygon()) return clip_ring(poly.vertices(), c.normal[0], c.normal[1], c.offset, 0.0);
  // Whole box on one side keeps it a box.
  auto out = clip_ring(poly.vertices(), c.normal[0], c.normal[1], c.offset, 0.0);
  if (out && out->polygon().size() == 4 && std::abs(out->volume() - p.volume()) <= kAreaTol) {
    return p;
  }
  return out;
}

std::optional<Polytope> clip_tolerant(const Polytope& p, const Constraint& raw) {
  require_dim(p.dim(), raw.normal.size(), "clip_tolerant");
  const Constraint c = unit_constraint(raw);
  if (p.is_box()) {
    if (const auto axis = normal_axis(c.normal)) {
      const auto& b = p.box();
      const std::size_t k = *axis;
      const bool upper = c.normal[k] > 0.0;
      const double v = upper ? c.offset : -c.offset;
      Vec lo = b.lo();
      Vec hi = b.hi();
      if (upper) {
        if (v >= hi[k] - kGeomTol) return p;
        if (v <= lo[k] + kGeomTol) return std::nullopt;
        hi[k] = v;
      } else {
        if (v <= lo[k] + kGeomTol) return p;
        if (v >= hi[k] - kGeomTol) return std::nullopt;
        lo[k] = v;
      }
      return Polytope(Box(std::move(lo), std::move(hi)));
    }
    if (p.box().dim() != 2) {
      throw RegimeMismatch("oblique cut of a box is only supported in 2-D");
    }
    const auto ring = box_ring(p.box());
    bool all_in = true;
    for (const auto& v : ring) {
      if (c.normal[0] * v.x + c.normal[1] * v.y - c.offset > kGeomTol) all_in = false;
    }
    if (all_in) return p;
    return clip_ring(ring, c.normal[0], c.normal[1], c.offset, kGeomTol);
  }
  return clip_ring(p.polygon().vertices(), c.normal[0], c.normal[1], c.offset, kGeomTol);
}

std::optional<Polytope> intersection(const Polytope& a, const Polytope& b) {
  require_dim(a.dim(), b.dim(), "intersection");
  if (a.is_box() && b.is_box()) {
    Vec lo(a.dim());
    Vec hi(a.dim());
    for (std::size_t c = 0; c < a.dim(); ++c) {
      lo[c] = std::max(a.box().lo()[c], b.box().lo()[c]);
      hi[c] = std::min(a.box().hi()[c], b.box().hi()[c]);
      if (hi[c] - lo[c] <= kGeomTol) return std::nullopt;
    }
    return Polytope(Box(std::move(lo), std::move(hi)));
  }
  std::optional<Polytope> out = a;
  for (const auto& c : b.constraints()) {
    out = clip_tolerant(*out, c);
    if (!out) return std::nullopt;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Predicates

bool hits(const Hyperplane& h, const Polytope& p) {
  const auto [lo, hi] = projection(p, h.normal());
  return lo <= h.offset() && h.offset() <= hi;
}

bool hits(const Hyperplane& h, const PointSet& p) {
  const auto [lo, hi] = projection(p, h.normal());
  return lo <= h.offset() && h.offset() <= hi;
}

namespace {
template <class Body>
bool contains_impl(const Polytope& p, const Body& q, bool strict) {
  require_dim(p.dim(), [&] {
    if constexpr (std::is_same_v<Body, PointSet>) {
      return q.points.empty() ? p.dim() : q.points.front().size();
    } else {
      return q.dim();
    }
  }(), "contains");
  for (const auto& c : p.constraints()) {
    const double h = support_function(q, c.normal);
    if (strict ? !(h < c.offset - kGeomTol) : !(h <= c.offset + kGeomTol)) return false;
  }
  return true;
}
}  // namespace

bool contains(const Polytope& p, const Polytope& q, bool strict) {
  return contains_impl(p, q, strict);
}

bool contains(const Polytope& p, const PointSet& q, bool strict) {
  return contains_impl(p, q, strict);
}

double inner_margin(const Polytope& p, const Vec& x) {
  require_dim(p.dim(), x.size(), "inner_margin");
  double m = std::numeric_limits<double>::infinity();
  for (const auto& c : p.constraints()) m = std::min(m, c.offset - dot(c.normal, x));
  return m;
}

bool contains_point(const Polytope& p, const Vec& x, double tol) {
  return inner_margin(p, x) >= -tol;
}

bool intersects(const Polytope& a, const Polytope& b) {
  require_dim(a.dim(), b.dim(), "intersects");
  if (a.is_box() && b.is_box()) {
    for (std::size_t c = 0; c < a.dim(); ++c) {
      if (a.box().hi()[c] < b.box().lo()[c] - kGeomTol) return false;
      if (b.box().hi()[c] < a.box().lo()[c] - kGeomTol) return false;
    }
    return true;
  }
  // Separating-axis test over the facet normals of both (complete in 2-D).
  for (const auto* body : {&a, &b}) {
    for (const auto& c : body->constraints()) {
      Vec neg = c.normal;
      for (auto& x : neg) x = -x;
      if (support_function(a, c.normal) < -support_function(b, neg) - kGeomTol) return false;
      if (support_function(b, c.normal) < -support_function(a, neg) - kGeomTol) return false;
    }
  }
  return true;
}

bool intersects(const Polytope& a, const PointSet& b) {
  if (b.points.empty()) return false;
  for (const auto& x : b.points) require_dim(a.dim(), x.size(), "intersects");
  if (b.points.size() == 1) return contains_point(a, b.points.front());
  if (a.dim() == 2) {
    for (const auto& c : a.constraints()) {
      if (support_function(b, c.normal) < -support_function(a, Vec{-c.normal[0], -c.normal[1]}) -
                                              kGeomTol) {
        return false;
      }
    }
    for (std::size_t i = 0; i < b.points.size(); ++i) {
      for (std::size_t j = i + 1; j < b.points.size(); ++j) {
        const Vec n{b.points[i][1] - b.points[j][1], b.points[j][0] - b.points[i][0]};
        if (norm(n) == 0.0) continue;
        const Vec m{-n[0], -n[1]};
        if (support_function(a, n) < -support_function(b, m) - kGeomTol * norm(n)) return false;
        if (support_function(b, n) < -support_function(a, m) - kGeomTol * norm(n)) return false;
      }
    }
    return true;
  }
  if (b.points.size() != 2) throw RegimeMismatch("point sets outside 2-D must be segments");
  // Liang-Barsky against the facet constraints.
  const Vec& p = b.points[0];
  Vec dir(p.size());
  for (std::size_t c = 0; c < p.size(); ++c) dir[c] = b.points[1][c] - p[c];
  double lo = 0.0;
  double hi = 1.0;
  for (const auto& c : a.constraints()) {
    const double den = dot(c.normal, dir);
    const double num = c.offset + kGeomTol - dot(c.normal, p);
    if (den == 0.0) {
      if (num < 0.0) return false;
    } else if (den > 0.0) {
      hi = std::min(hi, num / den);
    } else {
      lo = std::max(lo, num / den);
    }
    if (lo > hi) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Transformations

Polytope scale(const Polytope& p, double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw NonPositiveScale("scale factor must be positive");
  if (p.is_box()) {
    Vec lo = p.box().lo();
    Vec hi = p.box().hi();
    for (auto& x : lo) x *= r;
    for (auto& x : hi) x *= r;
    return Box(std::move(lo), std::move(hi));
  }
  auto v = p.polygon().vertices();
  for (auto& q : v) {
    q.x *= r;
    q.y *= r;
  }
  return detail::make_polygon_unchecked(std::move(v));
}

Polytope translate(const Polytope& p, const Vec& h) {
  require_dim(p.dim(), h.size(), "translate");
  if (p.is_box()) {
    Vec lo = p.box().lo();
    Vec hi = p.box().hi();
    for (std::size_t c = 0; c < h.size(); ++c) {
      lo[c] += h[c];
      hi[c] += h[c];
    }
    return Box(std::move(lo), std::move(hi));
  }
  auto v = p.polygon().vertices();
  for (auto& q : v) {
    q.x += h[0];
    q.y += h[1];
  }
  return detail::make_polygon_unchecked(std::move(v));
}

PointSet translate(const PointSet& p, const Vec& h) {
  PointSet out = p;
  for (auto& x : out.points) {
    require_dim(x.size(), h.size(), "translate");
    for (std::size_t c = 0; c < h.size(); ++c) x[c] += h[c];
  }
  return out;
}

std::vector<Facet> facets(const Polytope& p) {
  std::vector<Facet> out;
  if (p.is_box()) {
    const auto& b = p.box();
    const std::size_t dim = b.dim();
    if (dim > 20) throw InvalidArgument("box facet enumeration beyond 20 dimensions");
    for (std::size_t c = 0; c < dim; ++c) {
      for (const bool upper : {true, false}) {
        Facet f;
        f.outward_normal.assign(dim, 0.0);
        f.outward_normal[c] = upper ? 1.0 : -1.0;
        const std::size_t count = std::size_t{1} << (dim - 1);
        for (std::size_t mask = 0; mask < count; ++mask) {
          Vec v(dim);
          std::size_t bit = 0;
          for (std::size_t k = 0; k < dim; ++k) {
            if (k == c) {
              v[k] = upper ? b.hi()[k] : b.lo()[k];
            } else {
              v[k] = (mask >> bit++) & 1U ? b.hi()[k] : b.lo()[k];
            }
          }
          f.body.points.push_back(std::move(v));
        }
        out.push_back(std::move(f));
      }
    }
    return out;
  }
  const auto& v = p.polygon().vertices();
  const auto cons = p.constraints();
  for (std::size_t i = 0, n = v.size(); i < n; ++i) {
    const auto& a = v[i];
    const auto& b = v[(i + 1) % n];
    out.push_back({PointSet::segment({a.x, a.y}, {b.x, b.y}), cons[i].normal});
  }
  return out;
}

std::optional<std::pair<Point2, Point2>> chord(const Polytope& p, const Hyperplane& h) {
  if (p.dim() != 2) throw RegimeMismatch("chord is defined for 2-D polytopes only");
  const auto poly = as_polygon(p);
  const auto& v = poly.vertices();
  const auto& u = h.normal();
  std::vector<Point2> pts;
  for (std::size_t i = 0, n = v.size(); i < n; ++i) {
    const auto& a = v[i];
    const auto& b = v[(i + 1) % n];
    const double sa = u[0] * a.x + u[1] * a.y - h.offset();
    const double sb = u[0] * b.x + u[1] * b.y - h.offset();
    if (sa == 0.0) {
      pts.push_back(a);
    } else if ((sa < 0.0) != (sb < 0.0) && sb != 0.0) {
      const double t = sa / (sa - sb);
      pts.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
    }
  }
  if (pts.size() < 2) return std::nullopt;
  // Farthest pair, in case a vertex was recorded twice.
  std::pair<Point2, Point2> best{pts[0], pts[1]};
  double dist = -1.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const double d = std::hypot(pts[i].x - pts[j].x, pts[i].y - pts[j].y);
      if (d > dist) {
        dist = d;
        best = {pts[i], pts[j]};
      }
    }
  }
  return best;
}

bool approx_equal(const Polytope& a, const Polytope& b, double tol) {
  if (a.dim() != b.dim()) return false;
  const auto within = [tol](const Polytope& p, const Polytope& q) {
    for (const auto& c : p.constraints()) {
      if (support_function(q, c.normal) > c.offset + tol) return false;
    }
    return true;
  };
  return within(a, b) && within(b, a);
}

}  // namespace stit

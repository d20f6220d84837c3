// SPDX-License-Identifier: Apache-2.0
//
// Convex geometry kernel. Two regimes are supported: convex polygons in the
// plane, and axis-aligned boxes in any dimension. A 2-D box may be cut by an
// oblique line, in which case the pieces become polygons.
#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

namespace stit {

class Polygon;
struct Point2;
namespace detail {
/// For kernel code that already guarantees a convex counterclockwise ring.
Polygon make_polygon_unchecked(std::vector<Point2> vertices);
}  // namespace detail

inline constexpr double kGeomTol = 1e-9;
inline constexpr double kUnitTol = 1e-12;
inline constexpr double kAreaTol = 1e-12;

using Vec = std::vector<double>;

double dot(const Vec& a, const Vec& b);
double norm(const Vec& a);

/// Unit vector in R^dim.
class Direction {
 public:
  /// Throws InvalidArgument unless |components| = 1 within kUnitTol.
  explicit Direction(Vec components);

  static Direction normalized(Vec v);
  static Direction axis(std::size_t dim, std::size_t c, double sign = 1.0);
  static Direction from_angle(double phi);

  std::size_t dim() const { return c_.size(); }
  const Vec& components() const { return c_; }
  double operator[](std::size_t i) const { return c_[i]; }
  Direction operator-() const;

  /// First non-zero component is positive.
  bool lex_positive() const;
  /// Index c when the direction is +-e_c.
  std::optional<std::size_t> axis_index() const;

  friend bool operator==(const Direction& a, const Direction& b) { return a.c_ == b.c_; }

 private:
  struct Unchecked {};
  Direction(Vec c, Unchecked) : c_(std::move(c)) {}
  Vec c_;
};

/// H(u, d) = {x : <x,u> = d}, stored with a lexicographically positive normal.
class Hyperplane {
 public:
  Hyperplane(Direction u, double d);

  const Direction& normal() const { return u_; }
  double offset() const { return d_; }
  std::size_t dim() const { return u_.dim(); }

  double signed_distance(const Vec& x) const { return dot(u_.components(), x) - d_; }
  /// Normal pointing away from the origin side; the origin side is
  /// {x : <n,x> <= |d|}. For d = 0 the origin side is {<u,x> <= 0}.
  Vec plus_normal() const;

  friend bool operator==(const Hyperplane& a, const Hyperplane& b) {
    return a.u_ == b.u_ && a.d_ == b.d_;
  }

 private:
  Direction u_;
  double d_;
};

/// Closed half-space {x : <normal,x> <= offset}; `normal` need not be unit.
struct Constraint {
  Vec normal;
  double offset;
};

enum class Side { Plus, Minus };

/// H+ is the closed side containing the origin in its interior, H- the other.
struct HalfSpace {
  Hyperplane plane;
  Side side;

  Constraint constraint() const;
  bool contains(const Vec& x, double tol = kGeomTol) const;
};

/// Which side of `h` the point lies on; nullopt when within tol of h.
std::optional<Side> side_of(const Hyperplane& h, const Vec& x, double tol = kGeomTol);

struct Point2 {
  double x;
  double y;
};

/// Convex polygon, vertices counterclockwise.
class Polygon {
 public:
  /// Validates convexity and positive area (InvalidArgument otherwise).
  /// Clockwise input is reversed.
  explicit Polygon(std::vector<Point2> vertices);

  /// Regular n-gon with circumradius `radius` centred at (cx, cy).
  static Polygon regular(std::size_t n, double radius, double cx = 0.0, double cy = 0.0);

  const std::vector<Point2>& vertices() const { return v_; }
  std::size_t size() const { return v_.size(); }
  double area() const;
  double perimeter() const;
  Point2 centroid() const;

 private:
  struct Unchecked {};
  Polygon(std::vector<Point2> v, Unchecked) : v_(std::move(v)) {}
  friend Polygon detail::make_polygon_unchecked(std::vector<Point2> vertices);
  std::vector<Point2> v_;
};

/// Axis-aligned box prod_c [lo_c, hi_c].
class Box {
 public:
  /// Requires lo_c < hi_c for every axis.
  Box(Vec lo, Vec hi);
  static Box cube(std::size_t dim, double half_side);

  std::size_t dim() const { return lo_.size(); }
  const Vec& lo() const { return lo_; }
  const Vec& hi() const { return hi_; }
  double length(std::size_t c) const { return hi_[c] - lo_[c]; }
  double volume() const;
  /// (dim-1)-volume of the boundary; 2 for dim = 1 (two endpoints).
  double surface() const;

 private:
  Vec lo_;
  Vec hi_;
};

class Polytope {
 public:
  Polytope(Polygon p) : shape_(std::move(p)) {}  // NOLINT
  Polytope(Box b) : shape_(std::move(b)) {}      // NOLINT

  bool is_box() const { return std::holds_alternative<Box>(shape_); }
  bool is_polygon() const { return std::holds_alternative<Polygon>(shape_); }
  const Box& box() const { return std::get<Box>(shape_); }
  const Polygon& polygon() const { return std::get<Polygon>(shape_); }
  const std::variant<Polygon, Box>& shape() const { return shape_; }

  std::size_t dim() const;
  /// Area in 2-D, volume for boxes.
  double volume() const;
  /// Perimeter in 2-D, boundary (dim-1)-volume for boxes.
  double surface() const;
  Vec centroid() const;
  std::vector<Vec> vertices() const;
  /// Facet half-spaces with unit outward normals.
  std::vector<Constraint> constraints() const;

 private:
  std::variant<Polygon, Box> shape_;
};

/// Finite point set, used for facets and probe segments. Its convex hull is
/// the body it stands for.
struct PointSet {
  std::vector<Vec> points;

  static PointSet segment(Vec a, Vec b) { return PointSet{{std::move(a), std::move(b)}}; }
};

/// Facet of a polytope: its vertex set and unit outward normal.
struct Facet {
  PointSet body;
  Vec outward_normal;
};

Polygon as_polygon(const Polytope& p);

double support_function(const Polytope& p, const Direction& u);
double support_function(const PointSet& p, const Direction& u);
double support_function(const Polytope& p, const Vec& u);
double support_function(const PointSet& p, const Vec& u);

template <class Body>
double width(const Body& p, const Direction& u) {
  return support_function(p, u) + support_function(p, -u);
}

double diameter(const Polytope& p);

/// P intersected with hs; nullopt when the intersection has empty interior.
/// Throws DegenerateCut if the plane passes within kGeomTol of a vertex of P,
/// and RegimeMismatch for an oblique cut of a box of dimension other than 2.
std::optional<Polytope> clip(const Polytope& p, const HalfSpace& hs);

/// Tolerant clipping: vertices within kGeomTol of the boundary count as
/// inside. Used for restriction and intersection, where coincident facets
/// are expected.
std::optional<Polytope> clip_tolerant(const Polytope& p, const Constraint& c);
std::optional<Polytope> intersection(const Polytope& a, const Polytope& b);

bool hits(const Hyperplane& h, const Polytope& p);
bool hits(const Hyperplane& h, const PointSet& p);

/// Interval of d for which H(u, d) hits the body: [-h(-u), h(u)].
template <class Body>
std::pair<double, double> projection(const Body& p, const Direction& u) {
  return {-support_function(p, -u), support_function(p, u)};
}

/// True when A and B lie strictly on opposite sides of h.
template <class A, class B>
bool separates(const Hyperplane& h, const A& a, const B& b) {
  const auto [alo, ahi] = projection(a, h.normal());
  const auto [blo, bhi] = projection(b, h.normal());
  const double d = h.offset();
  return (ahi < d && blo > d) || (bhi < d && alo > d);
}

/// Q inside P. Non-strict: within kGeomTol of every facet constraint.
/// Strict: every point of Q more than kGeomTol inside every facet.
bool contains(const Polytope& p, const Polytope& q, bool strict);
bool contains(const Polytope& p, const PointSet& q, bool strict);
bool contains_point(const Polytope& p, const Vec& x, double tol = kGeomTol);
/// Smallest slack of x over the facet constraints (negative outside).
double inner_margin(const Polytope& p, const Vec& x);

/// Closed bodies share at least one point (separating-axis test).
bool intersects(const Polytope& a, const Polytope& b);
/// Same for the convex hull of a point set (at most two points outside 2-D).
bool intersects(const Polytope& a, const PointSet& b);

Polytope scale(const Polytope& p, double r);
Polytope translate(const Polytope& p, const Vec& h);
PointSet translate(const PointSet& p, const Vec& h);

/// Facets in a fixed order: boxes give (+e_0, -e_0, +e_1, -e_1, ...),
/// polygons give edge i from vertex i to vertex i+1.
std::vector<Facet> facets(const Polytope& p);

/// Part of h inside a 2-D polytope, as a segment; nullopt if it misses.
std::optional<std::pair<Point2, Point2>> chord(const Polytope& p, const Hyperplane& h);

bool approx_equal(const Polytope& a, const Polytope& b, double tol = kGeomTol);

}  // namespace stit

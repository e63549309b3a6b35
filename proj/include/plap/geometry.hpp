#pragma once

#include <Eigen/Dense>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "plap/errors.hpp"

namespace plap {

using Vec2 = Eigen::Vector2d;

// Convex polygon with counter-clockwise vertices.  Construction validates:
// consecutive duplicates (within 1e-12 of the diameter) are merged, collinear
// vertices are merged, clockwise input is reversed, and anything not strictly
// convex with at least 3 surviving vertices is rejected.
class ConvexPolygon {
 public:
  explicit ConvexPolygon(std::vector<Vec2> vertices);

  int size() const { return static_cast<int>(v_.size()); }
  const Vec2& operator[](int i) const { return v_[static_cast<std::size_t>(i)]; }
  const std::vector<Vec2>& vertices() const { return v_; }

 private:
  std::vector<Vec2> v_;
};

double area(const ConvexPolygon& poly);
Vec2 centroid(const ConvexPolygon& poly);
double perimeter(const ConvexPolygon& poly);

// Largest vertex distance; ties resolve to the lexicographically smallest
// index pair so downstream rotations are reproducible.
std::pair<int, int> diameter_pair(const ConvexPolygon& poly);
double diameter(const ConvexPolygon& poly);

// Smallest slab width containing the polygon (rotating-calipers style).
double width(const ConvexPolygon& poly);

struct ChebyshevBall {
  Vec2 center;
  double radius;
};

// Largest inscribed disc, via an exact 3-variable linear program over the
// edge half-planes.
ChebyshevBall chebyshev_ball(const ConvexPolygon& poly);
double inradius(const ConvexPolygon& poly);

// Area of the inner parallel body at distance t (vertices eroded inward).
double inner_parallel_area(const ConvexPolygon& poly, double t);

// Inner parallel body as a polygon; nullopt when it is empty or degenerate.
std::optional<ConvexPolygon> erode(const ConvexPolygon& poly, double t);

// Longest cross-section perpendicular to the diameter segment.
double max_section_length(const ConvexPolygon& poly);

// Signed distance to the boundary, positive inside.
double signed_distance(const ConvexPolygon& poly, const Vec2& point);
bool contains(const ConvexPolygon& poly, const Vec2& point);

ConvexPolygon translated(const ConvexPolygon& poly, const Vec2& shift);
ConvexPolygon scaled(const ConvexPolygon& poly, double factor);  // about origin
ConvexPolygon normalized_to_unit_area(const ConvexPolygon& poly);  // about centroid

ConvexPolygon rectangle_polygon(double w, double h);  // corners (0,0), (w,h)
ConvexPolygon regular_polygon(int n, double circumradius = 1.0,
                              const Vec2& center = Vec2::Zero());

// Counter-clockwise hull (Andrew monotone chain); collinear points dropped.
std::vector<Vec2> convex_hull(std::vector<Vec2> points);

// Hull of n uniform samples in the unit square.  Throws if the sample
// degenerates below a triangle (practically impossible for n >= 4).
ConvexPolygon random_convex_polygon(std::mt19937_64& rng, int n_points);

}  // namespace plap

#pragma once

#include <array>
#include <vector>

#include "plap/domain.hpp"

namespace plap {

// Piecewise-linear triangle mesh.  Boundary vertices are derived from edge
// topology (edges used by exactly one triangle), never from coordinates.
struct Mesh {
  std::vector<Vec2> vertices;
  std::vector<std::array<int, 3>> triangles;  // counter-clockwise
  std::vector<char> on_boundary;
  double h = 0.0;  // longest edge
  double min_angle_deg = 0.0;

  int interior_count() const;
};

// Delaunay triangulation by incremental insertion with a walking point
// locator.  Points should be in reasonably general position; exact duplicates
// are rejected upstream by the mesh builders.
std::vector<std::array<int, 3>> delaunay(const std::vector<Vec2>& points);

// Structured grid on (0,w) x (0,h); `across` counts segments along the longer
// side, so scaled rectangles get geometrically similar meshes.
Mesh mesh_rectangle(double w, double h, int across);

// Hex-lattice interior anchored at the centroid plus uniform boundary
// samples.  Interior sites closer than 0.55*target_h to the boundary are
// dropped; a tiny deterministic jitter breaks cocircular grid degeneracies.
Mesh mesh_polygon(const ConvexPolygon& poly, double target_h);

// Square with lattice holes: 32-gon hole boundaries, geometrically graded
// rings (element size r/4 at the hole, growing to far_h), hex background.
Mesh mesh_perforated(const PerforatedSquare& dom, double far_h);

// Uniform 4-way refinement.  Original vertices keep their indices; when
// `parents` is given, it receives one endpoint pair per new midpoint vertex
// (for prolongation of nodal fields).
Mesh refine(const Mesh& m, std::vector<std::array<int, 2>>* parents = nullptr);

}  // namespace plap

#pragma once

#include <string>
#include <variant>
#include <vector>

#include "plap/geometry.hpp"

namespace plap {

struct PolygonDomain {
  ConvexPolygon poly;
};

struct RectangleDomain {
  double w = 1.0;
  double h = 1.0;
};

// Radially symmetric domains carry their own dimension; they are handled by
// the one-dimensional radial solver, not the planar mesh path.
struct BallDomain {
  int dim = 2;
  double radius = 1.0;
};

struct AnnulusDomain {
  int dim = 2;
  double inner = 0.5;
  double outer = 1.0;
};

// Unit cell lattice of spacing 2*eps centered in the square, one disc hole of
// radius r per cell whose full cell fits strictly inside.
struct PerforatedSquare {
  double side = 1.0;
  double eps = 0.25;
  double r = 0.01;
};

using Domain = std::variant<PolygonDomain, RectangleDomain, BallDomain,
                            AnnulusDomain, PerforatedSquare>;

std::string domain_name(const Domain& d);

RectangleDomain make_rectangle(double w, double h);
BallDomain make_ball(int dim, double radius);
AnnulusDomain make_annulus(int dim, double inner, double outer);
PerforatedSquare make_perforated_square(double side, double eps, double r);

// Hole centers in deterministic row-major order (y, then x).
std::vector<Vec2> perforation_centers(const PerforatedSquare& d);

// Largest disc avoiding both the outer boundary and every hole.
double perforated_inradius(const PerforatedSquare& d);

}  // namespace plap

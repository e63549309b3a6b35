#pragma once

#include <variant>

#include "plap/domain.hpp"
#include "plap/solver.hpp"

namespace plap {

// How a Cheeger value was obtained.  BoundsOnly carries a two-sided
// bracket for domains where the convex characterization does not apply
// (the lower leg is exact, the upper leg is a discretized estimate).
struct ConvexBisection {};
struct BallFormula {};
struct BoundsOnly {
  double lower = 0.0;
  double upper = 0.0;
};
using CheegerMethod = std::variant<ConvexBisection, BallFormula, BoundsOnly>;

struct CheegerResult {
  double h = 0.0;
  double cheeger_radius = 0.0;  // redundant 1/h, kept consistent on build
  CheegerMethod method;
};

// Cheeger constant of a convex polygon: h = 1/r* where r* is the unique
// root of inner_parallel_area(poly, r) = pi r^2, found by bisection on
// (0, inradius).  g is strictly decreasing but only piecewise smooth (its
// derivative jumps where erosion vertices vanish), hence no Newton.
// tol bounds r*, so the h error is about tol / r*^2.
CheegerResult cheeger_convex(const ConvexPolygon& poly, double tol = 1e-10);

// Dispatch over domain kinds: polygons and rectangles use the convex
// characterization, balls use h = d/r, perforated squares get a two-sided
// bracket (outer square from below by set inclusion, p lambda_p^{1/p} at
// p = 1.1 from above; the solver config controls that FEM leg).  Annuli are
// rejected.
CheegerResult cheeger_extended(const Domain& dom, double tol = 1e-10,
                               const SolverConfig& cfg = {});

}  // namespace plap

#include "plap/cheeger.hpp"

#include <cmath>
#include <numbers>

#include "plap/errors.hpp"
#include "plap/exact.hpp"

namespace plap {

namespace {

CheegerResult from_h(double h, CheegerMethod method) {
  CheegerResult res;
  res.h = h;
  res.cheeger_radius = 1.0 / h;
  res.method = std::move(method);
  return res;
}

}  // namespace

CheegerResult cheeger_convex(const ConvexPolygon& poly, double tol) {
  if (!(tol > 0.0)) throw config_error("cheeger: tolerance must be positive");
  const double rho = inradius(poly);

  // g(r) = inner_parallel_area(r) - pi r^2 falls strictly from area(poly)
  // to -pi rho^2, so the bracket never needs widening.
  auto g = [&poly](double r) {
    return inner_parallel_area(poly, r) - std::numbers::pi * r * r;
  };
  double lo = 0.0, hi = rho;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) > 0.0 ? lo : hi) = mid;
  }
  const double r = 0.5 * (lo + hi);
  return from_h(1.0 / r, ConvexBisection{});
}

CheegerResult cheeger_extended(const Domain& dom, double tol,
                               const SolverConfig& cfg) {
  if (const auto* poly = std::get_if<PolygonDomain>(&dom))
    return cheeger_convex(poly->poly, tol);
  if (const auto* rect = std::get_if<RectangleDomain>(&dom))
    return cheeger_convex(rectangle_polygon(rect->w, rect->h), tol);
  if (const auto* ball = std::get_if<BallDomain>(&dom))
    return from_h(ball_cheeger(ball->dim, ball->radius), BallFormula{});
  if (const auto* perf = std::get_if<PerforatedSquare>(&dom)) {
    // holes only shrink the domain, so the outer square bounds h from below;
    // from above, p lambda_p^{1/p} decreases to h as p -> 1, evaluated at
    // p = 1.1 as a practical safety margin
    const double lower =
        cheeger_convex(rectangle_polygon(perf->side, perf->side), tol).h;
    const double p = 1.1;
    const EigenEstimate est = eigen_2d(dom, p, cfg);
    const double upper = p * std::pow(est.extrapolated, 1.0 / p);
    return from_h(lower, BoundsOnly{lower, upper});
  }
  throw config_error("cheeger: unsupported domain kind " + domain_name(dom));
}

}  // namespace plap

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <variant>

#include "plap/cheeger.hpp"
#include "plap/errors.hpp"
#include "plap/exact.hpp"
#include "plap/geometry.hpp"
#include "plap/solver.hpp"

using namespace plap;

namespace {

constexpr double kPi = std::numbers::pi;

// Unit square: (1-2r)^2 = pi r^2 linearizes to r* = 1/(2+sqrt(pi)).
constexpr double kSquareH = 2.0 + 1.7724538509055160273;

// 1x2 rectangle: (1-2r)(2-2r) = pi r^2 is quadratic in r; the root
// below the inradius is r* = (6 - sqrt(4+8pi)) / (2(4-pi)).
double rect12_radius() {
  return (6.0 - std::sqrt(4.0 + 8.0 * kPi)) / (2.0 * (4.0 - kPi));
}

SolverConfig coarse_cfg(int levels, int resolution) {
  SolverConfig cfg;
  cfg.levels = levels;
  cfg.resolution = resolution;
  return cfg;
}

}  // namespace

TEST_CASE("unit square against the quadratic-root value") {
  const auto res = cheeger_convex(rectangle_polygon(1.0, 1.0));
  // default tol 1e-10 on r gives roughly tol/r*^2 ~ 1.5e-9 on h
  CHECK(res.h == doctest::Approx(kSquareH).epsilon(1e-8));
  CHECK(std::holds_alternative<ConvexBisection>(res.method));
}

TEST_CASE("1x2 rectangle against the quadratic-root value") {
  const auto res = cheeger_convex(rectangle_polygon(1.0, 2.0));
  CHECK(res.cheeger_radius == doctest::Approx(rect12_radius()).epsilon(1e-8));
}

TEST_CASE("fine regular polygon sits in the disc sandwich") {
  // 256-gon with circumradius 1: contained in the unit disc (h >= 2) and
  // containing the disc of its inradius (h <= 2/cos(pi/256))
  const auto res = cheeger_convex(regular_polygon(256, 1.0));
  CHECK(res.h >= 2.0 - 1e-9);
  CHECK(res.h <= 2.0 / std::cos(kPi / 256.0) + 1e-9);
}

TEST_CASE("result invariants: radius reciprocal and below inradius") {
  std::mt19937_64 rng(411);
  for (int trial = 0; trial < 20; ++trial) {
    const ConvexPolygon poly = random_convex_polygon(rng, 4 + trial % 9);
    const auto res = cheeger_convex(poly);
    CHECK(res.h * res.cheeger_radius == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(res.cheeger_radius < inradius(poly));
    // r* < rho gives h > 1/rho; the whole domain as competitor gives
    // h <= perimeter/area
    CHECK(res.h >= 1.0 / inradius(poly));
    CHECK(res.h <= perimeter(poly) / area(poly));
  }
}

TEST_CASE("scaling covariance h(t Omega) = h(Omega)/t") {
  std::mt19937_64 rng(7);
  const ConvexPolygon poly = random_convex_polygon(rng, 7);
  const auto base = cheeger_convex(poly, 1e-12);
  for (double t : {0.5, 3.0}) {
    const auto sc = cheeger_convex(scaled(poly, t), 1e-12);
    CHECK(sc.h == doctest::Approx(base.h / t).epsilon(1e-7));
  }
}

TEST_CASE("set inclusion only lowers the constant") {
  const auto outer = cheeger_convex(rectangle_polygon(1.0, 2.0));
  const auto inner = cheeger_convex(rectangle_polygon(1.0, 1.0));
  CHECK(outer.h < inner.h);
  // square inside its circumscribed fine polygon
  const auto circum =
      cheeger_convex(regular_polygon(256, std::sqrt(0.5), Vec2(0.5, 0.5)));
  CHECK(circum.h < inner.h + 1e-9);
}

TEST_CASE("tolerance is honored on the radius") {
  const ConvexPolygon sq = rectangle_polygon(1.0, 1.0);
  const double exact_r = 1.0 / kSquareH;
  for (double tol : {1e-4, 1e-8}) {
    const auto res = cheeger_convex(sq, tol);
    CHECK(std::abs(res.cheeger_radius - exact_r) <= tol);
  }
  CHECK_THROWS_AS(cheeger_convex(sq, 0.0), config_error);
}

TEST_CASE("principal frequency dominates h^2/4 on random polygons") {
  std::mt19937_64 rng(2026);
  const SolverConfig cfg = coarse_cfg(2, 14);
  for (int trial = 0; trial < 10; ++trial) {
    const ConvexPolygon poly = random_convex_polygon(rng, 5 + trial);
    const double h = cheeger_convex(poly).h;
    const auto est = eigen_2d(Domain(PolygonDomain{poly}), 2.0, cfg);
    REQUIRE(est.converged);
    // discrete values approach the continuum one from below, and the
    // continuum slack in lambda >= h^2/4 is large on fat polygons, so a
    // coarse mesh cannot flip the sign
    CHECK(est.extrapolated >= 0.25 * h * h);
  }
}

TEST_CASE("scale-to-Cheeger ratio stays below pi_p/2 on convex domains") {
  std::mt19937_64 rng(99);
  const SolverConfig cfg = coarse_cfg(2, 14);
  for (int trial = 0; trial < 3; ++trial) {
    const ConvexPolygon poly = random_convex_polygon(rng, 6 + 2 * trial);
    const double h = cheeger_convex(poly).h;
    for (double p : {1.5, 2.0, 3.0}) {
      const auto est = eigen_2d(Domain(PolygonDomain{poly}), p, cfg);
      REQUIRE(est.converged);
      const double scale = std::pow(est.extrapolated, 1.0 / p);
      CHECK(scale / h < 0.5 * pi_p(p));
    }
  }
}

TEST_CASE("extended dispatch: balls use d/r") {
  const auto res = cheeger_extended(Domain(make_ball(2, 0.5)));
  CHECK(res.h == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(std::holds_alternative<BallFormula>(res.method));
  const auto res7 = cheeger_extended(Domain(make_ball(7, 2.0)));
  CHECK(res7.h == doctest::Approx(3.5).epsilon(1e-15));
}

TEST_CASE("extended dispatch: rectangles reduce to the convex solver") {
  const auto res = cheeger_extended(Domain(make_rectangle(1.0, 1.0)));
  CHECK(res.h == doctest::Approx(kSquareH).epsilon(1e-8));
  CHECK(std::holds_alternative<ConvexBisection>(res.method));
}

TEST_CASE("extended dispatch: perforated squares produce a bracket") {
  const Domain dom(make_perforated_square(1.0, 0.25, 0.04));
  const auto res = cheeger_extended(dom, 1e-10, coarse_cfg(2, 16));
  REQUIRE(std::holds_alternative<BoundsOnly>(res.method));
  const auto& br = std::get<BoundsOnly>(res.method);
  CHECK(br.lower == doctest::Approx(kSquareH).epsilon(1e-8));
  CHECK(res.h == br.lower);
  CHECK(br.lower <= br.upper);
  CHECK(br.upper < 3.0 * br.lower);
}

TEST_CASE("extended dispatch: annuli are rejected") {
  CHECK_THROWS_AS(cheeger_extended(Domain(make_annulus(2, 0.5, 1.0))),
                  config_error);
}

#include "plap/domain.hpp"

#include <algorithm>
#include <cmath>

namespace plap {

std::string domain_name(const Domain& d) {
  struct Namer {
    std::string operator()(const PolygonDomain& p) const {
      return "polygon[" + std::to_string(p.poly.size()) + "]";
    }
    std::string operator()(const RectangleDomain& r) const {
      return "rectangle " + std::to_string(r.w) + "x" + std::to_string(r.h);
    }
    std::string operator()(const BallDomain& b) const {
      return "ball(d=" + std::to_string(b.dim) + ", r=" + std::to_string(b.radius) +
             ")";
    }
    std::string operator()(const AnnulusDomain& a) const {
      return "annulus(d=" + std::to_string(a.dim) + ", " + std::to_string(a.inner) +
             ".." + std::to_string(a.outer) + ")";
    }
    std::string operator()(const PerforatedSquare& p) const {
      return "perforated(side=" + std::to_string(p.side) +
             ", eps=" + std::to_string(p.eps) + ", r=" + std::to_string(p.r) + ")";
    }
  };
  return std::visit(Namer{}, d);
}

RectangleDomain make_rectangle(double w, double h) {
  if (!(w > 0.0) || !(h > 0.0))
    throw config_error("rectangle: sides must be positive");
  return {w, h};
}

BallDomain make_ball(int dim, double radius) {
  if (dim < 1) throw config_error("ball: dimension must be >= 1");
  if (!(radius > 0.0)) throw config_error("ball: radius must be positive");
  return {dim, radius};
}

AnnulusDomain make_annulus(int dim, double inner, double outer) {
  if (dim < 1) throw config_error("annulus: dimension must be >= 1");
  if (!(inner > 0.0) || !(outer > inner))
    throw config_error("annulus: need 0 < inner < outer");
  return {dim, inner, outer};
}

PerforatedSquare make_perforated_square(double side, double eps, double r) {
  if (!(side > 0.0)) throw config_error("perforated: side must be positive");
  if (!(eps > 0.0) || !(eps < 0.5 * side))
    throw config_error("perforated: need 0 < eps < side/2");
  if (!(r > 0.0) || !(r <= 0.5 * eps))
    throw config_error("perforated: need 0 < r <= eps/2");
  PerforatedSquare d{side, eps, r};
  if (perforation_centers(d).empty())
    throw config_error("perforated: no cell of half-width eps fits inside");
  return d;
}

std::vector<Vec2> perforation_centers(const PerforatedSquare& d) {
  const double s = d.side, e = d.eps;
  const double margin = 1e-9 * s;
  const int K = static_cast<int>(std::ceil(s / (2.0 * e))) + 1;
  std::vector<Vec2> out;
  for (int j = -K; j <= K; ++j)
    for (int i = -K; i <= K; ++i) {
      const Vec2 c(0.5 * s + 2.0 * e * i, 0.5 * s + 2.0 * e * j);
      if (c.x() - e >= margin && c.x() + e <= s - margin && c.y() - e >= margin &&
          c.y() + e <= s - margin)
        out.push_back(c);
    }
  return out;  // loop order is already row-major in (y, x)
}

namespace {

double perforated_clearance(const PerforatedSquare& d, const std::vector<Vec2>& cs,
                            const Vec2& q) {
  double f = std::min(std::min(q.x(), d.side - q.x()),
                      std::min(q.y(), d.side - q.y()));
  for (const auto& c : cs) f = std::min(f, (q - c).norm() - d.r);
  return f;
}

}  // namespace

double perforated_inradius(const PerforatedSquare& d) {
  const auto cs = perforation_centers(d);
  // Coarse scan, then nested local grids around the best point.  The basin of
  // the optimum has width on the order of eps, far above the coarse step.
  const int n0 = 1024;
  Vec2 best(0.5 * d.side, 0.5 * d.side);
  double fbest = -1.0;
  for (int j = 1; j < n0; ++j)
    for (int i = 1; i < n0; ++i) {
      const Vec2 q(d.side * i / n0, d.side * j / n0);
      const double f = perforated_clearance(d, cs, q);
      if (f > fbest) {
        fbest = f;
        best = q;
      }
    }
  double span = d.side / n0;
  for (int round = 0; round < 6; ++round) {
    const int m = 32;
    Vec2 center = best;
    for (int j = -m; j <= m; ++j)
      for (int i = -m; i <= m; ++i) {
        const Vec2 q = center + Vec2(span * i / m, span * j / m);
        const double f = perforated_clearance(d, cs, q);
        if (f > fbest) {
          fbest = f;
          best = q;
        }
      }
    span /= m / 2;
  }
  return fbest;
}

}  // namespace plap

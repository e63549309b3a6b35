#include "plap/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "plap/lp.hpp"

namespace plap {
namespace {

double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

double chain_signed_area(const std::vector<Vec2>& v) {
  double s = 0.0;
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = v[i];
    const Vec2& b = v[(i + 1) % n];
    s += cross2(a, b);
  }
  return 0.5 * s;
}

double bbox_scale(const std::vector<Vec2>& v) {
  Vec2 lo = v.front(), hi = v.front();
  for (const auto& p : v) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return (hi - lo).norm();
}

// Clips a convex chain against the half-plane {x : n.x >= off}.
std::vector<Vec2> clip_half_plane(const std::vector<Vec2>& cur, const Vec2& n,
                                  double off) {
  std::vector<Vec2> out;
  out.reserve(cur.size() + 1);
  const std::size_t m = cur.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Vec2& s = cur[i];
    const Vec2& e = cur[(i + 1) % m];
    const double ds = n.dot(s) - off;
    const double de = n.dot(e) - off;
    if (ds >= 0.0) out.push_back(s);
    if ((ds >= 0.0) != (de >= 0.0)) out.push_back(s + (e - s) * (ds / (ds - de)));
  }
  return out;
}

std::vector<Vec2> eroded_chain(const ConvexPolygon& poly, double t) {
  std::vector<Vec2> cur = poly.vertices();
  const int n = poly.size();
  for (int i = 0; i < n; ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % n];
    Vec2 nin(-(b - a).y(), (b - a).x());  // inward for CCW
    nin.normalize();
    cur = clip_half_plane(cur, nin, nin.dot(a) + t);
    if (cur.size() < 3) return {};
  }
  return cur;
}

}  // namespace

ConvexPolygon::ConvexPolygon(std::vector<Vec2> vertices) : v_(std::move(vertices)) {
  if (v_.size() < 3) throw config_error("polygon: need at least 3 vertices");
  const double scale = bbox_scale(v_);
  if (!(scale > 0.0)) throw config_error("polygon: all vertices coincide");
  const double tol_pt = 1e-12 * scale;
  const double tol_area = 1e-12 * scale * scale;

  std::vector<Vec2> w;
  w.reserve(v_.size());
  for (const auto& p : v_)
    if (w.empty() || (p - w.back()).norm() > tol_pt) w.push_back(p);
  while (w.size() > 1 && (w.front() - w.back()).norm() <= tol_pt) w.pop_back();
  if (w.size() < 3) throw config_error("polygon: fewer than 3 distinct vertices");

  if (chain_signed_area(w) < 0.0) std::reverse(w.begin(), w.end());

  // Merge collinear runs; restart after each removal because neighbours change.
  bool changed = true;
  while (changed && w.size() >= 3) {
    changed = false;
    const std::size_t n = w.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2& a = w[(i + n - 1) % n];
      const Vec2& b = w[i];
      const Vec2& c = w[(i + 1) % n];
      if (std::abs(cross2(b - a, c - b)) <= tol_area) {
        w.erase(w.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  if (w.size() < 3) throw config_error("polygon: degenerate (collinear vertices)");

  const std::size_t n = w.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = w[(i + n - 1) % n];
    const Vec2& b = w[i];
    const Vec2& c = w[(i + 1) % n];
    if (cross2(b - a, c - b) <= tol_area)
      throw config_error("polygon: not strictly convex");
  }
  v_ = std::move(w);
}

double area(const ConvexPolygon& poly) { return chain_signed_area(poly.vertices()); }

Vec2 centroid(const ConvexPolygon& poly) {
  const auto& v = poly.vertices();
  const std::size_t n = v.size();
  Vec2 c = Vec2::Zero();
  double a6 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& p = v[i];
    const Vec2& q = v[(i + 1) % n];
    const double w = cross2(p, q);
    c += w * (p + q);
    a6 += w;
  }
  return c / (3.0 * a6);
}

double perimeter(const ConvexPolygon& poly) {
  double s = 0.0;
  const int n = poly.size();
  for (int i = 0; i < n; ++i) s += (poly[(i + 1) % n] - poly[i]).norm();
  return s;
}

std::pair<int, int> diameter_pair(const ConvexPolygon& poly) {
  const int n = poly.size();
  int bi = 0, bj = 1;
  double best = (poly[1] - poly[0]).squaredNorm();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double d = (poly[j] - poly[i]).squaredNorm();
      if (d > best) {
        best = d;
        bi = i;
        bj = j;
      }
    }
  return {bi, bj};
}

double diameter(const ConvexPolygon& poly) {
  auto [i, j] = diameter_pair(poly);
  return (poly[j] - poly[i]).norm();
}

double width(const ConvexPolygon& poly) {
  const int n = poly.size();
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    Vec2 e = poly[(i + 1) % n] - poly[i];
    Vec2 nin(-e.y(), e.x());
    nin.normalize();
    double reach = 0.0;
    for (int k = 0; k < n; ++k)
      reach = std::max(reach, nin.dot(poly[k] - poly[i]));
    best = std::min(best, reach);
  }
  return best;
}

ChebyshevBall chebyshev_ball(const ConvexPolygon& poly) {
  const int n = poly.size();
  std::vector<Eigen::Vector4d> rows;
  rows.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const Vec2& a = poly[i];
    Vec2 e = poly[(i + 1) % n] - a;
    Vec2 nin(-e.y(), e.x());
    nin.normalize();
    // center stays at least r inside every edge: nin.c - r >= nin.a
    rows.push_back({-nin.x(), -nin.y(), 1.0, -nin.dot(a)});
  }
  Vec2 lo = poly[0], hi = poly[0];
  for (const auto& p : poly.vertices()) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  const double rmax = 0.5 * (hi - lo).norm();
  auto sol = lp_max_3(rows, {0.0, 0.0, 1.0}, {lo.x(), lo.y(), 0.0},
                      {hi.x(), hi.y(), rmax});
  if (!sol) throw solver_error("chebyshev_ball: infeasible linear program");
  return {Vec2((*sol)(0), (*sol)(1)), (*sol)(2)};
}

double inradius(const ConvexPolygon& poly) { return chebyshev_ball(poly).radius; }

double inner_parallel_area(const ConvexPolygon& poly, double t) {
  if (t <= 0.0) return area(poly);
  auto chain = eroded_chain(poly, t);
  if (chain.size() < 3) return 0.0;
  return std::max(0.0, chain_signed_area(chain));
}

std::optional<ConvexPolygon> erode(const ConvexPolygon& poly, double t) {
  if (t <= 0.0) return poly;
  auto chain = eroded_chain(poly, t);
  if (chain.size() < 3 || chain_signed_area(chain) <= 0.0) return std::nullopt;
  try {
    return ConvexPolygon(std::move(chain));
  } catch (const config_error&) {
    return std::nullopt;
  }
}

double max_section_length(const ConvexPolygon& poly) {
  const auto [i, j] = diameter_pair(poly);
  const Vec2 a = poly[i];
  Vec2 dir = poly[j] - a;
  const double D = dir.norm();
  dir /= D;
  Eigen::Matrix2d R;
  R << dir.y(), -dir.x(), dir.x(), dir.y();  // maps dir to (0, 1)

  const int n = poly.size();
  std::vector<Vec2> w(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) w[static_cast<std::size_t>(k)] = R * (poly[k] - a);

  const double tol = 1e-13 * D;
  std::vector<double> levels;
  for (const auto& p : w)
    if (p.y() > tol && p.y() < D - tol) levels.push_back(p.y());
  levels.push_back(0.5 * D);

  double best = 0.0;
  for (double t : levels) {
    double xmin = std::numeric_limits<double>::infinity();
    double xmax = -xmin;
    for (int k = 0; k < n; ++k) {
      const Vec2& p = w[static_cast<std::size_t>(k)];
      const Vec2& q = w[static_cast<std::size_t>((k + 1) % n)];
      const double dp = p.y() - t, dq = q.y() - t;
      if (dp * dq > 0.0) continue;
      if (std::abs(dq - dp) < tol) {  // edge runs along the level
        xmin = std::min({xmin, p.x(), q.x()});
        xmax = std::max({xmax, p.x(), q.x()});
        continue;
      }
      const double x = p.x() + (q.x() - p.x()) * (dp / (dp - dq));
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
    }
    if (xmax > xmin) best = std::max(best, xmax - xmin);
  }
  return best;
}

double signed_distance(const ConvexPolygon& poly, const Vec2& point) {
  const int n = poly.size();
  double d = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    Vec2 e = poly[(i + 1) % n] - poly[i];
    Vec2 nin(-e.y(), e.x());
    nin.normalize();
    d = std::min(d, nin.dot(point - poly[i]));
  }
  return d;
}

bool contains(const ConvexPolygon& poly, const Vec2& point) {
  return signed_distance(poly, point) >= 0.0;
}

ConvexPolygon translated(const ConvexPolygon& poly, const Vec2& shift) {
  std::vector<Vec2> v = poly.vertices();
  for (auto& p : v) p += shift;
  return ConvexPolygon(std::move(v));
}

ConvexPolygon scaled(const ConvexPolygon& poly, double factor) {
  if (!(factor > 0.0)) throw config_error("scaled: factor must be positive");
  std::vector<Vec2> v = poly.vertices();
  for (auto& p : v) p *= factor;
  return ConvexPolygon(std::move(v));
}

ConvexPolygon normalized_to_unit_area(const ConvexPolygon& poly) {
  const double s = 1.0 / std::sqrt(area(poly));
  const Vec2 c = centroid(poly);
  std::vector<Vec2> v = poly.vertices();
  for (auto& p : v) p = c + s * (p - c);
  return ConvexPolygon(std::move(v));
}

ConvexPolygon rectangle_polygon(double w, double h) {
  if (!(w > 0.0) || !(h > 0.0))
    throw config_error("rectangle_polygon: sides must be positive");
  return ConvexPolygon({{0.0, 0.0}, {w, 0.0}, {w, h}, {0.0, h}});
}

ConvexPolygon regular_polygon(int n, double circumradius, const Vec2& center) {
  if (n < 3) throw config_error("regular_polygon: need at least 3 vertices");
  if (!(circumradius > 0.0))
    throw config_error("regular_polygon: radius must be positive");
  std::vector<Vec2> v;
  v.reserve(static_cast<std::size_t>(n));
  const double pi = 3.141592653589793238462643383279502884;
  for (int k = 0; k < n; ++k) {
    const double th = 2.0 * pi * k / n;
    v.push_back(center + circumradius * Vec2(std::cos(th), std::sin(th)));
  }
  return ConvexPolygon(std::move(v));
}

std::vector<Vec2> convex_hull(std::vector<Vec2> points) {
  std::sort(points.begin(), points.end(), [](const Vec2& a, const Vec2& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  points.erase(std::unique(points.begin(), points.end(),
                           [](const Vec2& a, const Vec2& b) {
                             return a.x() == b.x() && a.y() == b.y();
                           }),
               points.end());
  const std::size_t n = points.size();
  if (n < 3) return points;
  const double tol = 1e-12 * bbox_scale(points) * bbox_scale(points);
  std::vector<Vec2> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {  // lower
    while (k >= 2 &&
           cross2(hull[k - 1] - hull[k - 2], points[i] - hull[k - 2]) <= tol)
      --k;
    hull[k++] = points[i];
  }
  for (std::size_t i = n - 1, t = k + 1; i-- > 0;) {  // upper
    while (k >= t &&
           cross2(hull[k - 1] - hull[k - 2], points[i] - hull[k - 2]) <= tol)
      --k;
    hull[k++] = points[i];
  }
  hull.resize(k - 1);
  return hull;
}

ConvexPolygon random_convex_polygon(std::mt19937_64& rng, int n_points) {
  if (n_points < 3) throw config_error("random_convex_polygon: need >= 3 points");
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<Vec2> pts;
    pts.reserve(static_cast<std::size_t>(n_points));
    for (int i = 0; i < n_points; ++i) {
      const double x = uni(rng);
      const double y = uni(rng);
      pts.push_back({x, y});
    }
    auto hull = convex_hull(std::move(pts));
    if (hull.size() < 3) continue;
    try {
      return ConvexPolygon(std::move(hull));
    } catch (const config_error&) {
      continue;
    }
  }
  throw solver_error("random_convex_polygon: degenerate samples persisted");
}

}  // namespace plap

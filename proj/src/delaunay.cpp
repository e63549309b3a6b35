#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "plap/errors.hpp"
#include "plap/mesh.hpp"

namespace plap {
namespace {

struct DTri {
  std::array<int, 3> v;
  std::array<int, 3> adj;  // adj[k] faces the edge opposite v[k]; -1 outside
  bool alive = true;
};

double orient(const Vec2& a, const Vec2& b, const Vec2& c) {
  return (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
}

// Positive when p lies strictly inside the circumcircle of ccw (a, b, c).
// The error bound uses the sum of absolute determinant terms, which keeps the
// test meaningful next to the oversized helper triangle.
double incircle(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& p,
                double* noise) {
  const double ax = a.x() - p.x(), ay = a.y() - p.y();
  const double bx = b.x() - p.x(), by = b.y() - p.y();
  const double cx = c.x() - p.x(), cy = c.y() - p.y();
  const double az = ax * ax + ay * ay;
  const double bz = bx * bx + by * by;
  const double cz = cx * cx + cy * cy;
  const double t1 = ax * (by * cz - bz * cy);
  const double t2 = ay * (bx * cz - bz * cx);
  const double t3 = az * (bx * cy - by * cx);
  *noise = 1e-14 * (std::abs(ax) * (std::abs(by * cz) + std::abs(bz * cy)) +
                    std::abs(ay) * (std::abs(bx * cz) + std::abs(bz * cx)) +
                    std::abs(az) * (std::abs(bx * cy) + std::abs(by * cx)));
  return t1 - t2 + t3;
}

}  // namespace

std::vector<std::array<int, 3>> delaunay(const std::vector<Vec2>& points) {
  const int n = static_cast<int>(points.size());
  if (n < 3) return {};

  Vec2 lo = points[0], hi = points[0];
  for (const auto& p : points) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  const Vec2 cc = 0.5 * (lo + hi);
  const double scale = std::max((hi - lo).norm(), 1e-30);
  const double R = 24.0 * scale;

  std::vector<Vec2> pts = points;
  const int s0 = n, s1 = n + 1, s2 = n + 2;
  pts.push_back(cc + R * Vec2(0.0, 1.0));
  pts.push_back(cc + R * Vec2(-0.8660254037844386, -0.5));
  pts.push_back(cc + R * Vec2(0.8660254037844386, -0.5));

  std::vector<DTri> tris;
  tris.reserve(static_cast<std::size_t>(4 * n + 16));
  tris.push_back({{s0, s1, s2}, {-1, -1, -1}, true});

  int last = 0;
  std::vector<int> cavity, stack;
  std::vector<char> in_cavity;

  for (int ip = 0; ip < n; ++ip) {
    const Vec2& p = pts[static_cast<std::size_t>(ip)];

    // walk toward the containing triangle
    int cur = last;
    long guard = 4 * static_cast<long>(tris.size()) + 64;
    while (true) {
      if (--guard < 0) {
        cur = -1;  // fall back to a linear scan
        break;
      }
      const DTri& t = tris[static_cast<std::size_t>(cur)];
      bool moved = false;
      for (int k = 0; k < 3 && !moved; ++k) {
        const Vec2& a = pts[static_cast<std::size_t>(t.v[(k + 1) % 3])];
        const Vec2& b = pts[static_cast<std::size_t>(t.v[(k + 2) % 3])];
        const double o = orient(a, b, p);
        if (o < -1e-13 * (b - a).norm() * ((p - a).norm() + 1e-300)) {
          if (t.adj[k] < 0) throw solver_error("delaunay: walked out of range");
          cur = t.adj[k];
          moved = true;
        }
      }
      if (!moved) break;
    }
    if (cur < 0) {
      for (int t = static_cast<int>(tris.size()) - 1; t >= 0; --t) {
        if (!tris[static_cast<std::size_t>(t)].alive) continue;
        const DTri& tt = tris[static_cast<std::size_t>(t)];
        bool inside = true;
        for (int k = 0; k < 3 && inside; ++k)
          inside = orient(pts[static_cast<std::size_t>(tt.v[(k + 1) % 3])],
                          pts[static_cast<std::size_t>(tt.v[(k + 2) % 3])], p) >= 0.0;
        if (inside) {
          cur = t;
          break;
        }
      }
      if (cur < 0) throw solver_error("delaunay: point locator failed");
    }

    // grow the cavity of triangles whose circumcircle strictly contains p
    in_cavity.assign(tris.size(), 0);
    cavity.clear();
    stack.assign(1, cur);
    in_cavity[static_cast<std::size_t>(cur)] = 1;
    while (!stack.empty()) {
      const int t = stack.back();
      stack.pop_back();
      cavity.push_back(t);
      for (int k = 0; k < 3; ++k) {
        const int nb = tris[static_cast<std::size_t>(t)].adj[k];
        if (nb < 0 || in_cavity[static_cast<std::size_t>(nb)]) continue;
        const DTri& tt = tris[static_cast<std::size_t>(nb)];
        double noise = 0.0;
        const double det = incircle(pts[static_cast<std::size_t>(tt.v[0])],
                                    pts[static_cast<std::size_t>(tt.v[1])],
                                    pts[static_cast<std::size_t>(tt.v[2])], p, &noise);
        if (det > noise) {
          in_cavity[static_cast<std::size_t>(nb)] = 1;
          stack.push_back(nb);
        }
      }
    }

    // collect boundary edges (a -> b ccw around the cavity)
    struct Rim {
      int a, b, outer, outer_slot;
    };
    std::vector<Rim> rim;
    for (int t : cavity) {
      const DTri& tt = tris[static_cast<std::size_t>(t)];
      for (int k = 0; k < 3; ++k) {
        const int nb = tt.adj[k];
        if (nb >= 0 && in_cavity[static_cast<std::size_t>(nb)]) continue;
        int slot = -1;
        if (nb >= 0) {
          const DTri& ot = tris[static_cast<std::size_t>(nb)];
          for (int m = 0; m < 3; ++m)
            if (ot.adj[m] == t) slot = m;
        }
        rim.push_back({tt.v[(k + 1) % 3], tt.v[(k + 2) % 3], nb, slot});
      }
    }
    for (int t : cavity) tris[static_cast<std::size_t>(t)].alive = false;

    // fan new triangles {p, a, b} and stitch them around p
    const int base = static_cast<int>(tris.size());
    std::vector<std::pair<int, int>> by_start;  // (vertex a, triangle index)
    by_start.reserve(rim.size());
    for (std::size_t e = 0; e < rim.size(); ++e) {
      const int idx = base + static_cast<int>(e);
      tris.push_back({{ip, rim[e].a, rim[e].b}, {rim[e].outer, -1, -1}, true});
      if (rim[e].outer >= 0 && rim[e].outer_slot >= 0)
        tris[static_cast<std::size_t>(rim[e].outer)].adj[rim[e].outer_slot] = idx;
      by_start.push_back({rim[e].a, idx});
    }
    auto find_start = [&](int v) {
      for (const auto& s : by_start)
        if (s.first == v) return s.second;
      return -1;
    };
    for (std::size_t e = 0; e < rim.size(); ++e) {
      const int idx = base + static_cast<int>(e);
      tris[static_cast<std::size_t>(idx)].adj[1] = find_start(rim[e].b);  // edge (b, p)
      // edge (p, a) pairs with the triangle whose rim edge ends at a
      for (std::size_t f = 0; f < rim.size(); ++f)
        if (rim[f].b == rim[e].a)
          tris[static_cast<std::size_t>(idx)].adj[2] = base + static_cast<int>(f);
    }
    last = base;
  }

  std::vector<std::array<int, 3>> out;
  out.reserve(tris.size());
  for (const auto& t : tris) {
    if (!t.alive) continue;
    if (t.v[0] >= n || t.v[1] >= n || t.v[2] >= n) continue;
    out.push_back(t.v);
  }
  return out;
}

}  // namespace plap

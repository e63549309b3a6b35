#include "plap/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>

#include "plap/errors.hpp"

namespace plap {
namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

std::uint64_t edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

// Deterministic per-site jitter in [-1, 1)^2 from integer lattice coordinates.
Vec2 lattice_jitter(std::int64_t row, std::int64_t col) {
  std::uint64_t z = static_cast<std::uint64_t>(row) * 0x9e3779b97f4a7c15ull +
                    static_cast<std::uint64_t>(col) + 0x243f6a8885a308d3ull;
  auto mix = [](std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ull;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebull;
    x ^= x >> 31;
    return x;
  };
  z = mix(z);
  const double u = static_cast<double>(z >> 32) / 4294967296.0;
  const double v = static_cast<double>(z & 0xffffffffull) / 4294967296.0;
  return {2.0 * u - 1.0, 2.0 * v - 1.0};
}

// Orientation fix, boundary flags from edge usage, size and quality metrics,
// and a connectivity guard.  All mesh builders funnel through here.
Mesh finalize_mesh(std::vector<Vec2> vertices,
                   std::vector<std::array<int, 3>> triangles) {
  Mesh m;
  m.vertices = std::move(vertices);
  m.triangles = std::move(triangles);
  if (m.triangles.empty()) throw solver_error("mesh: empty triangulation");

  for (auto& t : m.triangles) {
    const Vec2 e1 = m.vertices[static_cast<std::size_t>(t[1])] -
                    m.vertices[static_cast<std::size_t>(t[0])];
    const Vec2 e2 = m.vertices[static_cast<std::size_t>(t[2])] -
                    m.vertices[static_cast<std::size_t>(t[0])];
    if (e1.x() * e2.y() - e1.y() * e2.x() < 0.0) std::swap(t[1], t[2]);
  }

  std::unordered_map<std::uint64_t, int> edge_use;
  edge_use.reserve(3 * m.triangles.size());
  for (const auto& t : m.triangles)
    for (int k = 0; k < 3; ++k) ++edge_use[edge_key(t[k], t[(k + 1) % 3])];

  m.on_boundary.assign(m.vertices.size(), 0);
  for (const auto& t : m.triangles)
    for (int k = 0; k < 3; ++k) {
      const int a = t[k], b = t[(k + 1) % 3];
      const int uses = edge_use[edge_key(a, b)];
      if (uses > 2) throw solver_error("mesh: non-manifold edge");
      if (uses == 1) {
        m.on_boundary[static_cast<std::size_t>(a)] = 1;
        m.on_boundary[static_cast<std::size_t>(b)] = 1;
      }
    }

  m.h = 0.0;
  m.min_angle_deg = 180.0;
  for (const auto& t : m.triangles) {
    for (int k = 0; k < 3; ++k) {
      const Vec2& a = m.vertices[static_cast<std::size_t>(t[k])];
      const Vec2& b = m.vertices[static_cast<std::size_t>(t[(k + 1) % 3])];
      const Vec2& c = m.vertices[static_cast<std::size_t>(t[(k + 2) % 3])];
      m.h = std::max(m.h, (b - a).norm());
      const Vec2 u = b - a, v = c - a;
      const double cosang =
          std::clamp(u.dot(v) / (u.norm() * v.norm()), -1.0, 1.0);
      m.min_angle_deg = std::min(m.min_angle_deg, std::acos(cosang) * 180.0 / kPi);
    }
  }

  // single connected component, via union-find over triangle vertices
  std::vector<int> parent(m.vertices.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  std::function<int(int)> find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (const auto& t : m.triangles) {
    parent[static_cast<std::size_t>(find(t[1]))] = find(t[0]);
    parent[static_cast<std::size_t>(find(t[2]))] = find(t[0]);
  }
  std::vector<char> used(m.vertices.size(), 0);
  for (const auto& t : m.triangles)
    for (int k = 0; k < 3; ++k) used[static_cast<std::size_t>(t[k])] = 1;
  int root = -1;
  for (std::size_t i = 0; i < m.vertices.size(); ++i) {
    if (!used[i]) throw solver_error("mesh: dangling vertex");
    if (root < 0) root = find(static_cast<int>(i));
    if (find(static_cast<int>(i)) != root)
      throw solver_error("mesh: disconnected triangulation");
  }
  return m;
}

}  // namespace

int Mesh::interior_count() const {
  int n = 0;
  for (char f : on_boundary) n += f ? 0 : 1;
  return n;
}

Mesh mesh_rectangle(double w, double h, int across) {
  if (!(w > 0.0) || !(h > 0.0))
    throw config_error("mesh_rectangle: sides must be positive");
  if (across < 1) throw config_error("mesh_rectangle: need at least 1 segment");
  const double step = std::max(w, h) / across;
  const int nx = std::max(1, static_cast<int>(std::lround(w / step)));
  const int ny = std::max(1, static_cast<int>(std::lround(h / step)));

  std::vector<Vec2> vertices;
  vertices.reserve(static_cast<std::size_t>((nx + 1) * (ny + 1)));
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i)
      vertices.push_back({w * i / nx, h * j / ny});

  auto at = [nx](int i, int j) { return j * (nx + 1) + i; };
  std::vector<std::array<int, 3>> triangles;
  triangles.reserve(static_cast<std::size_t>(2 * nx * ny));
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const int a = at(i, j), b = at(i + 1, j), c = at(i + 1, j + 1),
                d = at(i, j + 1);
      triangles.push_back({a, b, c});
      triangles.push_back({a, c, d});
    }
  return finalize_mesh(std::move(vertices), std::move(triangles));
}

Mesh mesh_polygon(const ConvexPolygon& poly, double target_h) {
  if (!(target_h > 0.0)) throw config_error("mesh_polygon: target size must be > 0");

  std::vector<Vec2> pts;
  const int n = poly.size();
  for (int i = 0; i < n; ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % n];
    const int k = std::max(1, static_cast<int>(std::ceil((b - a).norm() / target_h)));
    for (int s = 0; s < k; ++s) pts.push_back(a + (b - a) * (double(s) / k));
  }

  // hex lattice anchored at the centroid, so scaled copies mesh similarly
  const Vec2 c = centroid(poly);
  Vec2 lo = poly[0], hi = poly[0];
  for (const auto& p : poly.vertices()) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  const double dy = target_h * std::sqrt(3.0) / 2.0;
  const std::int64_t rlo = static_cast<std::int64_t>(std::floor((lo.y() - c.y()) / dy));
  const std::int64_t rhi = static_cast<std::int64_t>(std::ceil((hi.y() - c.y()) / dy));
  for (std::int64_t r = rlo; r <= rhi; ++r) {
    const double y = c.y() + static_cast<double>(r) * dy;
    const double xoff = (r & 1) ? 0.5 * target_h : 0.0;
    const std::int64_t qlo =
        static_cast<std::int64_t>(std::floor((lo.x() - c.x() - xoff) / target_h));
    const std::int64_t qhi =
        static_cast<std::int64_t>(std::ceil((hi.x() - c.x() - xoff) / target_h));
    for (std::int64_t q = qlo; q <= qhi; ++q) {
      Vec2 p(c.x() + static_cast<double>(q) * target_h + xoff, y);
      p += 1e-6 * target_h * lattice_jitter(r, q);
      if (signed_distance(poly, p) > 0.55 * target_h) pts.push_back(p);
    }
  }
  return finalize_mesh(pts, delaunay(pts));
}

Mesh mesh_perforated(const PerforatedSquare& dom, double far_h) {
  if (!(far_h > 0.0)) throw config_error("mesh_perforated: target size must be > 0");
  const double s = dom.side, r = dom.r;
  const auto centers = perforation_centers(dom);
  // the background grid must resolve the gaps between neighbouring cells
  const double bg = std::min(far_h, dom.eps / 2.5);

  std::vector<Vec2> pts;
  const int kside = std::max(1, static_cast<int>(std::ceil(s / bg)));
  const ConvexPolygon square = rectangle_polygon(s, s);
  for (int e = 0; e < 4; ++e) {
    const Vec2& a = square[e];
    const Vec2& b = square[(e + 1) % 4];
    for (int k = 0; k < kside; ++k) pts.push_back(a + (b - a) * (double(k) / kside));
  }

  // graded rings around each hole: spacing r/4 at the hole boundary, growing
  // with distance until it reaches the background spacing
  const int ring_pts0 = 32;
  std::vector<double> ring_radii;
  {
    double rho = r;
    ring_radii.push_back(rho);
    while (true) {
      const double spacing = std::min(bg, 0.25 * r + 0.55 * (rho - r));
      rho += spacing;
      if (spacing >= 0.95 * bg || rho >= 0.85 * dom.eps) break;
      ring_radii.push_back(rho);
    }
  }
  std::vector<double> ring_spacing(ring_radii.size());
  for (std::size_t i = 0; i < ring_radii.size(); ++i)
    ring_spacing[i] = std::min(bg, 0.25 * r + 0.55 * (ring_radii[i] - r));

  for (std::size_t ci = 0; ci < centers.size(); ++ci) {
    const Vec2& cc = centers[ci];
    for (std::size_t ri = 0; ri < ring_radii.size(); ++ri) {
      const double rho = ring_radii[ri];
      const int count =
          ri == 0 ? ring_pts0
                  : std::max(12, static_cast<int>(
                                     std::ceil(2.0 * kPi * rho / ring_spacing[ri])));
      const double phase = (ri % 2) ? kPi / count : 0.0;
      for (int k = 0; k < count; ++k) {
        const double th = phase + 2.0 * kPi * k / count;
        const Vec2 p = cc + rho * Vec2(std::cos(th), std::sin(th));
        const double wall =
            std::min(std::min(p.x(), s - p.x()), std::min(p.y(), s - p.y()));
        if (ri > 0 && wall < 0.5 * ring_spacing[ri]) continue;
        pts.push_back(p);
      }
    }
  }

  // hex background away from holes and walls
  const double dy = bg * std::sqrt(3.0) / 2.0;
  const double keepout = ring_radii.back() + 0.6 * bg;
  for (std::int64_t rr = 0; rr <= static_cast<std::int64_t>(std::ceil(s / dy));
       ++rr) {
    const double y = rr * dy;
    const double xoff = (rr & 1) ? 0.5 * bg : 0.0;
    for (std::int64_t q = 0; q <= static_cast<std::int64_t>(std::ceil(s / bg));
         ++q) {
      Vec2 p(q * bg + xoff, y);
      p += 1e-6 * bg * lattice_jitter(rr, q);
      const double wall =
          std::min(std::min(p.x(), s - p.x()), std::min(p.y(), s - p.y()));
      if (wall < 0.55 * bg) continue;
      bool clear = true;
      for (const auto& cc : centers)
        if ((p - cc).norm() < keepout) {
          clear = false;
          break;
        }
      if (clear) pts.push_back(p);
    }
  }

  auto tris = delaunay(pts);

  // carve the holes: drop triangles whose centroid falls inside a hole
  const double apothem = r * std::cos(kPi / ring_pts0);
  std::vector<std::array<int, 3>> kept;
  kept.reserve(tris.size());
  for (const auto& t : tris) {
    const Vec2 g = (pts[static_cast<std::size_t>(t[0])] +
                    pts[static_cast<std::size_t>(t[1])] +
                    pts[static_cast<std::size_t>(t[2])]) /
                   3.0;
    bool in_hole = false;
    for (const auto& cc : centers) {
      if ((g - cc).norm() < apothem) {
        in_hole = true;
        break;
      }
    }
    if (!in_hole) kept.push_back(t);
  }

  // drop vertices orphaned by the carve and remap indices
  std::vector<int> remap(pts.size(), -1);
  for (const auto& t : kept)
    for (int k = 0; k < 3; ++k) remap[static_cast<std::size_t>(t[k])] = 0;
  std::vector<Vec2> verts;
  verts.reserve(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (remap[i] == 0) {
      remap[i] = static_cast<int>(verts.size());
      verts.push_back(pts[i]);
    }
  for (auto& t : kept)
    for (int k = 0; k < 3; ++k) t[k] = remap[static_cast<std::size_t>(t[k])];

  return finalize_mesh(std::move(verts), std::move(kept));
}

Mesh refine(const Mesh& m, std::vector<std::array<int, 2>>* parents) {
  std::vector<Vec2> verts = m.vertices;
  if (parents) parents->clear();
  std::unordered_map<std::uint64_t, int> mid;
  mid.reserve(3 * m.triangles.size());
  auto midpoint = [&](int a, int b) {
    const auto key = edge_key(a, b);
    auto it = mid.find(key);
    if (it != mid.end()) return it->second;
    const int idx = static_cast<int>(verts.size());
    verts.push_back(0.5 * (m.vertices[static_cast<std::size_t>(a)] +
                           m.vertices[static_cast<std::size_t>(b)]));
    if (parents) parents->push_back({a, b});
    mid.emplace(key, idx);
    return idx;
  };

  std::vector<std::array<int, 3>> tris;
  tris.reserve(4 * m.triangles.size());
  for (const auto& t : m.triangles) {
    const int m01 = midpoint(t[0], t[1]);
    const int m12 = midpoint(t[1], t[2]);
    const int m20 = midpoint(t[2], t[0]);
    tris.push_back({t[0], m01, m20});
    tris.push_back({t[1], m12, m01});
    tris.push_back({t[2], m20, m12});
    tris.push_back({m01, m12, m20});
  }
  return finalize_mesh(std::move(verts), std::move(tris));
}

}  // namespace plap

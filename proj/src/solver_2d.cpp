#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "plap/errors.hpp"
#include "plap/solver.hpp"
#include "solver_core.hpp"

namespace plap {
namespace {

using detail::QuotientModel;

// P1 elements with one gradient vector per triangle corner and lumped masses.
// Dirichlet vertices are compressed out of the dof numbering.
struct PlanarModel final : QuotientModel {
  struct Tri {
    std::array<int, 3> dof;
    std::array<Eigen::Vector2d, 3> g;
    double area;
  };
  std::vector<Tri> tris;
  Eigen::VectorXd m_;
  std::vector<int> vtx2dof, dof2vtx;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
  double metric_p = 2.0;

  explicit PlanarModel(const Mesh& mesh) {
    const int nv = static_cast<int>(mesh.vertices.size());
    vtx2dof.assign(static_cast<std::size_t>(nv), -1);
    for (int v = 0; v < nv; ++v)
      if (!mesh.on_boundary[static_cast<std::size_t>(v)]) {
        vtx2dof[static_cast<std::size_t>(v)] = static_cast<int>(dof2vtx.size());
        dof2vtx.push_back(v);
      }
    const int nf = static_cast<int>(dof2vtx.size());
    if (nf == 0) throw solver_error("planar model: no interior vertices");

    m_.setZero(nf);
    tris.reserve(mesh.triangles.size());
    for (const auto& t : mesh.triangles) {
      const Vec2& a = mesh.vertices[static_cast<std::size_t>(t[0])];
      const Vec2& b = mesh.vertices[static_cast<std::size_t>(t[1])];
      const Vec2& c = mesh.vertices[static_cast<std::size_t>(t[2])];
      const Vec2 e1 = b - a, e2 = c - a;
      const double det = e1.x() * e2.y() - e1.y() * e2.x();
      if (!(det > 0.0)) throw solver_error("planar model: degenerate triangle");
      Tri tri;
      tri.area = 0.5 * det;
      const Vec2 verts[3] = {a, b, c};
      for (int k = 0; k < 3; ++k) {
        const Vec2 opp = verts[(k + 2) % 3] - verts[(k + 1) % 3];
        tri.g[static_cast<std::size_t>(k)] = Eigen::Vector2d(-opp.y(), opp.x()) / det;
        tri.dof[static_cast<std::size_t>(k)] = vtx2dof[static_cast<std::size_t>(t[k])];
        const int dk = tri.dof[static_cast<std::size_t>(k)];
        if (dk >= 0) m_(dk) += tri.area / 3.0;
      }
      tris.push_back(tri);
    }
    factor_metric(Eigen::VectorXd::Ones(static_cast<Eigen::Index>(tris.size())));
  }

  // Weighted P1 stiffness with one multiplier per triangle.
  void factor_metric(const Eigen::VectorXd& coeff) {
    const int nf = static_cast<int>(dof2vtx.size());
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(nf);
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(9 * tris.size() + static_cast<std::size_t>(nf));
    for (std::size_t ti = 0; ti < tris.size(); ++ti) {
      const Tri& tri = tris[ti];
      const double w = coeff(static_cast<Eigen::Index>(ti)) * tri.area;
      for (int k = 0; k < 3; ++k) {
        const int dk = tri.dof[static_cast<std::size_t>(k)];
        if (dk < 0) continue;
        diag(dk) += w * tri.g[static_cast<std::size_t>(k)].squaredNorm();
        for (int l = 0; l < 3; ++l) {
          const int dl = tri.dof[static_cast<std::size_t>(l)];
          if (dl < 0) continue;
          trip.emplace_back(dk, dl,
                            w * tri.g[static_cast<std::size_t>(k)].dot(
                                    tri.g[static_cast<std::size_t>(l)]));
        }
      }
    }
    const double floor = 1e-9 * diag.maxCoeff();
    for (int i = 0; i < nf; ++i) trip.emplace_back(i, i, floor);
    Eigen::SparseMatrix<double> K(nf, nf);
    K.setFromTriplets(trip.begin(), trip.end());
    ldlt.compute(K);
    if (ldlt.info() != Eigen::Success)
      throw solver_error("planar model: stiffness factorization failed");
  }

  // One sparse factorization per continuation stage: re-center the metric on
  // the incoming iterate with coefficients |grad u|^{p-2}, slopes floored at
  // 1e-7 of their max.  In the plane that is enough; per-iteration rebuilds
  // would cost more than the descent they save.
  void refresh(const Eigen::VectorXd& u, double p) override {
    if (metric_p == p) return;
    if (p == 2.0) {
      factor_metric(Eigen::VectorXd::Ones(static_cast<Eigen::Index>(tris.size())));
      metric_p = 2.0;
      return;
    }
    Eigen::VectorXd s(static_cast<Eigen::Index>(tris.size()));
    double smax = 0.0;
    for (std::size_t ti = 0; ti < tris.size(); ++ti) {
      Eigen::Vector2d gu = Eigen::Vector2d::Zero();
      for (int k = 0; k < 3; ++k) {
        const int dk = tris[ti].dof[static_cast<std::size_t>(k)];
        if (dk >= 0) gu += u(dk) * tris[ti].g[static_cast<std::size_t>(k)];
      }
      s(static_cast<Eigen::Index>(ti)) = gu.norm();
      smax = std::max(smax, s(static_cast<Eigen::Index>(ti)));
    }
    if (smax == 0.0) return;
    Eigen::VectorXd coeff(s.size());
    for (Eigen::Index i = 0; i < s.size(); ++i)
      coeff(i) = std::pow(std::max(s(i), 1e-7 * smax), p - 2.0);
    const double cmax = coeff.maxCoeff();
    factor_metric(coeff / cmax);
    metric_p = p;
  }

  double energy(const Eigen::VectorXd& u, double p) const override {
    double e = 0.0;
    for (const auto& t : tris) {
      Eigen::Vector2d gu = Eigen::Vector2d::Zero();
      for (int k = 0; k < 3; ++k) {
        const int d = t.dof[static_cast<std::size_t>(k)];
        if (d >= 0) gu += u(d) * t.g[static_cast<std::size_t>(k)];
      }
      const double s2 = gu.squaredNorm();
      e += t.area * (p == 2.0 ? s2 : std::pow(s2, 0.5 * p));
    }
    return e;
  }

  Eigen::VectorXd energy_grad(const Eigen::VectorXd& u, double p) const override {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(u.size());
    for (const auto& t : tris) {
      Eigen::Vector2d gu = Eigen::Vector2d::Zero();
      for (int k = 0; k < 3; ++k) {
        const int d = t.dof[static_cast<std::size_t>(k)];
        if (d >= 0) gu += u(d) * t.g[static_cast<std::size_t>(k)];
      }
      const double s2 = gu.squaredNorm();
      if (s2 == 0.0) continue;
      const double c = p * t.area * (p == 2.0 ? 1.0 : std::pow(s2, 0.5 * p - 1.0));
      for (int k = 0; k < 3; ++k) {
        const int d = t.dof[static_cast<std::size_t>(k)];
        if (d >= 0) out(d) += c * t.g[static_cast<std::size_t>(k)].dot(gu);
      }
    }
    return out;
  }

  const Eigen::VectorXd& mass() const override { return m_; }

  Eigen::VectorXd precond(const Eigen::VectorXd& g) const override {
    return ldlt.solve(g);
  }
};

Mesh base_mesh(const Domain& dom, const SolverConfig& cfg) {
  struct Builder {
    const SolverConfig& cfg;
    Mesh operator()(const PolygonDomain& d) const {
      // size by the narrow direction once the shape elongates, or thin
      // polygons end up with near-empty coarse meshes and junk quotients
      const double extent =
          std::min(diameter(d.poly), 2.0 * width(d.poly));
      return mesh_polygon(d.poly, extent / cfg.resolution);
    }
    Mesh operator()(const RectangleDomain& d) const {
      return mesh_rectangle(d.w, d.h, cfg.resolution);
    }
    Mesh operator()(const PerforatedSquare& d) const {
      return mesh_perforated(d, d.side / cfg.resolution);
    }
    Mesh operator()(const BallDomain&) const {
      throw config_error("eigen_2d: ball domains use the radial backend");
    }
    Mesh operator()(const AnnulusDomain&) const {
      throw config_error("eigen_2d: annulus domains use the radial backend");
    }
  };
  return std::visit(Builder{cfg}, dom);
}

}  // namespace

EigenEstimate eigen_2d(const Domain& dom, double p, const SolverConfig& cfg) {
  if (!(p >= 1.1 && p <= 16.0))
    throw config_error("eigen_2d: exponent must lie in [1.1, 16]");
  if (cfg.levels < 1 || cfg.levels > 6)
    throw config_error("eigen_2d: levels must be in [1, 6]");
  if (cfg.resolution < 4)
    throw config_error("eigen_2d: resolution must be at least 4");

  EigenEstimate est;
  est.p = p;
  est.converged = true;

  auto mesh = std::make_shared<Mesh>(base_mesh(dom, cfg));
  Eigen::VectorXd full;  // nodal values incl. boundary zeros, current level

  for (int lvl = 0; lvl < cfg.levels; ++lvl) {
    if (lvl > 0) {
      std::vector<std::array<int, 2>> parents;
      auto next = std::make_shared<Mesh>(refine(*mesh, &parents));
      Eigen::VectorXd lifted(next->vertices.size());
      lifted.head(full.size()) = full;
      for (std::size_t k = 0; k < parents.size(); ++k)
        lifted(full.size() + static_cast<Eigen::Index>(k)) =
            0.5 * (full(parents[k][0]) + full(parents[k][1]));
      full = std::move(lifted);
      mesh = std::move(next);
    }

    PlanarModel model(*mesh);
    detail::SolveSummary sum;
    if (lvl == 0) {
      sum = detail::solve_cold(model, p, cfg.tol, cfg.max_iter, cfg.p_schedule);
    } else {
      Eigen::VectorXd warm(model.dof2vtx.size());
      for (std::size_t i = 0; i < model.dof2vtx.size(); ++i)
        warm(static_cast<Eigen::Index>(i)) = full(model.dof2vtx[i]);
      sum = detail::solve_warm(model, p, warm, cfg.tol, cfg.max_iter);
    }
    est.iterations += sum.total_iterations;
    if (!sum.converged) {
      est.converged = false;
      if (!est.message.empty()) est.message += "; ";
      est.message += "level " + std::to_string(lvl) + ": " + sum.message;
    }
    est.level_values.push_back({mesh->h, sum.out.value});

    full = Eigen::VectorXd::Zero(mesh->vertices.size());
    for (std::size_t i = 0; i < model.dof2vtx.size(); ++i)
      full(model.dof2vtx[i]) = sum.out.u(static_cast<Eigen::Index>(i));
  }

  const auto& lv = est.level_values;
  if (lv.size() >= 2) {
    est.extrapolated = 2.0 * lv.back().second - lv[lv.size() - 2].second;
    est.error_indicator = 2.0 * std::abs(lv.back().second - lv[lv.size() - 2].second);
  } else {
    est.extrapolated = lv.back().second;
    est.error_indicator = std::numeric_limits<double>::infinity();
  }

  // nonnegative representative, unit p-mass over the full vertex set
  if (full.sum() < 0.0) full = -full;
  const double fmin = full.minCoeff(), fmax = full.maxCoeff();
  if (fmin < -1e-6 * fmax) {
    if (!est.message.empty()) est.message += "; ";
    est.message += "eigenfunction dipped to " + std::to_string(fmin) +
                   " before clamping";
  }
  for (Eigen::Index i = 0; i < full.size(); ++i) full(i) = std::max(full(i), 0.0);
  Eigen::VectorXd full_mass = Eigen::VectorXd::Zero(full.size());
  for (const auto& t : mesh->triangles) {
    const Vec2& a = mesh->vertices[static_cast<std::size_t>(t[0])];
    const Vec2& b = mesh->vertices[static_cast<std::size_t>(t[1])];
    const Vec2& c = mesh->vertices[static_cast<std::size_t>(t[2])];
    const double area =
        0.5 * ((b - a).x() * (c - a).y() - (b - a).y() * (c - a).x());
    for (int k = 0; k < 3; ++k) full_mass(t[static_cast<std::size_t>(k)]) += area / 3.0;
  }
  const double pm = detail::lp_mass(full, full_mass, p);
  if (pm > 0.0) full /= std::pow(pm, 1.0 / p);
  est.eigenfunction = std::move(full);
  est.mesh = mesh;
  return est;
}

}  // namespace plap

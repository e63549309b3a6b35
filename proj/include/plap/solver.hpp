#pragma once

#include <Eigen/Dense>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "plap/domain.hpp"
#include "plap/mesh.hpp"

namespace plap {

struct SolverConfig {
  int levels = 3;           // nested grids; the last two feed extrapolation
  long max_iter = 50000;    // descent iteration cap per stage
  double tol = 1e-10;       // stop when the quotient decrease falls below tol*R
  double p_schedule = 1.25; // continuation ladder exponent, walking from p = 2
  int resolution = 24;      // coarse-level boundary segments across the domain
  int radial_n = 4096;      // finest radial cell count
};

// Eigenvalue estimate across nested discretization levels.  `extrapolated`
// is the rate-1 Richardson value from the two finest levels and tends to
// overestimate the continuum limit by no more than the extrapolation error;
// `error_indicator` is twice the last inter-level gap.
struct EigenEstimate {
  double p = 2.0;
  std::vector<std::pair<double, double>> level_values;  // (h, lambda)
  double extrapolated = 0.0;
  double error_indicator = 0.0;
  Eigen::VectorXd eigenfunction;  // nodal, nonnegative, unit p-mass
  std::shared_ptr<const Mesh> mesh;  // planar runs: finest mesh
  Eigen::VectorXd radial_grid;       // radial runs: finest node positions
  long iterations = 0;
  bool converged = false;
  std::string message;
};

// Planar principal Dirichlet eigenvalue on polygons, rectangles and
// perforated squares.  P1 elements, lumped masses; inverse power iteration at
// p = 2, exponent continuation plus preconditioned projected descent
// otherwise.  Valid for p in [1.1, 16].
EigenEstimate eigen_2d(const Domain& dom, double p, const SolverConfig& cfg = {});

// Radially symmetric reductions, any dimension, p in (1, inf).
// Ball: principal Dirichlet value (zero at the outer radius).
// Annulus: the mixed cell problem (zero at the inner radius, natural at the
// outer), as it arises for one lattice cell of a perforated medium.
EigenEstimate eigen_radial(const BallDomain& dom, double p,
                           const SolverConfig& cfg = {});
EigenEstimate eigen_radial(const AnnulusDomain& dom, double p,
                           const SolverConfig& cfg = {});

// Principal value of a disjoint union: the smallest branch.
EigenEstimate eigen_disjoint_union(const std::vector<EigenEstimate>& parts);

}  // namespace plap

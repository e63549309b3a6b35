#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "plap/exact.hpp"
#include "plap/solver.hpp"

namespace plap {

// One row of a scripted sweep: parameters in, computed scalars out
// (including the error indicators its verdict used), and a verdict against
// the analytic facts that apply to the row.  Key sets are fixed per
// experiment so rows tabulate into stable columns; quantities a row could
// not compute are NaN.
struct SweepRecord {
  std::string experiment;
  std::map<std::string, double> params;
  std::map<std::string, double> values;
  BoundStatus status = BoundStatus::Skipped;
  std::string note;
};

// Rows are independent solves; `threads` caps a worker pool over them.
// Results are identical and canonically ordered regardless of the cap.

// Unit-ball scale across dimensions: lambda_p via the radial solver,
// ratio against the q-leg (q = 1 uses the exact Cheeger value h = d),
// checked against the ratio lower bound q/p and the trial-function upper
// bound at s = sqrt(d).  Dimensions are sorted, deduplicated, and capped
// at 10^4; above d = 128 the ladder drops to 2 levels and from d = 2048
// the grid is pinned at 8192 cells (the eigenfunction lives in a thin
// boundary shell, finer ladders buy nothing).  Solver failures propagate.
std::vector<SweepRecord> ball_dimension_sweep(double p, double q,
                                              const std::vector<int>& dims,
                                              const SolverConfig& cfg = {},
                                              int threads = 1);

// Perforated-square homogenization regimes on the unit square, p in
// (1, 2]: per (eps, r) the capacity ratio a_eps, the mixed cell value mu
// with its explicit lower bound, a total-capacity surrogate, and, when
// r >= eps^3 keeps the holes meshable, the perforated eigenvalue against
// the solid-square baseline.  Failures mark their row and the sweep
// continues.
std::vector<SweepRecord> perforation_sweep(
    double p, const std::vector<std::pair<double, double>>& scalings,
    const SolverConfig& cfg = {}, int threads = 1);

// Rectangles (0,1) x (0,L): lambda_p against the two-sided product
// estimate anchored at the interval value pi_p^p (sides swap orientation
// at p = 2).  Failures mark their row and the sweep continues.
std::vector<SweepRecord> cylinder_sweep(double p, const std::vector<double>& Ls,
                                        const SolverConfig& cfg = {},
                                        int threads = 1);

}  // namespace plap

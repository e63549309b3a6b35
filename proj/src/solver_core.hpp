#pragma once

// Internal descent machinery shared by the planar and radial backends.

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace plap::detail {

// Discrete Rayleigh quotient abstraction: a p-homogeneous energy with its
// gradient, a diagonal mass vector, and an SPD preconditioner.  refresh lets
// a model re-center its metric on the current iterate (weighted p-stiffness);
// without it, coordinates whose energy curvature differs from the p = 2
// stiffness by factors like |grad u|^{p-2} take wildly mis-scaled steps.
// Models choose their own rebuild policy; the default keeps a fixed metric.
struct QuotientModel {
  virtual ~QuotientModel() = default;
  virtual double energy(const Eigen::VectorXd& u, double p) const = 0;
  virtual Eigen::VectorXd energy_grad(const Eigen::VectorXd& u, double p) const = 0;
  virtual const Eigen::VectorXd& mass() const = 0;
  virtual Eigen::VectorXd precond(const Eigen::VectorXd& g) const = 0;
  virtual void refresh(const Eigen::VectorXd& /*u*/, double /*p*/) {}
};

double lp_mass(const Eigen::VectorXd& u, const Eigen::VectorXd& m, double p);

struct DescentOutcome {
  double value = 0.0;
  Eigen::VectorXd u;
  long iterations = 0;
  bool converged = false;
};

// Projected descent on the unit p-mass sphere with backtracking line search.
// Stops when the relative quotient decrease drops below tol, or when the
// line search cannot decrease at all; hitting max_iter means not converged.
DescentOutcome minimize_quotient(QuotientModel& model, double p,
                                 Eigen::VectorXd u0, double tol, long max_iter);

// Classic inverse power iteration for the p = 2 quotient; the preconditioner
// must invert the p = 2 stiffness for this to converge to the principal pair.
DescentOutcome inverse_power(const QuotientModel& model, Eigen::VectorXd u0,
                             double tol, long max_iter);

// Multiplicative exponent ladder from 2 toward target (endpoints included,
// 2 itself excluded).  step_exponent > 1 controls stride in log space.
std::vector<double> continuation_ladder(double target, double step_exponent);

struct SolveSummary {
  DescentOutcome out;
  long total_iterations = 0;
  bool converged = true;
  std::string message;
};

// Cold start: inverse power at p = 2, then walk the continuation ladder.
SolveSummary solve_cold(QuotientModel& model, double p, double tol,
                        long max_iter, double p_schedule);

// Warm start from an interpolated coarse solution, directly at the target.
SolveSummary solve_warm(QuotientModel& model, double p,
                        const Eigen::VectorXd& u0, double tol, long max_iter);

}  // namespace plap::detail

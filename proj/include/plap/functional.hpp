#pragma once

#include <string>
#include <vector>

#include "plap/domain.hpp"
#include "plap/exact.hpp"
#include "plap/exponent.hpp"
#include "plap/solver.hpp"

namespace plap {

// One evaluated leg of the extended scale Lambda_p = lambda_p^{1/p}:
// the Cheeger constant at p = 1, the inradius reciprocal at p = inf,
// an eigensolve raised to 1/p in between.
struct ScaleResult {
  Exponent p = Exponent::one();
  double value = 0.0;
  // indicator on value (extrapolation gap, bracket width), not a bound
  double error = 0.0;
  // backend tag: "fem", "radial", "cheeger", "cheeger-bracket",
  // "closed-form", "inradius"
  std::string method;
};

struct RatioResult {
  Exponent p = Exponent::one();
  Exponent q = Exponent::one();
  double lambda_p_scale = 0.0;
  double lambda_q_scale = 0.0;
  double ratio = 0.0;            // lambda_p_scale / lambda_q_scale
  std::string provenance;        // "<p-leg>/<q-leg>" backend tags
  double error_indicator = 0.0;  // leg indicators combined in quadrature
};

// Dispatches on the exponent and the domain kind.  Backend failures
// propagate as exceptions naming the leg.  Annuli support only p = inf:
// there is no Cheeger backend for them, and the radial annulus solver
// computes the mixed cell value rather than the domain eigenvalue.
ScaleResult lambda_scale(const Domain& dom, const Exponent& p,
                         const SolverConfig& cfg = {});

// Lambda_p / Lambda_q.  Requires q < p in the exponent order.
RatioResult ratio(const Domain& dom, const Exponent& p, const Exponent& q,
                  const SolverConfig& cfg = {});

// Evaluates the predicate suite on one domain over the given exponents:
// the principal-frequency lower bound lambda_2 >= h^2/4, the
// inradius product rho Lambda_p > pi_p/2 and the Cheeger ratio
// Lambda_p/h < pi_p/2 (both strict, convex domains only), the ratio
// lower bound F >= q/p for every pair, and the two-sided convex
// sandwich for F in the ambient dimension.  One report per
// (predicate, exponent) instance; legs a backend cannot produce mark
// their reports Skipped with the reason in note.  Error indicators are
// folded into each report's margin, so a value within its margin of a
// bound comes back Inconclusive rather than Satisfied or Failed.
std::vector<BoundReport> inequality_suite(const Domain& dom,
                                          const std::vector<Exponent>& ps,
                                          const SolverConfig& cfg = {});

}  // namespace plap

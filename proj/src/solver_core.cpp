#include "solver_core.hpp"

#include <algorithm>
#include <cmath>

#include "plap/errors.hpp"

namespace plap::detail {

double lp_mass(const Eigen::VectorXd& u, const Eigen::VectorXd& m, double p) {
  if (p == 2.0) return m.dot(u.cwiseAbs2());
  double s = 0.0;
  for (Eigen::Index i = 0; i < u.size(); ++i)
    s += m(i) * std::pow(std::abs(u(i)), p);
  return s;
}

DescentOutcome minimize_quotient(QuotientModel& model, double p,
                                 Eigen::VectorXd u, double tol, long max_iter) {
  const Eigen::VectorXd& m = model.mass();
  u /= std::pow(lp_mass(u, m, p), 1.0 / p);
  double R = model.energy(u, p);

  double eta = 0.5;
  long it = 0;
  int skip_proposal = 0;
  bool converged = false;
  Eigen::VectorXd g(u.size()), v(u.size());

  while (it < max_iter) {
    ++it;
    model.refresh(u, p);

    // Fixed-point proposal first: solve the frozen-coefficient problem
    // K_u w = m .* |u|^{p-2} u and walk toward w while the quotient drops.
    // This is inverse iteration on the linearization, and unlike gradient
    // stepping it needs no step-size calibration, which matters when node
    // amplitudes span hundreds of orders of magnitude (thin shells carry
    // all the weight and the interior carries none).  A rejected proposal
    // leaves u untouched, so once it stops paying it is retried sparsely
    // rather than burning a dozen energy evaluations every iteration.
    bool moved = false;
    if (skip_proposal > 0) {
      --skip_proposal;
    } else {
      for (Eigen::Index i = 0; i < u.size(); ++i) {
        const double ui = u(i);
        v(i) = ui == 0.0
                   ? 0.0
                   : m(i) * std::copysign(std::pow(std::abs(ui), p - 1.0), ui);
      }
      Eigen::VectorXd w = model.precond(v);
      const double mw = lp_mass(w, m, p);
      if (mw > 0.0 && std::isfinite(mw)) {
        w /= std::pow(mw, 1.0 / p);
        double t = 1.0;
        for (int bt = 0; bt < 8; ++bt, t *= 0.5) {
          v = u + t * (w - u);
          const double mv = lp_mass(v, m, p);
          if (!(mv > 0.0) || !std::isfinite(mv)) continue;
          v /= std::pow(mv, 1.0 / p);
          const double Ev = model.energy(v, p);
          // take the proposal only while it earns real progress; a stalled
          // proposal says nothing about stationarity, so convergence is
          // left for the gradient branch to certify
          if (Ev < R - 10.0 * tol * std::abs(R)) {
            u.swap(v);
            R = Ev;
            moved = true;
            break;
          }
        }
      }
      if (!moved) skip_proposal = 16;
    }
    if (moved) continue;

    // The proposal is only as good as the frozen coefficients; when it
    // stops helping, fall back to plain descent, whose Armijo test is what
    // certifies stationarity.
    g = model.energy_grad(u, p);
    for (Eigen::Index i = 0; i < u.size(); ++i) {
      const double ui = u(i);
      if (ui != 0.0)
        g(i) -= R * p * m(i) * std::copysign(std::pow(std::abs(ui), p - 1.0), ui);
    }
    const Eigen::VectorXd d = model.precond(g);
    // the quotient is scale invariant, so its ambient directional derivative
    // along -d is exactly -slope and an Armijo test is meaningful even though
    // iterates get renormalized.  slope > 0 while the preconditioner is SPD.
    const double slope = g.dot(d);
    if (!(slope > 0.0)) {
      converged = true;
      break;
    }

    double e = std::min(2.0 * eta, 1e3);
    double Rv = R;
    bool accepted = false;
    for (int bt = 0; bt < 80; ++bt) {
      v = u - e * d;
      const double mv = lp_mass(v, m, p);
      if (mv > 0.0 && std::isfinite(mv)) {
        v /= std::pow(mv, 1.0 / p);
        const double Ev = model.energy(v, p);
        if (Ev <= R - 1e-4 * e * slope) {
          Rv = Ev;
          accepted = true;
          break;
        }
      }
      e *= 0.5;
    }
    if (!accepted) {
      converged = true;  // stationary at line-search resolution
      break;
    }
    eta = e;
    u.swap(v);
    const double dec = R - Rv;
    R = Rv;
    if (dec < tol * std::abs(R)) {
      converged = true;
      break;
    }
  }
  return {R, std::move(u), it, converged};
}

DescentOutcome inverse_power(const QuotientModel& model, Eigen::VectorXd u,
                             double tol, long max_iter) {
  const Eigen::VectorXd& m = model.mass();
  u /= std::sqrt(lp_mass(u, m, 2.0));
  double lam = model.energy(u, 2.0);

  long it = 0;
  bool converged = false;
  const long cap = std::min<long>(max_iter, 5000);
  while (it < cap) {
    ++it;
    Eigen::VectorXd v = model.precond(m.cwiseProduct(u));
    const double nrm = std::sqrt(lp_mass(v, m, 2.0));
    if (!(nrm > 0.0) || !std::isfinite(nrm))
      throw solver_error("inverse_power: breakdown", lam);
    v /= nrm;
    const double next = model.energy(v, 2.0);
    u.swap(v);
    if (it > 2 && std::abs(next - lam) <= tol * std::abs(next)) {
      lam = next;
      converged = true;
      break;
    }
    lam = next;
  }
  return {lam, std::move(u), it, converged};
}

namespace {

void absorb(SolveSummary& s, const DescentOutcome& o, double stage_p) {
  s.total_iterations += o.iterations;
  if (!o.converged) {
    s.converged = false;
    if (!s.message.empty()) s.message += "; ";
    s.message += "iteration cap at stage p=" + std::to_string(stage_p);
  }
}

}  // namespace

SolveSummary solve_cold(QuotientModel& model, double p, double tol,
                        long max_iter, double p_schedule) {
  SolveSummary s;
  Eigen::VectorXd u0 = Eigen::VectorXd::Ones(model.mass().size());
  s.out = inverse_power(model, std::move(u0), std::min(tol, 1e-12), max_iter);
  absorb(s, s.out, 2.0);
  for (double stage : continuation_ladder(p, p_schedule)) {
    s.out = minimize_quotient(model, stage, std::move(s.out.u), tol, max_iter);
    absorb(s, s.out, stage);
  }
  return s;
}

SolveSummary solve_warm(QuotientModel& model, double p,
                        const Eigen::VectorXd& u0, double tol, long max_iter) {
  SolveSummary s;
  s.out = p == 2.0 ? inverse_power(model, u0, std::min(tol, 1e-12), max_iter)
                   : minimize_quotient(model, p, u0, tol, max_iter);
  absorb(s, s.out, p);
  return s;
}

std::vector<double> continuation_ladder(double target, double step_exponent) {
  if (!(step_exponent > 1.0))
    throw config_error("continuation: step exponent must exceed 1");
  std::vector<double> ladder;
  if (target == 2.0) return ladder;
  double p = 2.0;
  if (target > 2.0) {
    while (true) {
      p = std::pow(p, step_exponent);
      if (p >= target) break;
      ladder.push_back(p);
    }
  } else {
    while (true) {
      p = std::pow(p, 1.0 / step_exponent);
      if (p <= target) break;
      ladder.push_back(p);
    }
  }
  ladder.push_back(target);
  return ladder;
}

}  // namespace plap::detail

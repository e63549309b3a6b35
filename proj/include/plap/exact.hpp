#pragma once

#include <limits>
#include <string>

#include "plap/exponent.hpp"

namespace plap {

// Closed-form reference quantities for model domains, plus a small report
// type used everywhere a computed value is checked against analytic bounds.

enum class BoundStatus { Satisfied, Failed, Inconclusive, Skipped };

std::string to_string(BoundStatus s);

struct BoundReport {
  std::string name;
  double value = std::numeric_limits<double>::quiet_NaN();
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
  bool strict_lower = false;
  bool strict_upper = false;
  // Numerical slack on `value`.  Violations and clearances inside the margin
  // are reported as Inconclusive rather than guessed either way.
  double margin = 0.0;
  BoundStatus status = BoundStatus::Skipped;
  bool satisfied = false;
  std::string note;

  // Fills status/satisfied from the stored value, bounds and margin.
  BoundReport& evaluate();
};

// Sharp one-dimensional constant: 2*pi*(p-1)^(1/p) / (p*sin(pi/p)).
// Extends continuously to 2 at both endpoints.
double pi_p(double p);
double pi_p(const Exponent& p);

// Volume of the unit ball in R^d and the surface area of the unit sphere.
double unit_ball_volume(int d);
double unit_sphere_area(int d);

// Cheeger constant of a d-ball of radius r: d/r.
double ball_cheeger(int d, double r);

// Upper bound for the principal eigenvalue of the d-ball of radius 1 obtained
// from the trial profile (1-|x|)_+^s, valid for s*p > p-1:
//   s^p * Gamma(sp+d+1)Gamma(sp-p+1) / (Gamma(sp+1)Gamma(sp+d-p+1)).
// Evaluated through lgamma so it stays finite in high dimension.
double ball_upper_bound(int d, double p, double s);

// Two-sided bounds for lambda_p^{1/p} of the unit cube in R^d:
// between d^(1/p)*pi_p and d^(1/2)*pi_p, with the strict side depending on
// the sign of p-2 and equality exactly at p = 2.  value is left unset.
BoundReport cube_bounds(int d, double p);

// Relative p-capacity of the ball of radius r inside the concentric ball of
// radius R (0 < r < R), for 1 < p <= d.
double ball_capacity(int d, double p, double r, double R);

// Lower bound for the mixed eigenvalue of the weighted one-dimensional
// problem on (r, R) that arises from an R-cell with a hole of radius r:
//   d * (R^d - r^d)^{-1} * ((d-p)/(p-1))^{p-1} * (r^a - R^a)^{1-p},
// a = (p-d)/(p-1).  Degenerates to 0 at p = d.
double annulus_mu_lower_bound(int d, double p, double r, double R);

// a_eps = eps^{-d} * r^{d-p} for p < d; log-scaled variant at p = d.
// Classifies how hole capacity accumulates as the lattice refines.
double critical_ratio(int d, double p, double eps, double r);

}  // namespace plap

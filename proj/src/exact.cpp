#include "plap/exact.hpp"

#include <cmath>

namespace plap {

std::string to_string(BoundStatus s) {
  switch (s) {
    case BoundStatus::Satisfied: return "satisfied";
    case BoundStatus::Failed: return "failed";
    case BoundStatus::Inconclusive: return "inconclusive";
    case BoundStatus::Skipped: return "skipped";
  }
  return "unknown";
}

BoundReport& BoundReport::evaluate() {
  if (!std::isfinite(value)) {
    status = BoundStatus::Skipped;
    satisfied = false;
    return *this;
  }
  const double clear_lo = value - lower;
  const double clear_hi = upper - value;
  const bool lo_ok = strict_lower ? clear_lo > margin : clear_lo >= margin;
  const bool hi_ok = strict_upper ? clear_hi > margin : clear_hi >= margin;
  const bool lo_bad = strict_lower ? clear_lo <= -margin : clear_lo < -margin;
  const bool hi_bad = strict_upper ? clear_hi <= -margin : clear_hi < -margin;
  if (lo_bad || hi_bad)
    status = BoundStatus::Failed;
  else if (lo_ok && hi_ok)
    status = BoundStatus::Satisfied;
  else
    status = BoundStatus::Inconclusive;
  satisfied = status == BoundStatus::Satisfied;
  return *this;
}

double pi_p(double p) {
  if (!(p >= 1.0)) throw config_error("pi_p: exponent must satisfy p >= 1");
  if (p == 1.0 || std::isinf(p)) return 2.0;
  const double pi = 3.141592653589793238462643383279502884;
  return 2.0 * pi * std::pow(p - 1.0, 1.0 / p) / (p * std::sin(pi / p));
}

double pi_p(const Exponent& p) {
  if (p.is_finite()) return pi_p(p.value());
  return 2.0;
}

double unit_ball_volume(int d) {
  if (d < 1) throw config_error("unit_ball_volume: dimension must be >= 1");
  const double pi = 3.141592653589793238462643383279502884;
  return std::exp(0.5 * d * std::log(pi) - std::lgamma(0.5 * d + 1.0));
}

double unit_sphere_area(int d) { return d * unit_ball_volume(d); }

double ball_cheeger(int d, double r) {
  if (d < 1) throw config_error("ball_cheeger: dimension must be >= 1");
  if (!(r > 0.0)) throw config_error("ball_cheeger: radius must be positive");
  return d / r;
}

double ball_upper_bound(int d, double p, double s) {
  if (d < 1) throw config_error("ball_upper_bound: dimension must be >= 1");
  if (!(p > 1.0) || !std::isfinite(p))
    throw config_error("ball_upper_bound: exponent must be finite and > 1");
  if (!(s * p > p - 1.0))
    throw config_error("ball_upper_bound: profile power must satisfy s*p > p-1");
  const double sp = s * p;
  const double log_bound = p * std::log(s) + std::lgamma(sp + d + 1.0) +
                           std::lgamma(sp - p + 1.0) - std::lgamma(sp + 1.0) -
                           std::lgamma(sp + d - p + 1.0);
  return std::exp(log_bound);
}

BoundReport cube_bounds(int d, double p) {
  if (d < 1) throw config_error("cube_bounds: dimension must be >= 1");
  if (!(p > 1.0) || !std::isfinite(p))
    throw config_error("cube_bounds: exponent must be finite and > 1");
  const double c = pi_p(p);
  const double a = std::pow(static_cast<double>(d), 1.0 / p) * c;
  const double b = std::sqrt(static_cast<double>(d)) * c;
  BoundReport rep;
  rep.name = "cube_lambda_scale(d=" + std::to_string(d) + ")";
  if (p > 2.0) {
    rep.lower = a;
    rep.upper = b;
    rep.strict_upper = true;
  } else if (p < 2.0) {
    rep.lower = b;
    rep.upper = a;
    rep.strict_lower = true;
  } else {
    rep.lower = rep.upper = b;  // a == b at p = 2
  }
  return rep;
}

double ball_capacity(int d, double p, double r, double R) {
  if (d < 1) throw config_error("ball_capacity: dimension must be >= 1");
  if (!(r > 0.0) || !(R > r)) throw config_error("ball_capacity: need 0 < r < R");
  if (!(p > 1.0) || !(p <= d))
    throw config_error("ball_capacity: exponent must satisfy 1 < p <= d");
  const double surface = unit_sphere_area(d);
  if (p == static_cast<double>(d))
    return surface * std::pow(std::log(R / r), 1.0 - d);
  const double a = (p - d) / (p - 1.0);
  const double body = std::pow((d - p) / (p - 1.0), p - 1.0);
  return surface * body * std::pow(std::pow(r, a) - std::pow(R, a), 1.0 - p);
}

double annulus_mu_lower_bound(int d, double p, double r, double R) {
  if (d < 1) throw config_error("annulus_mu_lower_bound: dimension must be >= 1");
  if (!(r > 0.0) || !(R > r))
    throw config_error("annulus_mu_lower_bound: need 0 < r < R");
  if (!(p > 1.0) || !(p <= d))
    throw config_error("annulus_mu_lower_bound: exponent must satisfy 1 < p <= d");
  if (p == static_cast<double>(d)) return 0.0;
  const double a = (p - d) / (p - 1.0);
  const double body = std::pow((d - p) / (p - 1.0), p - 1.0);
  const double shell = std::pow(R, d) - std::pow(r, d);
  return d / shell * body * std::pow(std::pow(r, a) - std::pow(R, a), 1.0 - p);
}

double critical_ratio(int d, double p, double eps, double r) {
  if (d < 1) throw config_error("critical_ratio: dimension must be >= 1");
  if (!(p > 1.0) || !(p <= d))
    throw config_error("critical_ratio: exponent must satisfy 1 < p <= d");
  if (!(r > 0.0) || !(eps > r))
    throw config_error("critical_ratio: need 0 < r < eps");
  if (p == static_cast<double>(d)) {
    if (!(r < 1.0)) throw config_error("critical_ratio: need r < 1 at p = d");
    return std::exp(-d * std::log(eps) + (1.0 - d) * std::log(std::log(1.0 / r)));
  }
  return std::exp(-d * std::log(eps) + (d - p) * std::log(r));
}

}  // namespace plap

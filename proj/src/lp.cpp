#include "plap/lp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace plap {
namespace {

// Feasibility slack.  Constraint rows are normalized to unit gradient before
// use, so an absolute tolerance scaled by the box magnitude is adequate.
double slack_for(double boxmag) { return 1e-12 * std::max(1.0, boxmag); }

std::vector<int> shuffled_order(std::size_t m) {
  std::vector<int> idx(m);
  std::iota(idx.begin(), idx.end(), 0);
  // Fixed seed: results must not depend on call history.
  std::mt19937_64 rng(0x9e3779b97f4a7c15ull ^ (m * 2 + 1));
  std::shuffle(idx.begin(), idx.end(), rng);
  return idx;
}

}  // namespace

std::optional<double> lp_max_1(const std::vector<Eigen::Vector2d>& rows, double c,
                               double lo, double hi) {
  const double eps = slack_for(std::max(std::abs(lo), std::abs(hi)));
  for (const auto& r : rows) {
    double a = r(0), b = r(1);
    const double mag = std::abs(a);
    if (mag < 1e-300) {
      if (b < -eps) return std::nullopt;  // 0 <= b violated
      continue;
    }
    a /= mag;
    b /= mag;
    if (a > 0.0)
      hi = std::min(hi, b);
    else
      lo = std::max(lo, -b);
  }
  if (lo > hi) {
    if (lo - hi > eps) return std::nullopt;
    return 0.5 * (lo + hi);
  }
  return c >= 0.0 ? hi : lo;
}

std::optional<Eigen::Vector2d> lp_max_2(const std::vector<Eigen::Vector3d>& rows,
                                        const Eigen::Vector2d& c,
                                        const Eigen::Vector2d& lo,
                                        const Eigen::Vector2d& hi) {
  const double boxmag = std::max(lo.cwiseAbs().maxCoeff(), hi.cwiseAbs().maxCoeff());
  const double eps = slack_for(boxmag);

  std::vector<Eigen::Vector3d> seen;
  seen.reserve(rows.size());

  Eigen::Vector2d x;
  for (int k = 0; k < 2; ++k) x(k) = c(k) >= 0.0 ? hi(k) : lo(k);

  for (int i : shuffled_order(rows.size())) {
    Eigen::Vector3d r = rows[i];
    const double mag = r.head<2>().norm();
    if (mag < 1e-300) {
      if (r(2) < -eps) return std::nullopt;
      continue;
    }
    r /= mag;
    if (r(0) * x(0) + r(1) * x(1) <= r(2) + eps) {
      seen.push_back(r);
      continue;
    }

    // x moves onto the line r.a x = r.b; eliminate the large coordinate.
    const int k = std::abs(r(0)) >= std::abs(r(1)) ? 0 : 1;
    const int j = 1 - k;
    const double alpha = r(2) / r(k);
    const double beta = -r(j) / r(k);

    std::vector<Eigen::Vector2d> sub;
    sub.reserve(seen.size() + 2);
    for (const auto& q : seen)
      sub.push_back({q(j) + q(k) * beta, q(2) - q(k) * alpha});
    sub.push_back({beta, hi(k) - alpha});    // x_k <= hi_k
    sub.push_back({-beta, alpha - lo(k)});   // x_k >= lo_k

    auto xj = lp_max_1(sub, c(j) + c(k) * beta, lo(j), hi(j));
    if (!xj) return std::nullopt;
    x(j) = *xj;
    x(k) = alpha + beta * *xj;
    seen.push_back(r);
  }
  return x;
}

std::optional<Eigen::Vector3d> lp_max_3(const std::vector<Eigen::Vector4d>& rows,
                                        const Eigen::Vector3d& c,
                                        const Eigen::Vector3d& lo,
                                        const Eigen::Vector3d& hi) {
  const double boxmag = std::max(lo.cwiseAbs().maxCoeff(), hi.cwiseAbs().maxCoeff());
  const double eps = slack_for(boxmag);

  std::vector<Eigen::Vector4d> seen;
  seen.reserve(rows.size());

  Eigen::Vector3d x;
  for (int k = 0; k < 3; ++k) x(k) = c(k) >= 0.0 ? hi(k) : lo(k);

  for (int i : shuffled_order(rows.size())) {
    Eigen::Vector4d r = rows[i];
    const double mag = r.head<3>().norm();
    if (mag < 1e-300) {
      if (r(3) < -eps) return std::nullopt;
      continue;
    }
    r /= mag;
    if (r.head<3>().dot(x) <= r(3) + eps) {
      seen.push_back(r);
      continue;
    }

    int k = 0;
    for (int t = 1; t < 3; ++t)
      if (std::abs(r(t)) > std::abs(r(k))) k = t;
    const int u = (k + 1) % 3, v = (k + 2) % 3;
    const double alpha = r(3) / r(k);
    const double bu = -r(u) / r(k);
    const double bv = -r(v) / r(k);

    std::vector<Eigen::Vector3d> sub;
    sub.reserve(seen.size() + 2);
    for (const auto& q : seen)
      sub.push_back({q(u) + q(k) * bu, q(v) + q(k) * bv, q(3) - q(k) * alpha});
    sub.push_back({bu, bv, hi(k) - alpha});
    sub.push_back({-bu, -bv, alpha - lo(k)});

    auto xy = lp_max_2(sub, {c(u) + c(k) * bu, c(v) + c(k) * bv},
                       {lo(u), lo(v)}, {hi(u), hi(v)});
    if (!xy) return std::nullopt;
    x(u) = (*xy)(0);
    x(v) = (*xy)(1);
    x(k) = alpha + bu * x(u) + bv * x(v);
    seen.push_back(r);
  }
  return x;
}

}  // namespace plap

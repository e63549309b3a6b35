#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "plap/exact.hpp"
#include "plap/exponent.hpp"

using namespace plap;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

// Discrete relative capacity on a geometric grid: piecewise linear profile,
// per-segment energy minimized exactly by Lagrange weights.  Independent of
// the closed form under test.
double capacity_oracle(int d, double p, double r, double R, int n) {
  double S = 0.0;
  for (int i = 0; i < n; ++i) {
    const double a = r * std::pow(R / r, double(i) / n);
    const double b = r * std::pow(R / r, double(i + 1) / n);
    const double w = unit_ball_volume(d) * (std::pow(b, d) - std::pow(a, d));
    const double h = b - a;
    S += std::pow(std::pow(h, p) / w, 1.0 / (p - 1.0));
  }
  return std::pow(S, 1.0 - p);
}
}  // namespace

TEST_CASE("exponent endpoints and ordering") {
  auto p1 = Exponent::one();
  auto pi_ = Exponent::infinity();
  auto p2 = Exponent::finite(2.0);
  CHECK(p1.is_one());
  CHECK(pi_.is_infinity());
  CHECK(p2.is_finite());
  CHECK(p1 < p2);
  CHECK(p2 < pi_);
  CHECK(p1 < pi_);
  CHECK(p2.value() == 2.0);
  CHECK(p1.as_double() == 1.0);
  CHECK(std::isinf(pi_.as_double()));
  CHECK_THROWS_AS(p1.value(), config_error);
  CHECK_THROWS_AS(Exponent::finite(1.0), config_error);
  CHECK_THROWS_AS(Exponent::finite(0.5), config_error);
  CHECK_THROWS_AS(Exponent::finite(std::numeric_limits<double>::infinity()),
                  config_error);
}

TEST_CASE("exponent conjugation") {
  CHECK(Exponent::one().conjugate().is_infinity());
  CHECK(Exponent::infinity().conjugate().is_one());
  CHECK(Exponent::finite(2.0).conjugate().value() == doctest::Approx(2.0));
  CHECK(Exponent::finite(4.0).conjugate().value() ==
        doctest::Approx(4.0 / 3.0).epsilon(1e-14));
  CHECK(Exponent::finite(1.5).conjugate().value() == doctest::Approx(3.0));
}

TEST_CASE("exponent parsing") {
  CHECK(Exponent::parse("1").is_one());
  CHECK(Exponent::parse("1.0").is_one());
  CHECK(Exponent::parse("inf").is_infinity());
  CHECK(Exponent::parse("infinity").is_infinity());
  CHECK(Exponent::parse("2.5").value() == doctest::Approx(2.5));
  CHECK(Exponent::parse("2.5").str() == "2.5");
  CHECK(Exponent::parse("inf").str() == "inf");
  CHECK_THROWS_AS(Exponent::parse("abc"), config_error);
  CHECK_THROWS_AS(Exponent::parse("2.5x"), config_error);
  CHECK_THROWS_AS(Exponent::parse("0.9"), config_error);
}

TEST_CASE("pi_p endpoint and midpoint values") {
  CHECK(pi_p(2.0) == doctest::Approx(kPi).epsilon(1e-15));
  CHECK(pi_p(1.0) == 2.0);
  CHECK(pi_p(std::numeric_limits<double>::infinity()) == 2.0);
  CHECK(pi_p(Exponent::one()) == 2.0);
  CHECK(pi_p(Exponent::infinity()) == 2.0);
  CHECK(pi_p(Exponent::finite(2.0)) == doctest::Approx(kPi).epsilon(1e-15));
  // continuous approach to the endpoints
  CHECK(pi_p(1.0001) == doctest::Approx(2.0).epsilon(2e-3));
  CHECK(pi_p(1e7) == doctest::Approx(2.0).epsilon(2e-5));
  // p = 2 is the maximum
  for (double p : {1.2, 1.5, 3.0, 4.0, 12.0}) CHECK(pi_p(p) < kPi);
  CHECK_THROWS_AS(pi_p(0.5), config_error);
}

TEST_CASE("pi_p is invariant under conjugation") {
  for (double p : {1.5, 4.0, 10.0, 1.01}) {
    const double q = p / (p - 1.0);
    CHECK(pi_p(p) == doctest::Approx(pi_p(q)).epsilon(1e-13));
  }
}

TEST_CASE("unit ball volumes") {
  CHECK(unit_ball_volume(1) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(unit_ball_volume(2) == doctest::Approx(kPi).epsilon(1e-14));
  CHECK(unit_ball_volume(3) == doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-14));
  CHECK(unit_ball_volume(4) == doctest::Approx(kPi * kPi / 2.0).epsilon(1e-14));
  CHECK(unit_sphere_area(2) == doctest::Approx(2.0 * kPi).epsilon(1e-14));
  CHECK(unit_sphere_area(3) == doctest::Approx(4.0 * kPi).epsilon(1e-14));
}

TEST_CASE("ball cheeger constant") {
  CHECK(ball_cheeger(2, 1.0) == 2.0);
  CHECK(ball_cheeger(3, 0.5) == 6.0);
  CHECK_THROWS_AS(ball_cheeger(2, 0.0), config_error);
}

TEST_CASE("ball upper bound matches hand-checked Rayleigh quotients") {
  // (1-|x|) on the interval: energy 2, mass 2/3
  CHECK(ball_upper_bound(1, 2.0, 1.0) == doctest::Approx(3.0).epsilon(1e-13));
  // (1-r) on the disc: energy pi, mass pi/6
  CHECK(ball_upper_bound(2, 2.0, 1.0) == doctest::Approx(6.0).epsilon(1e-13));
  // tuned profile power gets close to the true disc value j01^2 = 5.7832
  const double j01sq = 5.783185962946785;
  const double tuned = ball_upper_bound(2, 2.0, 0.92);
  CHECK(tuned > j01sq);
  CHECK(tuned < 6.0);
  CHECK_THROWS_AS(ball_upper_bound(2, 2.0, 0.4), config_error);  // s*p <= p-1
}

TEST_CASE("ball upper bound stays finite in high dimension") {
  const double b = ball_upper_bound(10000, 3.0, std::sqrt(10000.0));
  CHECK(std::isfinite(b));
  CHECK(b > 0.0);
}

TEST_CASE("cube bounds orientation by exponent") {
  auto at3 = cube_bounds(2, 3.0);
  CHECK(at3.lower == doctest::Approx(std::pow(2.0, 1.0 / 3.0) * pi_p(3.0)));
  CHECK(at3.upper == doctest::Approx(std::sqrt(2.0) * pi_p(3.0)));
  CHECK(!at3.strict_lower);
  CHECK(at3.strict_upper);
  CHECK(at3.lower < at3.upper);

  auto at15 = cube_bounds(2, 1.5);
  CHECK(at15.lower == doctest::Approx(std::sqrt(2.0) * pi_p(1.5)));
  CHECK(at15.upper == doctest::Approx(std::pow(2.0, 1.0 / 1.5) * pi_p(1.5)));
  CHECK(at15.strict_lower);
  CHECK(!at15.strict_upper);

  auto at2 = cube_bounds(3, 2.0);
  CHECK(at2.lower == doctest::Approx(std::sqrt(3.0) * kPi).epsilon(1e-14));
  CHECK(at2.upper == at2.lower);
}

TEST_CASE("bound report status transitions") {
  BoundReport rep;
  rep.name = "demo";
  rep.lower = 1.0;
  rep.upper = 2.0;
  rep.margin = 0.1;
  rep.value = 1.5;
  CHECK(rep.evaluate().status == BoundStatus::Satisfied);
  rep.value = 1.05;
  CHECK(rep.evaluate().status == BoundStatus::Inconclusive);
  rep.value = 0.5;
  CHECK(rep.evaluate().status == BoundStatus::Failed);
  rep.value = 2.5;
  CHECK(rep.evaluate().status == BoundStatus::Failed);
  rep.value = std::numeric_limits<double>::quiet_NaN();
  CHECK(rep.evaluate().status == BoundStatus::Skipped);

  BoundReport strict;
  strict.lower = 1.0;
  strict.strict_lower = true;
  strict.value = 1.0;
  CHECK(strict.evaluate().status == BoundStatus::Failed);
  strict.strict_lower = false;
  CHECK(strict.evaluate().status == BoundStatus::Satisfied);
}

TEST_CASE("relative capacity closed forms against discrete minimizer") {
  // p = d = 2 is the logarithmic case
  CHECK(ball_capacity(2, 2.0, 0.5, 1.0) ==
        doctest::Approx(2.0 * kPi / std::log(2.0)).epsilon(1e-14));
  struct Case {
    int d;
    double p, r, R;
  } cases[] = {
      {2, 1.5, 0.01, 1.0}, {2, 2.0, 0.1, 2.0}, {3, 2.0, 0.2, 1.0},
      {3, 2.5, 0.05, 0.5}, {4, 3.0, 0.1, 1.0},
  };
  for (const auto& c : cases) {
    const double exact = ball_capacity(c.d, c.p, c.r, c.R);
    const double disc = capacity_oracle(c.d, c.p, c.r, c.R, 20000);
    CHECK(disc == doctest::Approx(exact).epsilon(1e-6));
    // the discrete minimum over a subspace can only overshoot
    CHECK(disc >= exact * (1.0 - 1e-12));
  }
  CHECK_THROWS_AS(ball_capacity(2, 2.5, 0.1, 1.0), config_error);  // p > d
  CHECK_THROWS_AS(ball_capacity(2, 2.0, 1.0, 0.5), config_error);
}

TEST_CASE("annulus one-dimensional eigenvalue lower bound") {
  CHECK(annulus_mu_lower_bound(2, 2.0, 0.1, 1.0) == 0.0);  // degenerate at p = d
  const double b = annulus_mu_lower_bound(2, 1.5, 0.001, 0.05);
  CHECK(b > 0.0);
  CHECK(std::isfinite(b));
  // shrinking the hole weakens the constraint
  CHECK(annulus_mu_lower_bound(2, 1.5, 0.0001, 0.05) < b);
}

TEST_CASE("critical ratio of hole size to cell size") {
  // r = eps^(d/(d-p)) is exactly critical
  CHECK(critical_ratio(2, 1.5, 0.1, std::pow(0.1, 4.0)) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(critical_ratio(2, 1.5, 0.1, 1e-3) ==
        doctest::Approx(100.0 * std::sqrt(1e-3)).epsilon(1e-12));
  // log-scaled variant at p = d
  CHECK(critical_ratio(2, 2.0, 0.1, 1e-3) ==
        doctest::Approx(100.0 / std::log(1000.0)).epsilon(1e-12));
  CHECK_THROWS_AS(critical_ratio(2, 2.5, 0.1, 1e-3), config_error);
}

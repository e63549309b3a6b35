#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "plap/errors.hpp"
#include "plap/exact.hpp"
#include "plap/experiments.hpp"

using namespace plap;

namespace {

double val(const SweepRecord& r, const char* key) { return r.values.at(key); }

}  // namespace

TEST_CASE("cylinder sweep stays inside the product estimate") {
  const std::vector<double> lengths{1.0, 2.0, 4.0, 8.0};
  for (double p : {1.5, 3.0}) {
    const auto recs = cylinder_sweep(p, lengths, {});
    REQUIRE(recs.size() == lengths.size());

    const double pip = pi_p(p);
    const double lam_w = std::pow(pip, p);
    double prev = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < recs.size(); ++i) {
      const auto& r = recs[i];
      CHECK(r.experiment == "cylinder");
      CHECK(r.params.at("L") == lengths[i]);
      CHECK(r.status != BoundStatus::Failed);
      CHECK(r.status != BoundStatus::Skipped);

      const double L = r.params.at("L");
      const double side_add = lam_w * (1.0 + std::pow(L, -p));
      const double side_quad = lam_w * std::pow(1.0 + 1.0 / (L * L), 0.5 * p);
      // the additive estimate is the lower side past p = 2 and the upper
      // side below it
      const double lo = p >= 2.0 ? side_add : side_quad;
      const double hi = p >= 2.0 ? side_quad : side_add;
      CHECK(val(r, "lower") == doctest::Approx(lo).epsilon(1e-12));
      CHECK(val(r, "upper") == doctest::Approx(hi).epsilon(1e-12));
      CHECK(lo < hi);

      const double lam = val(r, "lambda");
      const double err = val(r, "lambda_err");
      CHECK(lam >= lo - err);
      CHECK(lam <= hi + err);
      CHECK(lam < prev);  // longer cylinders relax the eigenvalue
      prev = lam;
    }
  }
}

TEST_CASE("cylinder sweep collapses onto the membrane value at p = 2") {
  const auto recs = cylinder_sweep(2.0, {1.0, 2.0, 4.0}, {});
  for (const auto& r : recs) {
    const double L = r.params.at("L");
    const double pinned =
        std::numbers::pi * std::numbers::pi * (1.0 + 1.0 / (L * L));
    // both sides of the estimate coincide here
    CHECK(val(r, "lower") == doctest::Approx(pinned).epsilon(1e-12));
    CHECK(val(r, "upper") == doctest::Approx(pinned).epsilon(1e-12));
    CHECK(val(r, "lambda") == doctest::Approx(pinned).epsilon(1e-2));
    CHECK(r.status != BoundStatus::Failed);
  }
}

TEST_CASE("perforation sweep: holes at the critical size push the cell value") {
  std::vector<std::pair<double, double>> sc;
  for (double e : {0.2, 0.1, 0.05}) sc.emplace_back(e, e * e * e);
  const auto recs = perforation_sweep(1.5, sc, {});
  REQUIRE(recs.size() == 3);

  // rows come back sorted by (eps, r)
  CHECK(recs[0].params.at("eps") == 0.05);
  CHECK(recs[1].params.at("eps") == 0.1);
  CHECK(recs[2].params.at("eps") == 0.2);

  CHECK(val(recs[0], "mu") == doctest::Approx(8.979988).epsilon(5e-4));
  CHECK(val(recs[1], "mu") == doctest::Approx(6.425719).epsilon(5e-4));
  CHECK(val(recs[2], "mu") == doctest::Approx(4.764218).epsilon(5e-4));
  CHECK(val(recs[0], "mu") / val(recs[2], "mu") ==
        doctest::Approx(1.8849).epsilon(5e-3));

  double prev_a = std::numeric_limits<double>::infinity();
  for (const auto& r : recs) {
    CHECK(r.status == BoundStatus::Satisfied);
    CHECK(val(r, "mu") >= val(r, "mu_bound"));
    CHECK(val(r, "a_eps") > 1.0);   // super-critical scaling
    CHECK(val(r, "a_eps") < prev_a);  // grows as eps shrinks
    prev_a = val(r, "a_eps");

    CHECK(val(r, "fem") == 1.0);
    const double margin =
        val(r, "lambda_perforated_err") + val(r, "lambda_square_err");
    CHECK(val(r, "lambda_perforated") > val(r, "lambda_square") + margin);
  }

  // cells of half-width eps tile with period 2*eps, so the counts jump
  CHECK(val(recs[0], "n_holes") == 81.0);
  CHECK(val(recs[1], "n_holes") == 9.0);
  CHECK(val(recs[2], "n_holes") == 1.0);
}

TEST_CASE("perforation sweep: sub-critical holes fade out") {
  std::vector<std::pair<double, double>> sc;
  for (double e : {0.2, 0.1}) sc.emplace_back(e, std::pow(e, 5));
  const auto recs = perforation_sweep(1.5, sc, {});
  REQUIRE(recs.size() == 2);

  for (const auto& r : recs) {
    CHECK(r.status == BoundStatus::Satisfied);
    CHECK(val(r, "a_eps") < 1.0);
    // the planar branch is gated off below r = eps^3
    CHECK(val(r, "fem") == 0.0);
    CHECK(std::isnan(val(r, "lambda_perforated")));
    CHECK(std::isnan(val(r, "lambda_perforated_err")));
    CHECK(val(r, "mu") >= val(r, "mu_bound"));
    CHECK(val(r, "capacity_total") > 0.0);
    CHECK(std::isfinite(val(r, "capacity_total")));
  }
  // eps = 0.1 sits first after sorting; both the scaling ratio and the
  // cell value shrink along the family
  CHECK(val(recs[0], "a_eps") < val(recs[1], "a_eps"));
  CHECK(val(recs[0], "mu") < val(recs[1], "mu"));
}

TEST_CASE("ball sweep: the scale ratio decays toward q/p") {
  const auto recs = ball_dimension_sweep(2.0, 1.0, {2, 8, 32, 128, 1024}, {});
  REQUIRE(recs.size() == 5);

  double prev = std::numeric_limits<double>::infinity();
  for (const auto& r : recs) {
    CHECK(r.experiment == "ball_dimension");
    CHECK(r.status == BoundStatus::Satisfied);
    const double f = val(r, "ratio");
    CHECK(f > 0.5);  // q/p
    CHECK(f < prev);
    prev = f;
    CHECK(val(r, "lambda_p") <= val(r, "upper_bound_lambda"));
    CHECK(val(r, "lambda_q_scale") == r.params.at("d"));  // Cheeger leg, exact
  }

  CHECK(val(recs[0], "ratio") == doctest::Approx(1.202413).epsilon(1e-4));
  CHECK(val(recs.back(), "p_ratio") < 1.03);
  CHECK(val(recs.back(), "p_ratio") > 1.0);

  // high dimensions drop to the two-level ladder
  CHECK(val(recs[3], "levels") == 3.0);
  CHECK(val(recs[4], "levels") == 2.0);
}

TEST_CASE("worker pool does not change sweep output") {
  const auto seq = cylinder_sweep(1.5, {1.0, 2.0, 3.0, 4.0}, {}, 1);
  const auto par = cylinder_sweep(1.5, {1.0, 2.0, 3.0, 4.0}, {}, 3);
  REQUIRE(par.size() == seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) {
    CHECK(par[i].params == seq[i].params);
    CHECK(par[i].status == seq[i].status);
    for (const auto& [k, v] : seq[i].values) {
      const double w = par[i].values.at(k);
      if (std::isnan(v)) CHECK(std::isnan(w));
      else CHECK(w == v);  // bit-identical, independent solves
    }
  }
}

TEST_CASE("sweep input validation") {
  SolverConfig tiny;
  tiny.levels = 2;
  tiny.radial_n = 512;

  CHECK_THROWS_AS(cylinder_sweep(1.05, {1.0}, {}), config_error);
  CHECK_THROWS_AS(cylinder_sweep(17.0, {1.0}, {}), config_error);
  CHECK_THROWS_AS(cylinder_sweep(2.0, {0.0}, {}), config_error);

  CHECK_THROWS_AS(perforation_sweep(1.0, {{0.2, 1e-3}}, {}), config_error);
  CHECK_THROWS_AS(perforation_sweep(2.5, {{0.2, 1e-3}}, {}), config_error);
  CHECK_THROWS_AS(perforation_sweep(1.5, {{0.2, 0.1}}, {}), config_error);

  CHECK_THROWS_AS(ball_dimension_sweep(1.0, 1.0, {2}, tiny), config_error);
  CHECK_THROWS_AS(ball_dimension_sweep(2.0, 2.0, {2}, tiny), config_error);
  CHECK_THROWS_AS(ball_dimension_sweep(2.0, 1.0, {0}, tiny), config_error);
  CHECK_THROWS_AS(ball_dimension_sweep(2.0, 1.0, {10001}, tiny), config_error);

  // duplicates collapse and dimensions come back ordered
  const auto recs = ball_dimension_sweep(2.0, 1.0, {8, 2, 8}, tiny);
  REQUIRE(recs.size() == 2);
  CHECK(recs[0].params.at("d") == 2.0);
  CHECK(recs[1].params.at("d") == 8.0);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "plap/errors.hpp"
#include "plap/shapeopt.hpp"

using namespace plap;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kJ01 = 2.404825557695773;
constexpr double kSquareRatio21 = 1.1786;  // sqrt(2) pi / (2 + sqrt(pi))

OptimizeConfig base_config() {
  OptimizeConfig cfg;
  cfg.p = Exponent::finite(2.0);
  cfg.q = Exponent::one();
  cfg.n_vertices = 8;
  cfg.budget = 120;
  cfg.seed = 42;
  return cfg;
}

}  // namespace

TEST_CASE("minimization never ends worse than the square start") {
  const ShapeState st = optimize_shape(base_config());
  CHECK(st.value.ratio <= kSquareRatio21 + 0.01);
  CHECK_FALSE(st.exploratory);
  CHECK_FALSE(st.aspect_capped);
  CHECK(area(st.polygon) == doctest::Approx(1.0).epsilon(1e-9));

  // the returned value is the best accepted value anywhere in the history
  double best = st.history.front().value;
  for (const auto& e : st.history) best = std::min(best, e.value);
  CHECK(st.value.ratio == best);

  // within one restart accepted values fall strictly
  for (std::size_t i = 1; i < st.history.size(); ++i)
    if (st.history[i].restart == st.history[i - 1].restart)
      CHECK(st.history[i].value < st.history[i - 1].value);

  // every accepted iterate obeys the planar sandwich, with screening slack
  for (const auto& e : st.history) {
    CHECK(e.value > 0.25 * kPi - 0.01);
    CHECK(e.value < 0.5 * kPi + 0.01);
  }
}

TEST_CASE("identical seeds reproduce the identical run") {
  const OptimizeConfig cfg = base_config();
  const ShapeState a = optimize_shape(cfg);
  const ShapeState b = optimize_shape(cfg);
  CHECK(a.value.ratio == b.value.ratio);
  CHECK(a.evaluations == b.evaluations);
  REQUIRE(a.history.size() == b.history.size());
  for (std::size_t i = 0; i < a.history.size(); ++i) {
    CHECK(a.history[i].iteration == b.history[i].iteration);
    CHECK(a.history[i].value == b.history[i].value);
    CHECK(a.history[i].diameter == b.history[i].diameter);
    CHECK(a.history[i].restart == b.history[i].restart);
  }
}

TEST_CASE("inradius-to-frequency ratio is minimized by the disc") {
  OptimizeConfig cfg;
  cfg.p = Exponent::infinity();
  cfg.q = Exponent::finite(2.0);
  cfg.n_vertices = 32;
  cfg.budget = 240;
  cfg.seed = 7;
  const ShapeState st = optimize_shape(cfg);
  CHECK(std::abs(st.value.ratio * kJ01 - 1.0) < 0.01);
}

TEST_CASE("maximization escapes toward slabs and stops on the cap") {
  OptimizeConfig cfg = base_config();
  cfg.direction = OptimizeDirection::Maximize;
  cfg.budget = 400;
  cfg.seed = 3;
  cfg.aspect_cap = 12.0;
  const ShapeState st = optimize_shape(cfg);
  CHECK(st.exploratory);
  CHECK(st.aspect_capped);
  // the supremum pi/2 is approached but never crossed
  CHECK(st.value.ratio < 0.5 * kPi + st.value.error_indicator);
  CHECK(st.value.ratio > kSquareRatio21);

  const EscapeReport rep = diameter_escape_monitor(st);
  REQUIRE(rep.trend == DiameterTrend::Escaping);
  CHECK(rep.late_median > 1.5 * rep.early_median);
  CHECK(rep.summary.find("trend upward") != std::string::npos);
}

TEST_CASE("monitor needs a populated history") {
  ShapeState st;
  st.history.push_back({0, 1.0, 1.4, 0});
  const EscapeReport rep = diameter_escape_monitor(st);
  CHECK(rep.trend == DiameterTrend::InsufficientData);
  CHECK(rep.summary.find("insufficient data") != std::string::npos);
}

TEST_CASE("the square probes as a local minimum at (2,1)") {
  const OptimizeConfig defaults;
  const LocalMinProbe probe =
      local_min_probe(rectangle_polygon(1.0, 1.0), Exponent::finite(2.0),
                      Exponent::one(), 200, 11, defaults.screen,
                      defaults.confirm);
  CHECK(probe.local_min);
  CHECK(probe.confirmed_improvements == 0);
  CHECK(probe.start_value == doctest::Approx(kSquareRatio21).epsilon(5e-3));
  CHECK(probe.best_value >= probe.start_value -
                                (probe.margin + probe.start_value * 1e-2));
}

TEST_CASE("exploratory pairs are flagged") {
  OptimizeConfig cfg = base_config();
  cfg.p = Exponent::finite(3.0);
  cfg.q = Exponent::finite(2.5);
  cfg.n_vertices = 4;
  cfg.budget = 3;
  const ShapeState st = optimize_shape(cfg);
  CHECK(st.exploratory);
}

TEST_CASE("configuration is validated") {
  OptimizeConfig cfg = base_config();
  cfg.n_vertices = 2;
  CHECK_THROWS_AS(optimize_shape(cfg), config_error);
  cfg = base_config();
  cfg.n_vertices = 65;
  CHECK_THROWS_AS(optimize_shape(cfg), config_error);
  cfg = base_config();
  cfg.q = cfg.p;
  CHECK_THROWS_AS(optimize_shape(cfg), config_error);
  cfg = base_config();
  cfg.budget = 0;
  CHECK_THROWS_AS(optimize_shape(cfg), config_error);
  const OptimizeConfig defaults;
  CHECK_THROWS_AS(local_min_probe(rectangle_polygon(1.0, 1.0),
                                  Exponent::finite(2.0), Exponent::one(), 0, 1,
                                  defaults.screen, defaults.confirm),
                  config_error);
}

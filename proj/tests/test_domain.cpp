#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "plap/domain.hpp"

using namespace plap;

TEST_CASE("domain constructors validate") {
  CHECK_THROWS_AS(make_rectangle(0.0, 1.0), config_error);
  CHECK_THROWS_AS(make_ball(0, 1.0), config_error);
  CHECK_THROWS_AS(make_ball(2, -1.0), config_error);
  CHECK_THROWS_AS(make_annulus(2, 0.5, 0.5), config_error);
  CHECK_THROWS_AS(make_perforated_square(1.0, 0.6, 0.01), config_error);
  CHECK_THROWS_AS(make_perforated_square(1.0, 0.1, 0.06), config_error);  // r > eps/2
  CHECK_THROWS_AS(make_perforated_square(1.0, 0.1, 0.0), config_error);
  CHECK(domain_name(Domain(make_ball(3, 1.0))).find("ball") != std::string::npos);
}

TEST_CASE("perforation lattice counts") {
  CHECK(perforation_centers({1.0, 0.25, 0.01}).size() == 1);
  CHECK(perforation_centers({1.0, 0.125, 0.01}).size() == 9);
  CHECK(perforation_centers({1.0, 0.0625, 0.01}).size() == 49);
  CHECK(perforation_centers({1.0, 0.05, 0.01}).size() == 81);
  CHECK(perforation_centers({2.0, 0.25, 0.01}).size() == 9);  // scales with side
}

TEST_CASE("perforation lattice layout") {
  auto cs = perforation_centers({1.0, 0.25, 0.01});
  REQUIRE(cs.size() == 1);
  CHECK(cs[0].x() == doctest::Approx(0.5));
  CHECK(cs[0].y() == doctest::Approx(0.5));

  auto grid = perforation_centers({1.0, 0.125, 0.01});
  // row-major: y grows slowest, x fastest
  for (std::size_t k = 1; k < grid.size(); ++k) {
    CHECK((grid[k].y() > grid[k - 1].y() ||
           (grid[k].y() == grid[k - 1].y() && grid[k].x() > grid[k - 1].x())));
  }
  for (const auto& c : grid) {
    // every unit cell sits strictly inside the square
    CHECK(c.x() - 0.125 >= 0.0);
    CHECK(c.x() + 0.125 <= 1.0);
  }
}

TEST_CASE("inradius of singly perforated square") {
  // disc pinned in a corner, tangent to two walls and the central hole
  const double r = 0.05;
  auto d = make_perforated_square(1.0, 0.25, r);
  const double expected = (std::sqrt(2.0) * 0.5 - r) / (1.0 + std::sqrt(2.0));
  CHECK(perforated_inradius(d) == doctest::Approx(expected).epsilon(1e-6));
}

TEST_CASE("inradius of 3x3 perforated square") {
  // optimum sits between four holes: sqrt(2)*eps - r
  const double eps = 0.125, r = 0.03;
  auto d = make_perforated_square(1.0, eps, r);
  const double expected = std::sqrt(2.0) * eps - r;
  CHECK(perforated_inradius(d) == doctest::Approx(expected).epsilon(1e-6));
}

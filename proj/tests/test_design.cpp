#include <doctest.h>

#include <stdexcept>

#include "tsopt/design.hpp"

using namespace tsopt;

TEST_CASE("grid snapping") {
  const DesignGrid grid({{0.0, -1.0}, {1.0, 1.0}}, {0.1, 0.25});
  CHECK(grid.count(0) == 11);
  CHECK(grid.count(1) == 9);
  CHECK(grid.snap(0, 0.34) == doctest::Approx(0.3));
  CHECK(grid.snap(0, 0.36) == doctest::Approx(0.4));
  CHECK(grid.snap(0, 0.35) == doctest::Approx(0.4));
  CHECK(grid.snap(1, -0.875) == doctest::Approx(-0.75));
  CHECK(grid.snap(0, -3.0) == 0.0);
  CHECK(grid.snap(0, 7.0) == doctest::Approx(1.0));
  const auto p = grid.snap(std::vector<double>{0.52, 0.1});
  CHECK(p[0] == doctest::Approx(0.5));
  CHECK(p[1] == doctest::Approx(0.0));
}

TEST_CASE("grid truncated at the upper bound") {
  const DesignGrid grid({{0.0}, {1.05}}, {0.1});
  CHECK(grid.count(0) == 11);
  CHECK(grid.snap(0, 1.05) == doctest::Approx(1.0));
}

TEST_CASE("alignment") {
  const DesignGrid grid({{0.1, 0.1}, {5.0, 5.0}}, {0.001, 0.001});
  CHECK(grid.is_aligned(std::vector<double>{0.761, 4.95}));
  CHECK_FALSE(grid.is_aligned(std::vector<double>{0.7615, 1.0}));
  CHECK_FALSE(grid.is_aligned(std::vector<double>{6.0, 1.0}));
  CHECK_FALSE(grid.is_aligned(std::vector<double>{1.0}));
}

TEST_CASE("same point") {
  const DesignGrid grid({{0.0, 0.0}, {1.0, 1.0}}, {0.1, 0.1});
  CHECK(grid.same_point(std::vector<double>{0.3, 0.5}, std::vector<double>{0.3 + 1e-12, 0.5}));
  CHECK(grid.same_point(std::vector<double>{0.3, 0.5}, std::vector<double>{0.34, 0.46}));
  CHECK_FALSE(grid.same_point(std::vector<double>{0.3, 0.5}, std::vector<double>{0.4, 0.5}));
}

TEST_CASE("bounds containment") {
  const Bounds b{{0.0, 0.0}, {1.0, 2.0}};
  CHECK(b.contains(std::vector<double>{1.0, 2.0}));
  CHECK_FALSE(b.contains(std::vector<double>{1.0, 2.1}));
  CHECK_FALSE(b.contains(std::vector<double>{0.5}));
}

TEST_CASE("invalid grids") {
  CHECK_THROWS_AS(DesignGrid({{0.0}, {1.0}}, {0.1, 0.1}), std::invalid_argument);
  CHECK_THROWS_AS(DesignGrid({{1.0}, {1.0}}, {0.1}), std::invalid_argument);
  CHECK_THROWS_AS(DesignGrid({{0.0}, {1.0}}, {0.0}), std::invalid_argument);
}

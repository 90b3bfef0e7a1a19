#include <doctest.h>

#include "tsopt/neighborhood.hpp"

using namespace tsopt;

namespace {

const DesignGrid kSquare({{0.0, 0.0}, {10.0, 10.0}}, {1.0, 1.0});

CandidateMove candidate(double x, double value, bool feasible = true) { return {{x, 0.0}, value, feasible}; }

}  // namespace

TEST_CASE("coordinate neighbourhood order") {
  const std::vector<double> step{1.0, 1.0};
  const auto n = generate_neighborhood(std::vector<double>{5.0, 5.0}, step, kSquare);
  REQUIRE(n.size() == 4);
  CHECK(n[0] == DesignVector{6.0, 5.0});
  CHECK(n[1] == DesignVector{4.0, 5.0});
  CHECK(n[2] == DesignVector{5.0, 6.0});
  CHECK(n[3] == DesignVector{5.0, 4.0});
}

TEST_CASE("moves that collapse onto the base are dropped") {
  const std::vector<double> step{1.0, 1.0};
  const auto n = generate_neighborhood(std::vector<double>{0.0, 5.0}, step, kSquare);
  REQUIRE(n.size() == 3);
  CHECK(n[0] == DesignVector{1.0, 5.0});
  CHECK(n[1] == DesignVector{0.0, 6.0});
}

TEST_CASE("moves are clipped to the bounds") {
  const std::vector<double> step{3.0, 3.0};
  const auto n = generate_neighborhood(std::vector<double>{9.0, 5.0}, step, kSquare);
  CHECK(n[0] == DesignVector{10.0, 5.0});
}

TEST_CASE("ten variables give twenty candidates") {
  const DesignGrid grid({std::vector<double>(10, 0.0), std::vector<double>(10, 1.0)}, std::vector<double>(10, 0.01));
  const std::vector<double> base(10, 0.5);
  const std::vector<double> step(10, 0.1);
  CHECK(generate_neighborhood(base, step, grid).size() == 20);
}

TEST_CASE("best feasible non-tabu move") {
  const TabuList empty(7, {1.0, 1.0});
  const std::vector<CandidateMove> c{candidate(1, 5), candidate(2, 3), candidate(3, 9)};
  CHECK(select_move(c, empty, 0.0) == 1u);

  const std::vector<CandidateMove> ties{candidate(1, 3), candidate(2, 3)};
  CHECK(select_move(ties, empty, 0.0) == 0u);

  const std::vector<CandidateMove> infeasible{candidate(1, 1, false), candidate(2, 4)};
  CHECK(select_move(infeasible, empty, 0.0) == 1u);

  const std::vector<CandidateMove> none{candidate(1, 1, false)};
  CHECK_FALSE(select_move(none, empty, 0.0).has_value());
}

TEST_CASE("tabu exclusion and aspiration") {
  TabuList tabu(7, {1.0, 1.0});
  tabu.push({2.0, 0.0});
  const std::vector<CandidateMove> c{candidate(1, 5), candidate(2, 3), candidate(3, 9)};
  CHECK(select_move(c, tabu, 4.0) == 1u);
  CHECK(select_move(c, tabu, 3.0) == 0u);
  CHECK(select_move(c, tabu, 3.5) == 1u);

  const std::vector<CandidateMove> only_tabu{candidate(2, 3)};
  CHECK_FALSE(select_move(only_tabu, tabu, 1.0).has_value());
}

TEST_CASE("pattern move") {
  const auto p = pattern_move(std::vector<double>{1.0, 1.0}, std::vector<double>{1.5, 1.0}, 2.0,
                              DesignGrid({{0.0, 0.0}, {10.0, 10.0}}, {0.5, 0.5}));
  CHECK(p == DesignVector{2.0, 1.0});

  const auto same = pattern_move(std::vector<double>{1.0, 1.0}, std::vector<double>{1.5, 1.0}, 1.0,
                                 DesignGrid({{0.0, 0.0}, {10.0, 10.0}}, {0.5, 0.5}));
  CHECK(same == DesignVector{1.5, 1.0});

  const DesignGrid tight({{0.0}, {1.05}}, {0.05});
  const auto clipped = pattern_move(std::vector<double>{0.9}, std::vector<double>{1.0}, 2.0, tight);
  CHECK(clipped[0] == doctest::Approx(1.05));
}

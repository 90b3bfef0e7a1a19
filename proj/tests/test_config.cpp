#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <string>

#include "tsopt/config.hpp"

using namespace tsopt;

namespace {

std::string minimal(const std::string& search = R"("min_step": 0.05)", const std::string& objective_extra = "") {
  return R"({
  "problem": {"model": "standard_ten_bar", "unit_system": "imperial", "length": 360, "youngs_modulus": 1e7,
              "density": 0.1, "load": 1e5},
  "objective": {"kind": "mass", "sigma_max": 25000, "delta_max": 2, "a_min": 0.1, "a_max": 33.5)" +
         objective_extra + R"(},
  "search": {)" + search + R"(}
})";
}

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("shipped steel ten-bar config") {
  const auto cfg = load_config(std::filesystem::path(TSOPT_CONFIG_DIR) / "bland.json");
  CHECK(cfg.units == UnitSystem::metric);
  CHECK(cfg.model.members.size() == 10);
  CHECK(cfg.model.member_length(0) == doctest::Approx(3.0));
  CHECK(cfg.model.youngs_modulus == 2.07e8);
  CHECK(cfg.model.density == 7850.0);
  CHECK(cfg.model.loads.at(0).fy == -500.0);
  CHECK(cfg.objective.constraints.sigma_max == 1.6e5);
  CHECK(cfg.objective.constraints.delta_max == 0.015);
  CHECK(cfg.objective.constraints.a_min == 0.168);
  CHECK(cfg.objective.area_unit_scale == 0.01);
  CHECK(cfg.start == DesignVector(10, 0.761));
  CHECK(cfg.search.max_evaluations == 20000);
  CHECK(cfg.model.dynamic_mass_factor == 1e-3);
}

TEST_CASE("shipped aluminium ten-bar config") {
  const auto cfg = load_config(std::filesystem::path(TSOPT_CONFIG_DIR) / "bd.json");
  CHECK(cfg.units == UnitSystem::imperial);
  CHECK(cfg.model.member_length(0) == doctest::Approx(360.0));
  CHECK(cfg.model.youngs_modulus == 1e7);
  CHECK(cfg.objective.constraints.sigma_max == 25000.0);
  CHECK(cfg.objective.constraints.delta_max == 2.0);
  CHECK(cfg.objective.constraints.a_max == 33.5);
  CHECK(cfg.objective.kind == ObjectiveKind::compound);
  CHECK(cfg.compound_start == CompoundStart::best_single_objective);
  CHECK(cfg.model.dynamic_mass_factor == doctest::Approx(1.0 / 386.0886));
}

TEST_CASE("defaults are applied and echoed") {
  const auto cfg = parse_config(minimal());
  CHECK(cfg.search.tabu_size == 7);
  CHECK(cfg.search.diversify_radius == 2);
  CHECK(cfg.search.restart_on_convergence);
  const auto& d = cfg.defaults_applied;
  CHECK(std::find(d.begin(), d.end(), "search.tabu_size") != d.end());
  CHECK(std::find(d.begin(), d.end(), "search.start") != d.end());
  CHECK(cfg.resolved["search"]["tabu_size"] == 7);
  CHECK(cfg.start == DesignVector(10, 33.5));
  REQUIRE(cfg.search.initial_step.size() == 10);
  CHECK(cfg.search.initial_step[0] == doctest::Approx(3.30));
}

TEST_CASE("unknown keys are rejected") {
  CHECK(contains(error_of(minimal(R"("min_step": 0.05, "tabu_length": 5)")), "search.tabu_length"));
  CHECK(contains(error_of(R"({"problem": {}, "objective": {}, "extra": 1})"), "extra"));
}

TEST_CASE("syntax errors carry line and column") {
  const auto msg = error_of("{\n  \"name\": \"x\",\n  \"problem\": {,\n}");
  CHECK(contains(msg, "line 3"));
  CHECK(contains(msg, "column"));
}

TEST_CASE("schema violations name the key") {
  CHECK(contains(error_of(minimal(R"("tabu_size": 7)")), "search.min_step"));
  CHECK(contains(error_of(minimal(R"("min_step": 0.05, "tabu_size": "seven")")), "search.tabu_size"));
  CHECK(contains(error_of(minimal(R"("min_step": 0.05, "start": 40)")), "search.start"));
  CHECK(contains(error_of(minimal(R"("min_step": 0.05, "initial_step": 0.07)")), "initial_step"));
  CHECK(contains(error_of(minimal(R"("min_step": 0.05)", R"(, "displacement_limit": "max")")),
                 "displacement_limit"));
  CHECK_FALSE(error_of(minimal(R"("min_step": 0.05)", R"(, "displacement_limit": "resultant")")).size() > 0);
}

TEST_CASE("compound start validation") {
  CHECK(contains(error_of(minimal(R"("min_step": 0.05)", R"(, "compound_start": "best_single_objective")")),
                 "compound_start"));
  CHECK(contains(error_of(minimal(R"("min_step": 0.05)", R"(, "compound_start": "midpoint")")), "compound_start"));
  const std::string with_norm = R"(, "normalization": {"mass": {"best": 5000, "worst": 13000},
      "neg_frequency": {"best": -185, "worst": -100}, "displacement": {"best": 3, "worst": 7}},
      "compound_start": "best_single_objective")";
  auto text = minimal(R"("min_step": 0.05)", with_norm);
  text.replace(text.find("\"mass\""), 6, "\"compound\"");
  CHECK(contains(error_of(text), "compound_start"));
}

TEST_CASE("normalization block") {
  auto text = minimal(R"("min_step": 0.05)", R"(, "normalization": {"mass": {"best": 5000, "worst": 5000},
      "neg_frequency": {"best": -185, "worst": -100}, "displacement": {"best": 3, "worst": 7}})");
  CHECK(contains(error_of(text), "normalization"));
}

TEST_CASE("custom model with one-based indices") {
  const auto cfg = parse_config(R"({
  "problem": {"model": "custom", "unit_system": "metric", "youngs_modulus": 1.0, "density": 1.0,
              "nodes": [[0, 0], [1, 0], [0, 1]], "members": [[1, 2], [3, 2]], "supports": [1, 3],
              "loads": [{"node": 2, "fy": -1.0}]},
  "objective": {"kind": "displacement", "sigma_max": 10, "delta_max": 10, "a_min": 0.5, "a_max": 2},
  "search": {"min_step": 0.5, "start": 1.0}
})");
  REQUIRE(cfg.model.members.size() == 2);
  CHECK(cfg.model.members[0].start == 0);
  CHECK(cfg.model.members[0].end == 1);
  CHECK(cfg.model.members[1].start == 2);
  CHECK(cfg.model.supports == std::vector<std::size_t>{0, 2});
  CHECK(cfg.model.loads.at(0).node == 1);
  CHECK(cfg.start == DesignVector{1.0, 1.0});

  CHECK(contains(error_of(R"({
  "problem": {"model": "custom", "unit_system": "metric", "youngs_modulus": 1.0, "density": 1.0,
              "nodes": [[0, 0], [1, 0]], "members": [[1, 3]], "supports": [1], "loads": []},
  "objective": {"kind": "mass", "sigma_max": 10, "delta_max": 10, "a_min": 0.5, "a_max": 2},
  "search": {"min_step": 0.5}
})"),
                 "problem.members"));
}

TEST_CASE("overrides keep the hash in step") {
  auto cfg = parse_config(minimal());
  const auto h0 = cfg.hash();
  CHECK(parse_config(minimal()).hash() == h0);
  override_seed(cfg, 17);
  CHECK(cfg.search.rng_seed == 17);
  CHECK(cfg.hash() != h0);
  const auto h1 = cfg.hash();
  override_max_evaluations(cfg, 100);
  CHECK(cfg.search.max_evaluations == 100);
  CHECK(cfg.hash() != h1);
  CHECK_THROWS_AS(override_max_evaluations(cfg, 0), ConfigError);
}

TEST_CASE("missing file") {
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

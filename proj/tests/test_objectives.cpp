#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <random>

#include "tsopt/config.hpp"
#include "tsopt/objectives.hpp"

using namespace tsopt;

namespace {

const DesignVector kSteelOptimum{1.022, 0.168, 0.601, 0.341, 0.168, 0.168, 0.361, 0.679, 0.361, 0.168};
const DesignVector kAluminiumReference{33.4896, 1.4392, 33.4996, 11.1137, 1.3353, 0.1002, 32.8076, 33.4843, 13.2201, 1.9814};

RunConfig steel() { return load_config(std::filesystem::path(TSOPT_CONFIG_DIR) / "bland.json"); }
RunConfig aluminium() { return load_config(std::filesystem::path(TSOPT_CONFIG_DIR) / "bd.json"); }

// Ranges chosen so f = (6, -8, 1) gives factors (0.5, 0.8, 0.9).
NormalizationConstants unit_ranges() {
  NormalizationConstants n;
  n.mass = {1.0, 11.0};
  n.neg_frequency = {-10.0, 0.0};
  n.displacement = {0.0, 10.0};
  return n;
}

}  // namespace

TEST_CASE("steel ten-bar start is feasible") {
  const auto cfg = steel();
  const auto e = evaluate(cfg.objective, cfg.model, cfg.start);
  CHECK(e.feasible);
  CHECK(e.violations.empty());
  CHECK(e.value == doctest::Approx(2089.2).epsilon(1e-4));
}

TEST_CASE("steel ten-bar optimum areas") {
  const auto cfg = steel();
  const auto e = evaluate(cfg.objective, cfg.model, kSteelOptimum);
  CHECK(e.feasible);
  CHECK(e.value == doctest::Approx(1103.8).epsilon(0.5 / 1103.8));
}

TEST_CASE("out-of-bounds area names the variable") {
  const auto cfg = steel();
  auto a = cfg.start;
  a[2] = 5.0;
  try {
    evaluate(cfg.objective, cfg.model, a);
    FAIL("no exception");
  } catch (const std::out_of_range& e) {
    CHECK(std::string(e.what()).find("A3") != std::string::npos);
  }
  a[2] = 0.1;
  CHECK_THROWS_AS(evaluate(cfg.objective, cfg.model, a), std::out_of_range);
}

TEST_CASE("stress just above the limit is reported against its member") {
  auto cfg = steel();
  cfg.objective.constraints.delta_max = 1.0;
  const auto base = evaluate(cfg.objective, cfg.model, kSteelOptimum);
  const auto& s = base.analysis.stresses;
  const auto worst = static_cast<std::size_t>(
      std::max_element(s.begin(), s.end(), [](double x, double y) { return std::abs(x) < std::abs(y); }) - s.begin());
  const double peak = std::abs(s[worst]);

  cfg.objective.constraints.sigma_max = peak / 1.001;
  const auto over = evaluate(cfg.objective, cfg.model, kSteelOptimum);
  CHECK_FALSE(over.feasible);
  REQUIRE(over.violations.size() >= 1);
  const auto hit = std::find_if(over.violations.begin(), over.violations.end(),
                                [&](const Violation& v) { return v.index == worst; });
  REQUIRE(hit != over.violations.end());
  CHECK(hit->kind == Violation::Kind::stress);
  CHECK(hit->excess() == doctest::Approx(0.001).epsilon(1e-6));
  CHECK(hit->describe().find("member " + std::to_string(worst + 1)) != std::string::npos);

  cfg.objective.constraints.sigma_max = peak * 1.001;
  CHECK(evaluate(cfg.objective, cfg.model, kSteelOptimum).feasible);
}

TEST_CASE("reference aluminium design breaks the displacement limit") {
  auto cfg = aluminium();
  cfg.objective.kind = ObjectiveKind::mass;
  const auto e = evaluate(cfg.objective, cfg.model, kAluminiumReference);
  CHECK_FALSE(e.feasible);
  CHECK(e.value == doctest::Approx(7064.16).epsilon(1e-3));
  for (const auto& v : e.violations) CHECK(v.kind == Violation::Kind::displacement);
}

TEST_CASE("raw objective triple") {
  auto cfg = aluminium();
  cfg.objective.kind = ObjectiveKind::neg_frequency;
  const auto e = evaluate(cfg.objective, cfg.model, kAluminiumReference);
  CHECK(e.value == -e.analysis.omega1);
  CHECK(e.raw[0] == e.analysis.mass);
  CHECK(e.raw[2] == e.analysis.total_displacement);
}

TEST_CASE("compound score") {
  const auto n = unit_ranges();
  CHECK(compound_objective({11.0, -8.0, 1.0}, n) == 0.0);
  CHECK(compound_objective({1.0, -10.0, 0.0}, n) == doctest::Approx(1.0));
  CHECK(compound_objective({6.0, -8.0, 1.0}, n) == doctest::Approx(0.36));
  CHECK(compound_objective({-5.0, -20.0, -3.0}, n) == doctest::Approx(1.0));
  CHECK(compound_objective({50.0, -8.0, 1.0}, n) == 0.0);
  CHECK(compound_objective({6.0, -8.0, 1.0}, n, CompoundForm::raw) == doctest::Approx(5.0 * 8.0 * 9.0));

  auto degenerate = n;
  degenerate.displacement = {2.0, 2.0};
  CHECK_THROWS_AS(compound_objective({6.0, -8.0, 1.0}, degenerate), std::invalid_argument);
}

TEST_CASE("compound score is monotone in each objective") {
  const auto n = unit_ranges();
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    ObjectiveValues f{1.0 + 10.0 * u(rng), -10.0 * u(rng), 10.0 * u(rng)};
    const double before = compound_objective(f, n);
    CHECK(before >= 0.0);
    CHECK(before <= 1.0);
    const auto i = static_cast<std::size_t>(trial % 3);
    f[i] -= 0.5 * u(rng) * (n[i].worst - n[i].best);
    CHECK(compound_objective(f, n) >= before);
  }
}

TEST_CASE("argmax survives raising every factor to a power") {
  auto cfg = aluminium();
  cfg.objective.kind = ObjectiveKind::mass;
  NormalizationConstants n;
  n.mass = {5068.54, 12855.77};
  n.neg_frequency = {-182.135, -108.80};
  n.displacement = {3.4938, 6.5284};

  auto factors = [&](const ObjectiveValues& f) {
    std::array<double, 3> out{};
    for (std::size_t i = 0; i < 3; ++i) out[i] = std::clamp((n[i].worst - f[i]) / (n[i].worst - n[i].best), 0.0, 1.0);
    return out;
  };

  // Vary the two largest members on a coarse lattice, the rest held at a mid design.
  DesignVector design{30.0, 1.5, 25.0, 10.0, 1.5, 1.5, 20.0, 25.0, 15.0, 2.0};
  double best_plain = -1.0;
  double best_cubed = -1.0;
  DesignVector arg_plain, arg_cubed;
  for (double a1 = 10.0; a1 <= 33.5; a1 += 2.5) {
    for (double a3 = 10.0; a3 <= 33.5; a3 += 2.5) {
      design[0] = a1;
      design[2] = a3;
      const auto f = evaluate(cfg.objective, cfg.model, design).raw;
      const auto k = factors(f);
      const double plain = compound_objective(f, n);
      CHECK(plain == doctest::Approx(k[0] * k[1] * k[2]));
      const double cubed = std::pow(k[0], 3) * std::pow(k[1], 3) * std::pow(k[2], 3);
      if (plain > best_plain) {
        best_plain = plain;
        arg_plain = design;
      }
      if (cubed > best_cubed) {
        best_cubed = cubed;
        arg_cubed = design;
      }
    }
  }
  CHECK(best_plain > 0.0);
  CHECK(arg_plain == arg_cubed);
}

TEST_CASE("compound problem negates the score for the search") {
  auto cfg = aluminium();
  cfg.objective.normalization = unit_ranges();
  cfg.objective.normalization->mass = {5000.0, 13000.0};
  cfg.objective.normalization->neg_frequency = {-185.0, -100.0};
  cfg.objective.normalization->displacement = {3.0, 7.0};
  const TrussProblem p(cfg.model, cfg.objective);
  const auto score = evaluate(cfg.objective, cfg.model, cfg.start).value;
  CHECK(p.evaluate(cfg.start).value == -score);
  CHECK(p.to_objective(p.evaluate(cfg.start).value) == score);

  auto missing = cfg.objective;
  missing.normalization.reset();
  CHECK_THROWS_AS(TrussProblem(cfg.model, missing), std::invalid_argument);
}

TEST_CASE("derived normalization on the aluminium ten-bar") {
  auto cfg = aluminium();
  const auto run = derive_normalization(cfg.model, cfg.objective, cfg.search, cfg.start);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(run.constants[i].worst >= run.constants[i].best);
    CHECK(run.evaluations[i] <= cfg.search.max_evaluations);
    CHECK(run.values[i][i] == run.constants[i].best);
  }
  CHECK(run.constants.mass.best <= 7062.14);

  const auto dir = std::filesystem::temp_directory_path() / "tsopt_test_normalization";
  std::filesystem::create_directories(dir);
  save_normalization(run.constants, dir / "normalization.json");
  const auto loaded = load_normalization(dir / "normalization.json");
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(loaded[i].best == run.constants[i].best);
    CHECK(loaded[i].worst == run.constants[i].worst);
  }
  auto as_mass = cfg.objective;
  as_mass.kind = ObjectiveKind::mass;
  const auto f = evaluate(as_mass, cfg.model, kAluminiumReference).raw;
  CHECK(compound_objective(f, loaded) == compound_objective(f, run.constants));

  auto compound = cfg.objective;
  compound.normalization = run.constants;
  const auto start = best_single_objective_design(run, cfg.model, compound);
  const double chosen = evaluate(compound, cfg.model, start).value;
  for (const auto& d : run.designs) CHECK(evaluate(compound, cfg.model, d).value <= chosen);
  std::filesystem::remove_all(dir);
}

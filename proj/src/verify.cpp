#include "tsopt/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>

#include "tsopt/config.hpp"
#include "tsopt/engine.hpp"
#include "tsopt/objectives.hpp"
#include "tsopt/oracles/enumeration.hpp"
#include "tsopt/oracles/reference_eigen.hpp"
#include "tsopt/oracles/synthetic.hpp"
#include "tsopt/report.hpp"

namespace tsopt {

namespace {

using Clock = std::chrono::steady_clock;

std::string format(const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, args);
  va_end(args);
  return buf;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

double relative_error(double value, double reference) { return std::abs(value - reference) / std::abs(reference); }

void note(const VerifyOptions& o, const std::string& msg) {
  if (o.log) *o.log << msg << '\n';
}

// Reference designs used by the FEM checks.
const DesignVector kSteelOptimum{1.022, 0.168, 0.601, 0.341, 0.168, 0.168, 0.361, 0.679, 0.361, 0.168};
const DesignVector kAluminiumReference{33.4896, 1.4392, 33.4996, 11.1137, 1.3353, 0.1002, 32.8076, 33.4843, 13.2201, 1.9814};
const DesignVector kAluminiumCompound{33.5, 1.25, 33.5, 10.55, 1.8, 0.1, 32.3, 32.5, 14.0, 1.85};

constexpr double kSteelReferenceMass = 1112.1;
constexpr double kSteelBestTarget = 1110.0;
constexpr double kAnchorTarget = 1150.0;
constexpr std::size_t kSeeds = 10;

struct SteelRuns {
  std::vector<SearchResult> results;
  std::vector<double> seconds;
  std::vector<bool> feasible;
  std::size_t budget = 0;
};

SteelRuns steel_runs(const RunConfig& cfg) {
  SteelRuns out;
  out.budget = cfg.search.max_evaluations;
  const TrussProblem problem(cfg.model, cfg.objective);
  for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
    auto search = cfg.search;
    search.rng_seed = seed;
    const auto t0 = Clock::now();
    out.results.push_back(run_search(problem, search, cfg.start));
    out.seconds.push_back(seconds_since(t0));
    out.feasible.push_back(problem.evaluate(out.results.back().best).feasible);
  }
  return out;
}

double best_within(const std::vector<TraceEntry>& trace, std::size_t evaluations) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& t : trace)
    if (t.evaluations <= evaluations) best = t.best_value;
  return best;
}

CriterionResult criterion_steel(const SteelRuns& runs) {
  CriterionResult r{1, "Steel ten-bar optimisation", "", "", false, 0.0};
  r.expected = format(">= 8/10 seeds feasible with mass <= %.1f kg, best <= %.1f kg, <= 20000 evaluations and <= 60 s "
                      "per run",
                      kSteelReferenceMass, kSteelBestTarget);
  std::size_t hits = 0;
  double best = std::numeric_limits<double>::infinity();
  double worst = 0.0;
  std::size_t max_evals = 0;
  double max_seconds = 0.0;
  for (std::size_t i = 0; i < runs.results.size(); ++i) {
    const auto& res = runs.results[i];
    if (runs.feasible[i] && res.best_value <= kSteelReferenceMass) ++hits;
    best = std::min(best, res.best_value);
    worst = std::max(worst, res.best_value);
    max_evals = std::max(max_evals, res.evaluations);
    max_seconds = std::max(max_seconds, runs.seconds[i]);
  }
  r.obtained = format("%zu/10 hits, best %.2f kg, worst %.2f kg, max %zu evaluations, max %.2f s", hits, best, worst,
                      max_evals, max_seconds);
  r.passed = hits >= 8 && best <= kSteelBestTarget && max_evals <= 20000 && runs.budget <= 20000 && max_seconds <= 60.0;
  return r;
}

CriterionResult criterion_anchor(const SteelRuns& runs) {
  CriterionResult r{2, "Convergence-speed anchor", format("best run <= %.0f kg within 500 evaluations", kAnchorTarget),
                    "", false, 0.0};
  std::size_t best = 0;
  for (std::size_t i = 1; i < runs.results.size(); ++i)
    if (runs.results[i].best_value < runs.results[best].best_value) best = i;
  const double at500 = best_within(runs.results[best].trace, 500);
  r.obtained = format("seed %zu: %.2f kg at 500 evaluations", best + 1, at500);
  r.passed = at500 <= kAnchorTarget;
  return r;
}

CriterionResult criterion_steel_fem(const RunConfig& cfg) {
  CriterionResult r{3, "FEM check, steel ten-bar", "reference optimum: mass 1103.8 +/- 0.5 kg and feasible", "",
                    false, 0.0};
  auto spec = cfg.objective;
  spec.kind = ObjectiveKind::mass;
  const auto e = evaluate(spec, cfg.model, kSteelOptimum);
  r.obtained = format("mass %.3f kg, %s", e.analysis.mass, e.feasible ? "feasible" : "infeasible");
  for (const auto& v : e.violations) r.obtained += "; " + v.describe();
  r.passed = std::abs(e.analysis.mass - 1103.8) <= 0.5 && e.feasible;
  return r;
}

CriterionResult criterion_aluminium_fem(const RunConfig& cfg) {
  CriterionResult r{4, "FEM check, aluminium ten-bar",
                    "reference areas: mass 7064.16 lb +/- 0.1%; compound design: 28.427 Hz and 4.38 in, each +/- 2%",
                    "", false, 0.0};
  const auto scale = cfg.objective.area_unit_scale;
  auto model_areas = [scale](const DesignVector& a) {
    DesignVector out(a);
    for (auto& v : out) v *= scale;
    return out;
  };
  const auto aluminium = fem::analyze(cfg.model, model_areas(kAluminiumReference));
  const auto compound = fem::analyze(cfg.model, model_areas(kAluminiumCompound));
  r.obtained = format("reference mass %.3f lb; compound design %.3f Hz, %.4f in", aluminium.mass,
                      compound.frequency_hz, compound.total_displacement);
  r.passed = relative_error(aluminium.mass, 7064.16) <= 1e-3 && relative_error(compound.frequency_hz, 28.427) <= 0.02 &&
             relative_error(compound.total_displacement, 4.38) <= 0.02;
  return r;
}

CriterionResult criterion_compound(RunConfig cfg, const VerifyOptions& o) {
  CriterionResult r{5, "Multiobjective run",
                    "feasible; each of mass, frequency, displacement within 3% of 7062.14 lb / 28.427 Hz / 4.38 in, or "
                    "Pareto-dominates-or-ties them; <= 50000 evaluations",
                    "", false, 0.0};
  if (cfg.objective.kind != ObjectiveKind::compound) {
    r.obtained = "config objective is not compound";
    return r;
  }
  DesignVector start = cfg.start;
  if (!cfg.objective.normalization) {
    note(o, "  deriving normalization constants");
    const auto run = derive_normalization(cfg.model, cfg.objective, cfg.search, cfg.start);
    cfg.objective.normalization = run.constants;
    if (cfg.compound_start == CompoundStart::best_single_objective)
      start = best_single_objective_design(run, cfg.model, cfg.objective);
  }
  const TrussProblem problem(cfg.model, cfg.objective);
  const auto result = run_search(problem, cfg.search, start);
  const auto e = evaluate(cfg.objective, cfg.model, result.best);
  const double mass = e.analysis.mass;
  const double hz = e.analysis.frequency_hz;
  const double disp = e.analysis.total_displacement;
  const bool within = relative_error(mass, 7062.14) <= 0.03 && relative_error(hz, 28.427) <= 0.03 &&
                      relative_error(disp, 4.38) <= 0.03;
  const bool dominates = mass <= 7062.14 && hz >= 28.427 && disp <= 4.38;
  r.obtained = format("%s, %.2f lb, %.3f Hz, %.3f in, score %.4f, %zu evaluations",
                      e.feasible ? "feasible" : "infeasible", mass, hz, disp, e.value, result.evaluations);
  r.passed = e.feasible && (within || dominates) && result.evaluations <= 50000 && cfg.search.max_evaluations <= 50000;
  return r;
}

CriterionResult criterion_oracle() {
  CriterionResult r{6, "Oracle equivalence", "each synthetic problem: >= 95/100 seeded runs hit the enumerated optimum; "
                                             "<= 300 s total",
                    "", false, 0.0};
  const auto t0 = Clock::now();
  bool ok = true;
  std::string parts;
  for (const auto& c : oracles::synthetic_cases()) {
    const auto d = c.problem.bounds().dimension();
    SearchConfig base;
    base.min_step = c.min_step;
    const DesignGrid grid(c.problem.bounds(), base.resolved_min_step(d));
    const auto exact = oracles::exhaustive_minimum(c.problem, grid);
    std::size_t hits = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      auto config = base;
      config.rng_seed = seed;
      std::mt19937_64 rng(seed);
      DesignVector start;
      do start = random_grid_point(grid, rng);
      while (!c.problem.evaluate(start).feasible);
      const auto res = run_search(c.problem, config, start);
      if (std::abs(res.best_value - exact.best_value) <= 1e-9 * std::max(1.0, std::abs(exact.best_value))) ++hits;
    }
    ok = ok && hits >= 95;
    if (!parts.empty()) parts += "; ";
    parts += format("%s %zu/100 (%zu points)", c.name.c_str(), hits, exact.points);
  }
  const double seconds = seconds_since(t0);
  r.obtained = parts + format("; %.1f s", seconds);
  r.passed = ok && seconds <= 300.0;
  return r;
}

// Property checks. Each returns an empty string on success.
using Check = std::function<std::string()>;

std::string check_tabu_capacity() {
  TabuList tabu(7, {0.1});
  for (int i = 0; i < 20; ++i) {
    tabu.push({0.1 * i});
    if (tabu.size() > 7) return "tabu list exceeded its capacity";
  }
  if (tabu.contains(std::vector<double>{0.0})) return "evicted entry still tabu";
  if (!tabu.contains(std::vector<double>{1.9})) return "latest entry not tabu";
  return {};
}

std::string check_no_revisit(const RunConfig& cfg) {
  auto search = cfg.search;
  search.record_path = true;
  search.max_evaluations = 5000;
  const TrussProblem problem(cfg.model, cfg.objective);
  const auto res = run_search(problem, search, cfg.start);
  const DesignGrid grid(problem.bounds(), search.resolved_min_step(problem.bounds().dimension()));
  std::vector<const DesignVector*> window;
  for (const auto& p : res.path) {
    if (p.event == SearchEvent::reduce || p.event == SearchEvent::restart) continue;
    if (p.event == SearchEvent::move && !p.aspiration) {
      const std::size_t from = window.size() > search.tabu_size ? window.size() - search.tabu_size : 0;
      for (std::size_t i = from; i < window.size(); ++i)
        if (grid.same_point(*window[i], p.point)) return "a move revisited one of the last n bases";
    }
    window.push_back(&p.point);
  }
  return {};
}

std::string check_trace(const SearchResult& res, const SearchConfig& search) {
  const double min = search.resolved_min_step(1).front();
  double last_step = std::numeric_limits<double>::infinity();
  bool reduced = false;
  for (std::size_t i = 0; i < res.trace.size(); ++i) {
    const auto& t = res.trace[i];
    if (i > 0) {
      if (t.evaluations <= res.trace[i - 1].evaluations) return "trace evaluations not strictly increasing";
      if (t.best_value > res.trace[i - 1].best_value) return "incumbent got worse";
    }
    if (t.event == SearchEvent::restart) {
      last_step = std::numeric_limits<double>::infinity();
      reduced = false;
      continue;
    }
    if (t.step_size > last_step * (1.0 + 1e-12)) return "step grew within a cycle";
    if (t.step_size < min * (1.0 - 1e-9)) return "step below min_step";
    if (t.event == SearchEvent::reduce) reduced = true;
    if (reduced) {
      const double q = t.step_size / min;
      if (std::abs(q - std::round(q)) > 1e-6 * q) return "reduced step is not a multiple of min_step";
    }
    last_step = t.step_size;
  }
  return {};
}

std::vector<DesignVector> random_designs(const RunConfig& cfg, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> area(cfg.objective.constraints.a_min, cfg.objective.constraints.a_max);
  std::vector<DesignVector> out(n, DesignVector(cfg.model.members.size()));
  for (auto& d : out)
    for (auto& a : d) a = area(rng) * cfg.objective.area_unit_scale;
  return out;
}

std::string check_matrices(const RunConfig& cfg) {
  for (const auto& a : random_designs(cfg, 50, 11)) {
    const auto sys = fem::assemble(cfg.model, a);
    double scale_k = 0.0;
    double scale_m = 0.0;
    for (double v : sys.stiffness.data()) scale_k = std::max(scale_k, std::abs(v));
    for (double v : sys.mass.data()) scale_m = std::max(scale_m, std::abs(v));
    if (sys.stiffness.asymmetry() > 1e-14 * scale_k) return "K not symmetric";
    if (sys.mass.asymmetry() > 1e-14 * scale_m) return "M not symmetric";
    try {
      Cholesky k(sys.stiffness);
      Cholesky m(sys.mass);
    } catch (const NotPositiveDefinite&) {
      return "K or M not positive definite";
    }
  }
  return {};
}

std::string check_equilibrium(const RunConfig& cfg) {
  for (const auto& a : random_designs(cfg, 50, 12))
    if (fem::analyze(cfg.model, a).equilibrium_residual > 1e-8) return "equilibrium residual above 1e-8";
  return {};
}

std::string check_frequency_scaling(const RunConfig& cfg) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> factor(0.1, 10.0);
  for (const auto& a : random_designs(cfg, 20, 14)) {
    const double c = factor(rng);
    DesignVector scaled(a);
    for (auto& v : scaled) v *= c;
    if (relative_error(fem::analyze(cfg.model, scaled).omega1, fem::analyze(cfg.model, a).omega1) > 1e-8)
      return "frequency changed under uniform area scaling";
  }
  return {};
}

std::string check_load_linearity(const RunConfig& cfg) {
  for (const auto& a : random_designs(cfg, 20, 15)) {
    auto model = cfg.model;
    const double c = 3.7;
    for (auto& l : model.loads) {
      l.fx *= c;
      l.fy *= c;
    }
    const auto u = fem::analyze(cfg.model, a).displacements;
    const auto uc = fem::analyze(model, a).displacements;
    double err = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) err = std::max(err, std::abs(uc[i] - c * u[i]));
    if (err > 1e-8 * c * norm2(u)) return "displacements not linear in load";
  }
  return {};
}

std::string check_determinism(const RunConfig& cfg) {
  const TrussProblem problem(cfg.model, cfg.objective);
  auto search = cfg.search;
  search.max_evaluations = 5000;
  std::ostringstream a;
  std::ostringstream b;
  write_trace_csv(run_search(problem, search, cfg.start).trace, a);
  write_trace_csv(run_search(problem, search, cfg.start).trace, b);
  if (a.str() != b.str()) return "traces differ for the same seed";
  return {};
}

CriterionResult criterion_properties(const RunConfig& steel, const RunConfig& aluminium, const SteelRuns& runs) {
  CriterionResult r{7, "Property suites",
                    "tabu capacity and no-revisit; monotone incumbent; step schedule; K/M symmetric PD; equilibrium "
                    "<= 1e-8; frequency scale invariance; load linearity; deterministic traces",
                    "", false, 0.0};
  std::vector<std::pair<std::string, Check>> checks{
      {"tabu capacity", check_tabu_capacity},
      {"no revisit", [&] { return check_no_revisit(steel); }},
      {"trace schedule",
       [&] {
         for (const auto& res : runs.results)
           if (auto e = check_trace(res, steel.search); !e.empty()) return e;
         return std::string{};
       }},
      {"K/M symmetric PD (steel)", [&] { return check_matrices(steel); }},
      {"K/M symmetric PD (aluminium)", [&] { return check_matrices(aluminium); }},
      {"equilibrium (steel)", [&] { return check_equilibrium(steel); }},
      {"equilibrium (aluminium)", [&] { return check_equilibrium(aluminium); }},
      {"frequency scaling", [&] { return check_frequency_scaling(aluminium); }},
      {"load linearity", [&] { return check_load_linearity(steel); }},
      {"determinism", [&] { return check_determinism(steel); }},
  };
  std::size_t passed = 0;
  std::string failures;
  for (const auto& [name, check] : checks) {
    std::string error;
    try {
      error = check();
    } catch (const std::exception& e) {
      error = e.what();
    }
    if (error.empty()) {
      ++passed;
    } else {
      failures += "; " + name + ": " + error;
    }
  }
  r.obtained = format("%zu/%zu checks passed", passed, checks.size()) + failures;
  r.passed = passed == checks.size();
  return r;
}

CriterionResult criterion_eigen(const RunConfig& steel, const RunConfig& aluminium) {
  CriterionResult r{8, "Eigen oracle", "omega1 matches a dense reference spectrum on 100 random designs to 1e-6", "",
                    false, 0.0};
  std::size_t agree = 0;
  double worst = 0.0;
  const auto a = random_designs(steel, 50, 21);
  const auto b = random_designs(aluminium, 50, 22);
  for (std::size_t i = 0; i < 100; ++i) {
    const auto& cfg = i < 50 ? steel : aluminium;
    const auto& areas = i < 50 ? a[i] : b[i - 50];
    const auto sys = fem::assemble(cfg.model, areas);
    const double omega = fem::fundamental_frequency(sys.stiffness, sys.mass);
    const double reference = std::sqrt(oracles::reference_generalized_spectrum(sys.stiffness, sys.mass).front());
    const double err = relative_error(omega, reference);
    worst = std::max(worst, err);
    if (err <= 1e-6) ++agree;
  }
  r.obtained = format("%zu/100 agree, worst relative error %.2e", agree, worst);
  r.passed = agree == 100;
  return r;
}

CriterionResult guarded(int id, const std::string& name, const std::function<CriterionResult()>& body) {
  const auto t0 = Clock::now();
  CriterionResult r;
  try {
    r = body();
  } catch (const std::exception& e) {
    r = CriterionResult{id, name, "", std::string("error: ") + e.what(), false, 0.0};
  }
  r.seconds = seconds_since(t0);
  return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const VerifyOptions& o) {
  std::vector<CriterionResult> out;
  std::optional<RunConfig> steel;
  std::optional<RunConfig> aluminium;
  std::string steel_error = "bland.json not loaded";
  std::string aluminium_error = "bd.json not loaded";
  try {
    steel = load_config(o.config_dir / "bland.json");
  } catch (const std::exception& e) {
    steel_error = e.what();
  }
  try {
    aluminium = load_config(o.config_dir / "bd.json");
  } catch (const std::exception& e) {
    aluminium_error = e.what();
  }
  auto need = [](const std::optional<RunConfig>& c, const std::string& error) -> const RunConfig& {
    if (!c) throw std::runtime_error(error);
    return *c;
  };

  note(o, "criteria 1-2: ten seeded steel ten-bar runs");
  std::optional<SteelRuns> runs;
  std::string runs_error;
  const auto t0 = Clock::now();
  try {
    runs = steel_runs(need(steel, steel_error));
  } catch (const std::exception& e) {
    runs_error = e.what();
  }
  const double run_seconds = seconds_since(t0);
  auto need_runs = [&]() -> const SteelRuns& {
    if (!runs) throw std::runtime_error(runs_error);
    return *runs;
  };

  out.push_back(guarded(1, "Steel ten-bar optimisation", [&] { return criterion_steel(need_runs()); }));
  out.back().seconds += run_seconds;
  out.push_back(guarded(2, "Convergence-speed anchor", [&] { return criterion_anchor(need_runs()); }));
  note(o, "criteria 3-4: FEM checks");
  out.push_back(guarded(3, "FEM check, steel ten-bar", [&] { return criterion_steel_fem(need(steel, steel_error)); }));
  out.push_back(guarded(4, "FEM check, aluminium ten-bar",
                        [&] { return criterion_aluminium_fem(need(aluminium, aluminium_error)); }));
  note(o, "criterion 5: compound run");
  out.push_back(guarded(5, "Multiobjective run", [&] { return criterion_compound(need(aluminium, aluminium_error), o); }));
  note(o, "criterion 6: oracle equivalence");
  out.push_back(guarded(6, "Oracle equivalence", [] { return criterion_oracle(); }));
  note(o, "criterion 7: property suites");
  out.push_back(guarded(7, "Property suites", [&] {
    return criterion_properties(need(steel, steel_error), need(aluminium, aluminium_error), need_runs());
  }));
  note(o, "criterion 8: eigen oracle");
  out.push_back(
      guarded(8, "Eigen oracle",
              [&] { return criterion_eigen(need(steel, steel_error), need(aluminium, aluminium_error)); }));
  return out;
}

void print_acceptance_table(const std::vector<CriterionResult>& results, std::ostream& out) {
  for (const auto& r : results) {
    out << (r.passed ? "PASS" : "FAIL") << "  criterion " << r.id << ": " << r.name << " | expected: " << r.expected
        << " | obtained: " << r.obtained << " | " << format("%.2f s", r.seconds) << '\n';
  }
  const auto passed = std::count_if(results.begin(), results.end(), [](const auto& r) { return r.passed; });
  out << passed << "/" << results.size() << " criteria passed\n";
}

bool all_passed(const std::vector<CriterionResult>& results) {
  return !results.empty() && std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
}

}  // namespace tsopt

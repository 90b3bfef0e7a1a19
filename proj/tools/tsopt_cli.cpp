// tsopt: tabu-search sizing of truss structures.
//
//   tsopt optimise  --config FILE [--seed N] [--max-evals N] [--out-dir DIR]
//   tsopt analyze   --config FILE (--areas a1,a2,... | --areas-file FILE) [--out-dir DIR]
//   tsopt normalize --config FILE [--seed N] [--max-evals N] [--out-dir DIR]
//   tsopt verify    [--config-dir DIR]
//
// Exit status: 0 success, 1 constraint or acceptance failure, 2 bad input.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "tsopt/config.hpp"
#include "tsopt/engine.hpp"
#include "tsopt/objectives.hpp"
#include "tsopt/report.hpp"
#include "tsopt/verify.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kBadInput = 2;

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> max_evals;
  std::optional<std::string> out_dir;
  std::string areas;
  std::string areas_file;
  std::string config_dir = TSOPT_CONFIG_DIR;
};

tsopt::RunConfig load(const Options& o) {
  auto cfg = tsopt::load_config(o.config);
  if (o.seed) tsopt::override_seed(cfg, *o.seed);
  if (o.max_evals) tsopt::override_max_evaluations(cfg, *o.max_evals);
  if (o.out_dir) cfg.output.directory = *o.out_dir;
  return cfg;
}

tsopt::DesignVector parse_areas(std::string text) {
  std::replace(text.begin(), text.end(), ',', ' ');
  std::istringstream in(text);
  tsopt::DesignVector out;
  std::string token;
  while (in >> token) {
    std::size_t used = 0;
    const double v = std::stod(token, &used);
    if (used != token.size()) throw std::invalid_argument("cannot parse area '" + token + "'");
    out.push_back(v);
  }
  return out;
}

// Fills in normalization constants for a compound run when the config does
// not carry them, persisting what was derived. Returns the search start.
tsopt::DesignVector prepare_compound(tsopt::RunConfig& cfg, std::ostream& log) {
  if (cfg.objective.kind != tsopt::ObjectiveKind::compound || cfg.objective.normalization) return cfg.start;
  log << "deriving normalization constants (three single-objective runs)...\n";
  const auto run = tsopt::derive_normalization(cfg.model, cfg.objective, cfg.search, cfg.start);
  cfg.objective.normalization = run.constants;
  std::filesystem::create_directories(cfg.output.directory);
  tsopt::save_normalization(run.constants, cfg.output.directory / "normalization.json");
  if (cfg.compound_start == tsopt::CompoundStart::best_single_objective)
    return tsopt::best_single_objective_design(run, cfg.model, cfg.objective);
  return cfg.start;
}

int cmd_optimise(const Options& o) {
  auto cfg = load(o);
  const auto start = prepare_compound(cfg, std::cerr);
  const tsopt::TrussProblem problem(cfg.model, cfg.objective);

  const auto t0 = std::chrono::steady_clock::now();
  const auto result = tsopt::run_search(problem, cfg.search, start);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  auto report = tsopt::make_report(cfg, result.best);
  report.evaluations = result.evaluations;
  report.termination = tsopt::to_string(result.termination);
  report.wall_seconds = seconds;

  std::filesystem::create_directories(cfg.output.directory);
  tsopt::write_trace_csv(result.trace, cfg.output.directory / cfg.output.trace_file);
  tsopt::write_report(report, cfg.output.directory);
  std::cout << tsopt::format_report(report);
  return report.evaluation.feasible ? kOk : kFailure;
}

int cmd_analyze(const Options& o) {
  auto cfg = load(o);
  std::string text = o.areas;
  if (!o.areas_file.empty()) {
    std::ifstream in(o.areas_file);
    if (!in) throw std::invalid_argument("cannot open " + o.areas_file);
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  const auto areas = parse_areas(text);
  if (areas.size() != cfg.model.members.size())
    throw std::invalid_argument("dimension mismatch: " + std::to_string(areas.size()) + " areas for " +
                                std::to_string(cfg.model.members.size()) + " members");
  if (cfg.objective.kind == tsopt::ObjectiveKind::compound && !cfg.objective.normalization) {
    // Analysis only needs the raw objectives; score them as mass.
    cfg.objective.kind = tsopt::ObjectiveKind::mass;
  }
  const auto report = tsopt::make_report(cfg, areas);
  if (o.out_dir) tsopt::write_report(report, cfg.output.directory);
  std::cout << tsopt::format_report(report);
  return report.evaluation.feasible ? kOk : kFailure;
}

int cmd_normalize(const Options& o) {
  auto cfg = load(o);
  const auto run = tsopt::derive_normalization(cfg.model, cfg.objective, cfg.search, cfg.start);
  std::filesystem::create_directories(cfg.output.directory);
  const auto path = cfg.output.directory / "normalization.json";
  tsopt::save_normalization(run.constants, path);
  for (std::size_t i = 0; i < 3; ++i) {
    std::cout << tsopt::to_string(tsopt::kRawObjectives[i]) << ": best " << run.constants[i].best << ", worst "
              << run.constants[i].worst << " (" << run.evaluations[i] << " evaluations)\n";
  }
  std::cout << "written to " << path.string() << "\n";
  return kOk;
}

int cmd_verify(const Options& o) {
  tsopt::VerifyOptions options;
  options.config_dir = o.config_dir;
  options.log = &std::cerr;
  const auto results = tsopt::run_acceptance(options);
  tsopt::print_acceptance_table(results, std::cout);
  return tsopt::all_passed(results) ? kOk : kFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tabu-search sizing of truss structures"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub, bool search_flags) {
    sub->add_option("--config", o.config, "Run configuration (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--out-dir", o.out_dir, "Output directory (overrides output.directory)");
    if (search_flags) {
      sub->add_option("--seed", o.seed, "Random seed (overrides search.seed)");
      sub->add_option("--max-evals", o.max_evals, "Evaluation budget (overrides search.max_evaluations)");
    }
  };

  auto* optimise = app.add_subcommand("optimise", "Run the tabu search and write trace and report");
  add_common(optimise, true);
  auto* analyze = app.add_subcommand("analyze", "Analyse one design without searching");
  add_common(analyze, false);
  auto* areas = analyze->add_option("--areas", o.areas, "Comma-separated member areas in design units");
  auto* areas_file = analyze->add_option("--areas-file", o.areas_file, "File holding the member areas");
  areas->excludes(areas_file);
  auto* normalize = app.add_subcommand("normalize", "Derive compound-objective normalization constants");
  add_common(normalize, true);
  auto* verify = app.add_subcommand("verify", "Run the acceptance suite against the shipped configs");
  verify->add_option("--config-dir", o.config_dir, "Directory holding bland.json and bd.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    if (*optimise) return cmd_optimise(o);
    if (*analyze) {
      if (o.areas.empty() && o.areas_file.empty()) throw std::invalid_argument("analyze needs --areas or --areas-file");
      return cmd_analyze(o);
    }
    if (*normalize) return cmd_normalize(o);
    if (*verify) return cmd_verify(o);
  } catch (const tsopt::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kBadInput;
  } catch (const tsopt::InfeasibleStart& e) {
    std::cerr << "infeasible start: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "bad input: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::out_of_range& e) {
    std::cerr << "bad input: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kBadInput;
}

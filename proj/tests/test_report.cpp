#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "tsopt/report.hpp"

using namespace tsopt;

namespace {

RunConfig steel() {
  auto cfg = load_config(std::filesystem::path(TSOPT_CONFIG_DIR) / "bland.json");
  override_max_evaluations(cfg, 1500);
  return cfg;
}

std::string trace_text(const RunConfig& cfg) {
  const TrussProblem p(cfg.model, cfg.objective);
  const auto r = run_search(p, cfg.search, cfg.start);
  std::ostringstream os;
  write_trace_csv(r.trace, os);
  return os.str();
}

}  // namespace

TEST_CASE("trace CSV") {
  const auto text = trace_text(steel());
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  CHECK(line == "evaluations,best_objective,step_size,event");

  long previous_evals = 0;
  double previous_best = 1e300;
  int rows = 0;
  while (std::getline(in, line)) {
    std::istringstream row(line);
    std::string evals, best, step, event;
    std::getline(row, evals, ',');
    std::getline(row, best, ',');
    std::getline(row, step, ',');
    std::getline(row, event, ',');
    const long e = std::stol(evals);
    const double b = std::stod(best);
    if (rows == 0) CHECK(e >= 1);
    CHECK(e > previous_evals);
    CHECK(b <= previous_best);
    CHECK(std::stod(step) > 0.0);
    CHECK((event == "move" || event == "intensify" || event == "diversify" || event == "reduce" ||
           event == "restart"));
    previous_evals = e;
    previous_best = b;
    ++rows;
  }
  CHECK(rows > 10);
  CHECK(previous_evals <= 1500);
}

TEST_CASE("same seed, byte-identical trace") {
  CHECK(trace_text(steel()) == trace_text(steel()));
  auto other = steel();
  override_seed(other, 2);
  CHECK(trace_text(other).size() > 0);
}

TEST_CASE("analysis report") {
  const auto cfg = steel();
  const DesignVector optimum{1.022, 0.168, 0.601, 0.341, 0.168, 0.168, 0.361, 0.679, 0.361, 0.168};
  const auto report = make_report(cfg, optimum);
  const auto text = format_report(report);
  CHECK(text.find("feasible: yes") != std::string::npos);
  CHECK(text.find("mass: 1103.7") != std::string::npos);
  CHECK(text.find(" kg") != std::string::npos);
  CHECK(text.find("A10") != std::string::npos);

  const auto j = report_to_json(report);
  CHECK(j["feasible"] == true);
  CHECK(j["mass"].get<double>() == doctest::Approx(1103.8).epsilon(0.5 / 1103.8));
  CHECK(j["stresses"].size() == 10);
  CHECK(j["displacements"].size() == 12);
  CHECK(j["seed"] == 1);
  CHECK(j["config_hash"].get<std::string>().size() == 16);
  CHECK(j["search"]["max_evaluations"] == 1500);
  CHECK(report_to_json(make_report(cfg, optimum)).dump() == j.dump());
}

TEST_CASE("reports are written to disk") {
  const auto dir = std::filesystem::temp_directory_path() / "tsopt_test_report";
  std::filesystem::remove_all(dir);
  const auto cfg = steel();
  write_report(make_report(cfg, cfg.start), dir);
  CHECK(std::filesystem::exists(dir / "report.txt"));
  std::ifstream in(dir / "report.json");
  const auto j = nlohmann::json::parse(in);
  CHECK(j["unit_system"] == "metric");
  std::filesystem::remove_all(dir);
}

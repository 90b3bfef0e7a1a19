#include "tsopt/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace tsopt {

namespace {

struct UnitLabels {
  const char* mass;
  const char* stress;
  const char* length;
};

UnitLabels labels(UnitSystem u) {
  if (u == UnitSystem::metric) return {"kg", "kPa", "m"};
  return {"lb", "psi", "in"};
}

std::string num(double v, int precision = 10) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

}  // namespace

RunReport make_report(const RunConfig& config, const DesignVector& design) {
  RunReport r;
  r.name = config.name;
  r.units = config.units;
  r.kind = config.objective.kind;
  r.design = design;
  r.evaluation = evaluate(config.objective, config.model, design);
  r.seed = config.search.rng_seed;
  r.config_hash = config.hash();
  r.defaults_applied = config.defaults_applied;
  r.search = config.resolved.at("search");
  r.normalization = config.objective.normalization;
  return r;
}

void write_trace_csv(std::span<const TraceEntry> trace, std::ostream& out) {
  out << "evaluations,best_objective,step_size,event\n";
  for (const auto& t : trace)
    out << t.evaluations << ',' << num(t.best_value, 12) << ',' << num(t.step_size, 12) << ',' << to_string(t.event)
        << '\n';
}

void write_trace_csv(std::span<const TraceEntry> trace, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_trace_csv(trace, out);
}

std::string format_report(const RunReport& r) {
  const auto u = labels(r.units);
  const auto& a = r.evaluation.analysis;
  std::ostringstream os;
  os << "run: " << r.name << "\n";
  os << "objective: " << to_string(r.kind) << " = " << num(r.evaluation.value) << "\n";
  os << "feasible: " << (r.evaluation.feasible ? "yes" : "no") << "\n";
  for (const auto& v : r.evaluation.violations) os << "  violation: " << v.describe() << "\n";
  if (!r.termination.empty()) {
    os << "evaluations: " << r.evaluations << " (" << r.termination << ")\n";
    os << "seed: " << r.seed << "\n";
    os << "wall time: " << num(r.wall_seconds, 4) << " s\n";
  }
  char hash[32];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(r.config_hash));
  os << "config hash: " << hash << "\n\n";

  os << "member  area            stress (" << u.stress << ")\n";
  for (std::size_t i = 0; i < r.design.size(); ++i) {
    char line[128];
    std::snprintf(line, sizeof line, "A%-5zu  %-14.6g  %14.6g\n", i + 1, r.design[i], a.stresses[i]);
    os << line;
  }
  os << "\nnode  dx (" << u.length << ")        dy (" << u.length << ")\n";
  for (std::size_t n = 0; 2 * n < a.displacements.size(); ++n) {
    char line[128];
    std::snprintf(line, sizeof line, "%-4zu  %-14.6g  %-14.6g\n", n + 1, a.displacements[2 * n],
                  a.displacements[2 * n + 1]);
    os << line;
  }
  os << "\nmass: " << num(a.mass, 8) << " " << u.mass << "\n";
  os << "fundamental frequency: " << num(a.frequency_hz, 8) << " Hz (" << num(a.omega1, 8) << " rad/s)\n";
  os << "total displacement: " << num(a.total_displacement, 8) << " " << u.length << "\n";
  if (r.normalization) {
    os << "compound score: " << num(compound_objective(r.evaluation.raw, *r.normalization)) << "\n";
  }
  if (!r.defaults_applied.empty()) {
    os << "\ndefaults applied:";
    for (const auto& d : r.defaults_applied) os << " " << d;
    os << "\n";
  }
  if (!r.search.empty()) os << "search: " << r.search.dump() << "\n";
  return os.str();
}

nlohmann::ordered_json report_to_json(const RunReport& r) {
  const auto& a = r.evaluation.analysis;
  nlohmann::ordered_json j;
  j["name"] = r.name;
  j["unit_system"] = to_string(r.units);
  j["objective_kind"] = to_string(r.kind);
  j["objective"] = r.evaluation.value;
  j["feasible"] = r.evaluation.feasible;
  auto violations = nlohmann::ordered_json::array();
  for (const auto& v : r.evaluation.violations) violations.push_back(v.describe());
  j["violations"] = violations;
  j["design"] = r.design;
  j["stresses"] = a.stresses;
  j["displacements"] = a.displacements;
  j["mass"] = a.mass;
  j["omega1"] = a.omega1;
  j["frequency_hz"] = a.frequency_hz;
  j["total_displacement"] = a.total_displacement;
  if (r.normalization) j["compound_score"] = compound_objective(r.evaluation.raw, *r.normalization);
  j["evaluations"] = r.evaluations;
  j["termination"] = r.termination;
  j["wall_seconds"] = r.wall_seconds;
  j["seed"] = r.seed;
  char hash[32];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(r.config_hash));
  j["config_hash"] = hash;
  j["defaults_applied"] = r.defaults_applied;
  j["search"] = r.search;
  return j;
}

void write_report(const RunReport& report, const std::filesystem::path& directory) {
  std::filesystem::create_directories(directory);
  {
    std::ofstream out(directory / "report.txt");
    if (!out) throw std::runtime_error("cannot write report.txt in " + directory.string());
    out << format_report(report);
  }
  std::ofstream out(directory / "report.json");
  if (!out) throw std::runtime_error("cannot write report.json in " + directory.string());
  out << report_to_json(report).dump(2) << '\n';
}

}  // namespace tsopt

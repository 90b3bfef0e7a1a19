#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "tsopt/config.hpp"
#include "tsopt/engine.hpp"
#include "tsopt/objectives.hpp"

namespace tsopt {

struct RunReport {
  std::string name;
  UnitSystem units = UnitSystem::metric;
  ObjectiveKind kind = ObjectiveKind::mass;
  DesignVector design;
  ObjectiveEvaluation evaluation;
  std::size_t evaluations = 0;
  std::string termination;  // empty for a bare analysis
  double wall_seconds = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t config_hash = 0;
  std::vector<std::string> defaults_applied;
  nlohmann::ordered_json search;  // resolved search block
  std::optional<NormalizationConstants> normalization;
};

RunReport make_report(const RunConfig& config, const DesignVector& design);

/// Header `evaluations,best_objective,step_size,event`, one row per entry.
void write_trace_csv(std::span<const TraceEntry> trace, std::ostream& out);
void write_trace_csv(std::span<const TraceEntry> trace, const std::filesystem::path& path);

std::string format_report(const RunReport& report);
nlohmann::ordered_json report_to_json(const RunReport& report);

/// Writes report.txt and report.json into `directory` (created if needed).
void write_report(const RunReport& report, const std::filesystem::path& directory);

}  // namespace tsopt

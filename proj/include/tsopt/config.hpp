#pragma once

// Run configuration files. JSON syntax; every key is listed in
// docs/config-schema.md and anything else is rejected.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "tsopt/engine.hpp"
#include "tsopt/objectives.hpp"
#include "tsopt/truss.hpp"

namespace tsopt {

/// Malformed or schema-violating configuration. what() names the key or
/// the line/column of a syntax error.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class UnitSystem { metric, imperial };
const char* to_string(UnitSystem u);

/// Inertial conversion for a unit system: metric is kg with kN, imperial is
/// lb (weight) with lbf and inches.
double default_dynamic_mass_factor(UnitSystem u);

/// Where a compound search starts: search.start, or the single-objective
/// optimum that scores best (needs normalization derived in the same run).
enum class CompoundStart { search_start, best_single_objective };

struct OutputConfig {
  std::filesystem::path directory = "out";
  std::string trace_file = "trace.csv";
};

struct RunConfig {
  std::string name;
  UnitSystem units = UnitSystem::metric;
  fem::TrussModel model;
  ObjectiveSpec objective;
  // Set when normalization should be read from a file (resolved against the
  // config's directory).
  std::optional<std::filesystem::path> normalization_file;
  CompoundStart compound_start = CompoundStart::search_start;
  SearchConfig search;
  DesignVector start;
  OutputConfig output;

  std::vector<std::string> defaults_applied;  // dotted keys filled from defaults
  nlohmann::ordered_json resolved;            // full config after defaults

  /// FNV-1a 64 of the resolved JSON text.
  std::uint64_t hash() const;
};

/// Command-line overrides; both keep `resolved` (and so the hash) in sync.
void override_seed(RunConfig& config, std::uint64_t seed);
void override_max_evaluations(RunConfig& config, std::size_t max_evaluations);

RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir = ".");
RunConfig load_config(const std::filesystem::path& path);

}  // namespace tsopt

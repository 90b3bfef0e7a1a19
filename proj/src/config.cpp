#include "tsopt/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace tsopt {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

// Reads one JSON object, rejecting keys outside `allowed`.
class Block {
public:
  Block(const json& j, std::string prefix, std::set<std::string> allowed, std::vector<std::string>* defaults)
      : j_(j), prefix_(std::move(prefix)), defaults_(defaults) {
    if (!j_.is_object()) throw ConfigError(name_or_root() + " must be an object");
    for (const auto& [key, _] : j_.items())
      if (!allowed.contains(key)) throw ConfigError("unknown key '" + dotted(key) + "'");
  }

  bool has(const std::string& key) const { return j_.contains(key); }
  const json& raw(const std::string& key) const { return j_.at(key); }
  std::string dotted(const std::string& key) const { return prefix_.empty() ? key : prefix_ + "." + key; }

  template <class T>
  T required(const std::string& key) const {
    if (!has(key)) throw ConfigError("missing required key '" + dotted(key) + "'");
    return get<T>(key);
  }

  template <class T>
  T optional(const std::string& key, T fallback) const {
    if (!has(key)) {
      if (defaults_) defaults_->push_back(dotted(key));
      return fallback;
    }
    return get<T>(key);
  }

  double positive(const std::string& key) const {
    const auto v = required<double>(key);
    if (!(v > 0.0)) throw ConfigError("'" + dotted(key) + "' must be positive");
    return v;
  }

  template <class T>
  T get(const std::string& key) const {
    try {
      return j_.at(key).get<T>();
    } catch (const json::exception& e) {
      throw ConfigError("key '" + dotted(key) + "' has the wrong type (" + e.what() + ")");
    }
  }

  /// A number or an array of numbers.
  std::vector<double> numbers(const std::string& key) const {
    const auto& v = raw(key);
    if (v.is_number()) return {v.get<double>()};
    if (v.is_array()) return get<std::vector<double>>(key);
    throw ConfigError("key '" + dotted(key) + "' must be a number or an array of numbers");
  }

private:
  std::string name_or_root() const { return prefix_.empty() ? "configuration" : "'" + prefix_ + "'"; }

  const json& j_;
  std::string prefix_;
  std::vector<std::string>* defaults_;
};

std::string line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

UnitSystem unit_system_from(const std::string& s) {
  if (s == "metric") return UnitSystem::metric;
  if (s == "imperial") return UnitSystem::imperial;
  throw ConfigError("problem.unit_system must be 'metric' or 'imperial', got '" + s + "'");
}

std::size_t node_index(long long one_based, std::size_t count, const std::string& key) {
  if (one_based < 1 || static_cast<std::size_t>(one_based) > count)
    throw ConfigError("'" + key + "' references node " + std::to_string(one_based) + " of " + std::to_string(count));
  return static_cast<std::size_t>(one_based - 1);
}

void read_problem(const json& j, RunConfig& cfg, ordered_json& resolved) {
  Block b(j, "problem",
          {"notes", "model", "unit_system", "length", "youngs_modulus", "density", "load", "area_unit_scale",
           "mass_matrix", "dynamic_mass_factor", "nodes", "members", "supports", "loads"},
          &cfg.defaults_applied);
  const auto kind = b.required<std::string>("model");
  cfg.units = unit_system_from(b.required<std::string>("unit_system"));
  resolved["model"] = kind;
  resolved["unit_system"] = to_string(cfg.units);

  if (kind == "standard_ten_bar") {
    for (const char* k : {"nodes", "members", "supports", "loads"})
      if (b.has(k)) throw ConfigError(std::string("'problem.") + k + "' is not allowed with the standard_ten_bar model");
    const double length = b.positive("length");
    const double e = b.positive("youngs_modulus");
    const double rho = b.positive("density");
    const double load = b.positive("load");
    cfg.model = fem::standard_ten_bar_model(length, e, rho, load);
    resolved["length"] = length;
    resolved["youngs_modulus"] = e;
    resolved["density"] = rho;
    resolved["load"] = load;
  } else if (kind == "custom") {
    for (const char* k : {"length", "load"})
      if (b.has(k)) throw ConfigError(std::string("'problem.") + k + "' is only meaningful for standard_ten_bar");
    fem::TrussModel m;
    for (const auto& n : b.required<std::vector<std::array<double, 2>>>("nodes")) m.nodes.push_back({n[0], n[1]});
    for (const auto& mem : b.required<std::vector<std::array<long long, 2>>>("members"))
      m.members.push_back({node_index(mem[0], m.nodes.size(), "problem.members"),
                           node_index(mem[1], m.nodes.size(), "problem.members")});
    for (auto s : b.required<std::vector<long long>>("supports"))
      m.supports.push_back(node_index(s, m.nodes.size(), "problem.supports"));
    const auto& loads = b.raw("loads");
    if (!loads.is_array()) throw ConfigError("'problem.loads' must be an array");
    for (const auto& l : loads) {
      Block lb(l, "problem.loads[]", {"node", "fx", "fy"}, nullptr);
      m.loads.push_back({node_index(lb.required<long long>("node"), m.nodes.size(), "problem.loads[].node"),
                         lb.optional<double>("fx", 0.0), lb.optional<double>("fy", 0.0)});
    }
    m.youngs_modulus = b.positive("youngs_modulus");
    m.density = b.positive("density");
    cfg.model = std::move(m);
    resolved["nodes"] = b.raw("nodes");
    resolved["members"] = b.raw("members");
    resolved["supports"] = b.raw("supports");
    resolved["loads"] = b.raw("loads");
    resolved["youngs_modulus"] = cfg.model.youngs_modulus;
    resolved["density"] = cfg.model.density;
  } else {
    throw ConfigError("problem.model must be 'standard_ten_bar' or 'custom', got '" + kind + "'");
  }

  const auto mass_matrix = b.optional<std::string>("mass_matrix", "consistent");
  if (mass_matrix == "consistent") {
    cfg.model.mass_matrix = fem::MassMatrixKind::consistent;
  } else if (mass_matrix == "lumped") {
    cfg.model.mass_matrix = fem::MassMatrixKind::lumped;
  } else {
    throw ConfigError("problem.mass_matrix must be 'consistent' or 'lumped'");
  }
  cfg.model.dynamic_mass_factor = b.optional<double>("dynamic_mass_factor", default_dynamic_mass_factor(cfg.units));
  if (!(cfg.model.dynamic_mass_factor > 0.0)) throw ConfigError("'problem.dynamic_mass_factor' must be positive");
  cfg.objective.area_unit_scale = b.optional<double>("area_unit_scale", 1.0);
  if (!(cfg.objective.area_unit_scale > 0.0)) throw ConfigError("'problem.area_unit_scale' must be positive");

  resolved["area_unit_scale"] = cfg.objective.area_unit_scale;
  resolved["mass_matrix"] = mass_matrix;
  resolved["dynamic_mass_factor"] = cfg.model.dynamic_mass_factor;

  try {
    cfg.model.validate();
  } catch (const fem::InvalidModel& e) {
    throw ConfigError(std::string("problem: ") + e.what());
  }
}

NormalizationConstants read_normalization(const json& j) {
  Block b(j, "objective.normalization", {"mass", "neg_frequency", "displacement"}, nullptr);
  NormalizationConstants n;
  for (std::size_t i = 0; i < 3; ++i) {
    const std::string key = to_string(kRawObjectives[i]);
    Block r(b.raw(key.c_str()), "objective.normalization." + key, {"best", "worst"}, nullptr);
    n[i] = {r.required<double>("best"), r.required<double>("worst")};
  }
  try {
    n.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("objective.normalization: ") + e.what());
  }
  return n;
}

void read_objective(const json& j, const std::filesystem::path& base_dir, RunConfig& cfg, ordered_json& resolved) {
  Block b(j, "objective",
          {"notes", "kind", "sigma_max", "delta_max", "a_min", "a_max", "displacement_limit", "compound_form",
           "normalization", "normalization_file", "compound_start"},
          &cfg.defaults_applied);
  auto& o = cfg.objective;
  try {
    o.kind = objective_kind_from_string(b.required<std::string>("kind"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("objective.kind: ") + e.what());
  }
  o.constraints.sigma_max = b.positive("sigma_max");
  o.constraints.delta_max = b.positive("delta_max");
  o.constraints.a_min = b.positive("a_min");
  o.constraints.a_max = b.positive("a_max");
  if (!(o.constraints.a_min < o.constraints.a_max)) throw ConfigError("objective.a_min must be below objective.a_max");

  const auto limit = b.optional<std::string>("displacement_limit", "component");
  if (limit == "component") {
    o.constraints.displacement_limit = DisplacementLimit::component;
  } else if (limit == "resultant") {
    o.constraints.displacement_limit = DisplacementLimit::resultant;
  } else {
    throw ConfigError("objective.displacement_limit must be 'component' or 'resultant'");
  }
  const auto form = b.optional<std::string>("compound_form", "normalized");
  if (form == "normalized") {
    o.compound_form = CompoundForm::normalized;
  } else if (form == "raw") {
    o.compound_form = CompoundForm::raw;
  } else {
    throw ConfigError("objective.compound_form must be 'normalized' or 'raw'");
  }

  if (b.has("normalization") && b.has("normalization_file"))
    throw ConfigError("objective.normalization and objective.normalization_file are mutually exclusive");
  if (b.has("normalization")) o.normalization = read_normalization(b.raw("normalization"));
  if (b.has("normalization_file")) {
    cfg.normalization_file = base_dir / b.get<std::string>("normalization_file");
    try {
      o.normalization = load_normalization(*cfg.normalization_file);
    } catch (const std::exception& e) {
      throw ConfigError(std::string("objective.normalization_file: ") + e.what());
    }
  }

  const auto compound_start = b.optional<std::string>("compound_start", "search_start");
  if (compound_start == "search_start") {
    cfg.compound_start = CompoundStart::search_start;
  } else if (compound_start == "best_single_objective") {
    if (o.kind != ObjectiveKind::compound)
      throw ConfigError("objective.compound_start = best_single_objective needs kind = compound");
    if (o.normalization)
      throw ConfigError("objective.compound_start = best_single_objective needs derived normalization");
    cfg.compound_start = CompoundStart::best_single_objective;
  } else {
    throw ConfigError("objective.compound_start must be 'search_start' or 'best_single_objective'");
  }

  resolved["kind"] = to_string(o.kind);
  resolved["sigma_max"] = o.constraints.sigma_max;
  resolved["delta_max"] = o.constraints.delta_max;
  resolved["a_min"] = o.constraints.a_min;
  resolved["a_max"] = o.constraints.a_max;
  resolved["displacement_limit"] = limit;
  resolved["compound_form"] = form;
  resolved["compound_start"] = compound_start;
  if (o.normalization) {
    auto& n = resolved["normalization"];
    for (std::size_t i = 0; i < 3; ++i)
      n[to_string(kRawObjectives[i])] = {{"best", (*o.normalization)[i].best}, {"worst", (*o.normalization)[i].worst}};
  }
}

void read_search(const json& j, RunConfig& cfg, ordered_json& resolved) {
  Block b(j, "search",
          {"notes", "tabu_size", "elite_size", "pattern_factor", "intensify_after", "diversify_after", "reduce_after",
           "initial_step", "min_step", "max_evaluations", "seed", "diversify_attempts", "diversify_radius",
           "restart_on_convergence", "start"},
          &cfg.defaults_applied);
  SearchConfig defaults;
  auto& s = cfg.search;
  s.tabu_size = b.optional<std::size_t>("tabu_size", defaults.tabu_size);
  s.elite_size = b.optional<std::size_t>("elite_size", defaults.elite_size);
  s.pattern_factor = b.optional<double>("pattern_factor", defaults.pattern_factor);
  s.intensify_after = b.optional<std::size_t>("intensify_after", defaults.intensify_after);
  s.diversify_after = b.optional<std::size_t>("diversify_after", defaults.diversify_after);
  s.reduce_after = b.optional<std::size_t>("reduce_after", defaults.reduce_after);
  s.max_evaluations = b.optional<std::size_t>("max_evaluations", defaults.max_evaluations);
  s.rng_seed = b.optional<std::uint64_t>("seed", defaults.rng_seed);
  s.diversify_attempts = b.optional<std::size_t>("diversify_attempts", defaults.diversify_attempts);
  s.diversify_radius = b.optional<std::size_t>("diversify_radius", defaults.diversify_radius);
  s.restart_on_convergence = b.optional<bool>("restart_on_convergence", defaults.restart_on_convergence);
  if (!b.has("min_step")) throw ConfigError("missing required key 'search.min_step'");
  s.min_step = b.numbers("min_step");
  if (b.has("initial_step")) {
    s.initial_step = b.numbers("initial_step");
  } else {
    cfg.defaults_applied.push_back("search.initial_step");
  }

  const auto bounds_size = cfg.model.members.size();
  const auto& c = cfg.objective.constraints;
  const Bounds bounds{std::vector<double>(bounds_size, c.a_min), std::vector<double>(bounds_size, c.a_max)};
  try {
    s.validate(bounds);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  // Record the step actually used so the report is self-contained.
  s.initial_step = s.resolved_initial_step(bounds);

  if (b.has("start")) {
    auto start = b.numbers("start");
    if (start.size() == 1) start.assign(bounds_size, start.front());
    if (start.size() != bounds_size)
      throw ConfigError("search.start: expected 1 or " + std::to_string(bounds_size) + " values");
    cfg.start = std::move(start);
  } else {
    cfg.defaults_applied.push_back("search.start");
    cfg.start.assign(bounds_size, c.a_max);
  }

  resolved["tabu_size"] = s.tabu_size;
  resolved["elite_size"] = s.elite_size;
  resolved["pattern_factor"] = s.pattern_factor;
  resolved["intensify_after"] = s.intensify_after;
  resolved["diversify_after"] = s.diversify_after;
  resolved["reduce_after"] = s.reduce_after;
  resolved["initial_step"] = s.initial_step;
  resolved["min_step"] = s.min_step;
  resolved["max_evaluations"] = s.max_evaluations;
  resolved["seed"] = s.rng_seed;
  resolved["diversify_attempts"] = s.diversify_attempts;
  resolved["diversify_radius"] = s.diversify_radius;
  resolved["restart_on_convergence"] = s.restart_on_convergence;
  resolved["start"] = cfg.start;
}

void read_output(const json& j, RunConfig& cfg, ordered_json& resolved) {
  Block b(j, "output", {"notes", "directory", "trace_file"}, &cfg.defaults_applied);
  cfg.output.directory = b.optional<std::string>("directory", cfg.output.directory.string());
  cfg.output.trace_file = b.optional<std::string>("trace_file", cfg.output.trace_file);
  resolved["directory"] = cfg.output.directory.string();
  resolved["trace_file"] = cfg.output.trace_file;
}

}  // namespace

const char* to_string(UnitSystem u) { return u == UnitSystem::metric ? "metric" : "imperial"; }

double default_dynamic_mass_factor(UnitSystem u) {
  // kg -> kN s^2/m, and lb -> lbf s^2/in with standard gravity 386.0886 in/s^2.
  return u == UnitSystem::metric ? 1e-3 : 1.0 / 386.0886;
}

std::uint64_t RunConfig::hash() const {
  const auto text = resolved.dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("parse error at " + line_column(text, e.byte) + ": " + e.what());
  }

  RunConfig cfg;
  Block top(j, "", {"name", "notes", "problem", "objective", "search", "output"}, &cfg.defaults_applied);
  cfg.name = top.optional<std::string>("name", "unnamed");
  cfg.resolved["name"] = cfg.name;

  ordered_json problem, objective, search, output;
  read_problem(top.has("problem") ? top.raw("problem") : throw ConfigError("missing required key 'problem'"), cfg,
               problem);
  read_objective(top.has("objective") ? top.raw("objective") : throw ConfigError("missing required key 'objective'"),
                 base_dir, cfg, objective);
  read_search(top.has("search") ? top.raw("search") : json::object(), cfg, search);
  read_output(top.has("output") ? top.raw("output") : json::object(), cfg, output);

  cfg.resolved["problem"] = problem;
  cfg.resolved["objective"] = objective;
  cfg.resolved["search"] = search;
  cfg.resolved["output"] = output;

  for (std::size_t i = 0; i < cfg.start.size(); ++i) {
    const auto& c = cfg.objective.constraints;
    if (cfg.start[i] < c.a_min || cfg.start[i] > c.a_max)
      throw ConfigError("search.start[" + std::to_string(i) + "] is outside [a_min, a_max]");
  }
  return cfg;
}

void override_seed(RunConfig& config, std::uint64_t seed) {
  config.search.rng_seed = seed;
  config.resolved["search"]["seed"] = seed;
}

void override_max_evaluations(RunConfig& config, std::size_t max_evaluations) {
  if (max_evaluations == 0) throw ConfigError("--max-evals must be positive");
  config.search.max_evaluations = max_evaluations;
  config.resolved["search"]["max_evaluations"] = max_evaluations;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.parent_path());
}

}  // namespace tsopt

#include "tsopt/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace tsopt {

namespace {

ObjectiveValues raw_values(const fem::AnalysisResult& a) { return {a.mass, -a.omega1, a.total_displacement}; }

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

void ConstraintSet::validate() const {
  if (!(sigma_max > 0.0)) throw std::invalid_argument("objective.sigma_max must be positive");
  if (!(delta_max > 0.0)) throw std::invalid_argument("objective.delta_max must be positive");
  if (!(a_min > 0.0)) throw std::invalid_argument("objective.a_min must be positive");
  if (!(a_min < a_max)) throw std::invalid_argument("objective.a_min must be below objective.a_max");
}

const char* to_string(ObjectiveKind k) {
  switch (k) {
    case ObjectiveKind::mass: return "mass";
    case ObjectiveKind::neg_frequency: return "neg_frequency";
    case ObjectiveKind::displacement: return "displacement";
    case ObjectiveKind::compound: return "compound";
  }
  return "?";
}

ObjectiveKind objective_kind_from_string(const std::string& s) {
  for (auto k : {ObjectiveKind::mass, ObjectiveKind::neg_frequency, ObjectiveKind::displacement,
                 ObjectiveKind::compound})
    if (s == to_string(k)) return k;
  throw std::invalid_argument("unknown objective kind '" + s + "'");
}

const ObjectiveRange& NormalizationConstants::operator[](std::size_t i) const {
  switch (i) {
    case 0: return mass;
    case 1: return neg_frequency;
    case 2: return displacement;
  }
  throw std::out_of_range("NormalizationConstants index");
}

ObjectiveRange& NormalizationConstants::operator[](std::size_t i) {
  return const_cast<ObjectiveRange&>(std::as_const(*this)[i]);
}

void NormalizationConstants::validate() const {
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& r = (*this)[i];
    if (!std::isfinite(r.best) || !std::isfinite(r.worst))
      throw std::invalid_argument(std::string("normalization for ") + to_string(kRawObjectives[i]) + " is not finite");
    if (r.best == r.worst)
      throw std::invalid_argument(std::string("degenerate normalization for ") + to_string(kRawObjectives[i]) +
                                  ": best equals worst");
  }
}

void ObjectiveSpec::validate() const {
  constraints.validate();
  if (!(area_unit_scale > 0.0)) throw std::invalid_argument("problem.area_unit_scale must be positive");
  if (kind == ObjectiveKind::compound) {
    if (!normalization) throw std::invalid_argument("compound objective requires normalization constants");
    normalization->validate();
  }
}

double Violation::excess() const { return std::abs(value) / limit - 1.0; }

std::string Violation::describe() const {
  const std::string what = kind == Kind::stress ? "member " + std::to_string(index + 1) + " stress"
                                                : "node " + std::to_string(index + 1) + " displacement";
  return what + " " + fmt(value) + " exceeds limit " + fmt(limit) + " by " + fmt(100.0 * excess()) + "%";
}

ObjectiveEvaluation evaluate(const ObjectiveSpec& spec, const fem::TrussModel& model, std::span<const double> areas) {
  const auto& c = spec.constraints;
  if (areas.size() != model.members.size())
    throw std::invalid_argument("expected " + std::to_string(model.members.size()) + " areas, got " +
                                std::to_string(areas.size()));
  std::vector<double> scaled(areas.size());
  for (std::size_t i = 0; i < areas.size(); ++i) {
    if (!(areas[i] >= c.a_min && areas[i] <= c.a_max))
      throw std::out_of_range("area A" + std::to_string(i + 1) + " = " + fmt(areas[i]) + " is outside [" +
                              fmt(c.a_min) + ", " + fmt(c.a_max) + "]");
    scaled[i] = areas[i] * spec.area_unit_scale;
  }

  ObjectiveEvaluation out;
  out.analysis = fem::analyze(model, scaled);
  const auto& a = out.analysis;

  for (std::size_t m = 0; m < a.stresses.size(); ++m)
    if (std::abs(a.stresses[m]) > c.sigma_max)
      out.violations.push_back({Violation::Kind::stress, m, a.stresses[m], c.sigma_max});
  for (std::size_t n = 0; n < model.nodes.size(); ++n) {
    if (model.is_supported(n)) continue;
    const auto [dx, dy] = a.node_displacement(n);
    if (c.displacement_limit == DisplacementLimit::resultant) {
      const double r = std::hypot(dx, dy);
      if (r > c.delta_max) out.violations.push_back({Violation::Kind::displacement, n, r, c.delta_max});
    } else {
      const double worst = std::abs(dx) > std::abs(dy) ? dx : dy;
      if (std::abs(worst) > c.delta_max) out.violations.push_back({Violation::Kind::displacement, n, worst, c.delta_max});
    }
  }
  out.feasible = out.violations.empty();
  out.raw = raw_values(a);

  switch (spec.kind) {
    case ObjectiveKind::mass: out.value = out.raw[0]; break;
    case ObjectiveKind::neg_frequency: out.value = out.raw[1]; break;
    case ObjectiveKind::displacement: out.value = out.raw[2]; break;
    case ObjectiveKind::compound:
      if (!spec.normalization) throw std::invalid_argument("compound objective requires normalization constants");
      out.value = compound_objective(out.raw, *spec.normalization, spec.compound_form);
      break;
  }
  return out;
}

double compound_objective(const ObjectiveValues& f, const NormalizationConstants& norm, CompoundForm form) {
  norm.validate();
  double product = 1.0;
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& r = norm[i];
    if (form == CompoundForm::raw) {
      product *= r.worst - f[i];
    } else {
      product *= std::clamp((r.worst - f[i]) / (r.worst - r.best), 0.0, 1.0);
    }
  }
  return product;
}

TrussProblem::TrussProblem(fem::TrussModel model, ObjectiveSpec spec) : model_(std::move(model)), spec_(std::move(spec)) {
  model_.validate();
  spec_.validate();
}

Bounds TrussProblem::bounds() const {
  const auto d = model_.members.size();
  return {std::vector<double>(d, spec_.constraints.a_min), std::vector<double>(d, spec_.constraints.a_max)};
}

Evaluation TrussProblem::evaluate(std::span<const double> x) const {
  const auto e = tsopt::evaluate(spec_, model_, x);
  return {spec_.kind == ObjectiveKind::compound ? -e.value : e.value, e.feasible};
}

std::string TrussProblem::explain_infeasibility(std::span<const double> x) const {
  const auto e = tsopt::evaluate(spec_, model_, x);
  std::string out;
  for (const auto& v : e.violations) out += (out.empty() ? "" : "; ") + v.describe();
  return out.empty() ? "feasible" : out;
}

double TrussProblem::to_objective(double search_value) const {
  return spec_.kind == ObjectiveKind::compound ? -search_value : search_value;
}

NormalizationRun derive_normalization(const fem::TrussModel& model, const ObjectiveSpec& base,
                                      const SearchConfig& config, const DesignVector& start) {
  NormalizationRun run;
  for (std::size_t i = 0; i < 3; ++i) {
    ObjectiveSpec spec = base;
    spec.kind = kRawObjectives[i];
    spec.normalization.reset();
    const TrussProblem problem(model, spec);
    SearchResult result;
    try {
      result = run_search(problem, config, start);
    } catch (const InfeasibleStart& e) {
      throw InfeasibleStart(std::string("normalization run for ") + to_string(spec.kind) + ": " + e.what());
    }
    run.designs[i] = result.best;
    run.evaluations[i] = result.evaluations;
    run.values[i] = tsopt::evaluate(spec, model, result.best).raw;
  }
  for (std::size_t i = 0; i < 3; ++i) {
    auto& r = run.constants[i];
    r.best = run.values[i][i];
    r.worst = std::max({run.values[0][i], run.values[1][i], run.values[2][i]});
  }
  run.constants.validate();
  return run;
}

DesignVector best_single_objective_design(const NormalizationRun& run, const fem::TrussModel& model,
                                          const ObjectiveSpec& compound) {
  std::size_t best = 0;
  double best_score = -1.0;
  for (std::size_t i = 0; i < run.designs.size(); ++i) {
    const double score = evaluate(compound, model, run.designs[i]).value;
    if (score > best_score) {
      best = i;
      best_score = score;
    }
  }
  return run.designs[best];
}

void save_normalization(const NormalizationConstants& norm, const std::filesystem::path& path) {
  nlohmann::ordered_json j;
  for (std::size_t i = 0; i < 3; ++i) j[to_string(kRawObjectives[i])] = {{"best", norm[i].best}, {"worst", norm[i].worst}};
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

NormalizationConstants load_normalization(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  const auto j = nlohmann::json::parse(in);
  NormalizationConstants n;
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& e = j.at(to_string(kRawObjectives[i]));
    n[i].best = e.at("best").get<double>();
    n[i].worst = e.at("worst").get<double>();
  }
  n.validate();
  return n;
}

}  // namespace tsopt

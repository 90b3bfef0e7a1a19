#pragma once

// Objectives and constraints for truss sizing: structural mass, negated
// fundamental frequency, total nodal displacement, and the game-theory
// compound of all three.

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tsopt/engine.hpp"
#include "tsopt/truss.hpp"

namespace tsopt {

enum class DisplacementLimit {
  component,  // |dx| and |dy| each within the limit at every free node
  resultant   // sqrt(dx^2 + dy^2) within the limit
};

struct ConstraintSet {
  double sigma_max = 0.0;
  double delta_max = 0.0;
  double a_min = 0.0;  // design area units
  double a_max = 0.0;
  DisplacementLimit displacement_limit = DisplacementLimit::component;

  void validate() const;
};

enum class ObjectiveKind { mass, neg_frequency, displacement, compound };
const char* to_string(ObjectiveKind k);
ObjectiveKind objective_kind_from_string(const std::string& s);

/// Order of the three raw objectives everywhere a triple is used.
inline constexpr std::array<ObjectiveKind, 3> kRawObjectives{ObjectiveKind::mass, ObjectiveKind::neg_frequency,
                                                            ObjectiveKind::displacement};

struct ObjectiveRange {
  double best = 0.0;
  double worst = 0.0;
};

/// Best and worst values of each raw objective over the single-objective
/// optima; all three are minimized, so worst >= best.
struct NormalizationConstants {
  ObjectiveRange mass;
  ObjectiveRange neg_frequency;
  ObjectiveRange displacement;

  const ObjectiveRange& operator[](std::size_t i) const;
  ObjectiveRange& operator[](std::size_t i);
  /// Throws std::invalid_argument on a degenerate range.
  void validate() const;
};

enum class CompoundForm {
  normalized,  // product of (worst - f) / (worst - best), each clamped to [0, 1]
  raw          // product of (worst - f), no normalization or clamping
};

struct ObjectiveSpec {
  ObjectiveKind kind = ObjectiveKind::mass;
  ConstraintSet constraints;
  std::optional<NormalizationConstants> normalization;
  CompoundForm compound_form = CompoundForm::normalized;
  // Design areas are multiplied by this to get model areas.
  double area_unit_scale = 1.0;

  void validate() const;
};

struct Violation {
  enum class Kind { stress, displacement };
  Kind kind = Kind::stress;
  std::size_t index = 0;  // member or node, zero-based
  double value = 0.0;     // signed stress, or the offending displacement measure
  double limit = 0.0;
  /// |value| / limit - 1, positive when violated.
  double excess() const;
  std::string describe() const;
};

/// Raw objective triple (mass, -omega1, total displacement).
using ObjectiveValues = std::array<double, 3>;

struct ObjectiveEvaluation {
  double value = 0.0;  // the selected objective; compound is a score to maximize
  bool feasible = true;
  std::vector<Violation> violations;
  ObjectiveValues raw{};
  fem::AnalysisResult analysis;
};

/// Runs the analysis once and scores the design. Throws std::out_of_range
/// naming the variable when an area is outside [a_min, a_max].
ObjectiveEvaluation evaluate(const ObjectiveSpec& spec, const fem::TrussModel& model, std::span<const double> areas);

/// Game-theory compound of the three raw objectives; larger is better.
double compound_objective(const ObjectiveValues& f, const NormalizationConstants& norm,
                          CompoundForm form = CompoundForm::normalized);

/// Adapts a truss objective to the minimizing search: compound scores are
/// negated, everything else passes through.
class TrussProblem : public Problem {
public:
  TrussProblem(fem::TrussModel model, ObjectiveSpec spec);

  Bounds bounds() const override;
  Evaluation evaluate(std::span<const double> x) const override;
  std::string explain_infeasibility(std::span<const double> x) const override;

  const fem::TrussModel& model() const noexcept { return model_; }
  const ObjectiveSpec& spec() const noexcept { return spec_; }

  /// Search value -> objective value as reported (undoes the compound negation).
  double to_objective(double search_value) const;

private:
  fem::TrussModel model_;
  ObjectiveSpec spec_;
};

struct NormalizationRun {
  NormalizationConstants constants;
  std::array<DesignVector, 3> designs;          // single-objective optima
  std::array<ObjectiveValues, 3> values;        // raw triple at each optimum
  std::array<std::size_t, 3> evaluations{};
};

/// Three independent single-objective searches (mass, frequency,
/// displacement) from `start`; best = each objective at its own optimum,
/// worst = the largest value it takes across the three optima.
NormalizationRun derive_normalization(const fem::TrussModel& model, const ObjectiveSpec& base,
                                      const SearchConfig& config, const DesignVector& start);

/// The single-objective optimum with the highest compound score under
/// `compound` (which must carry normalization). Ties go to the earlier one.
DesignVector best_single_objective_design(const NormalizationRun& run, const fem::TrussModel& model,
                                          const ObjectiveSpec& compound);

void save_normalization(const NormalizationConstants& norm, const std::filesystem::path& path);
NormalizationConstants load_normalization(const std::filesystem::path& path);

}  // namespace tsopt

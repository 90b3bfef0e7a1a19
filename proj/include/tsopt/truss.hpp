#pragma once

// Linear-elastic analysis of 2D pin-jointed trusses by the direct stiffness
// method: static displacements, member stresses, structural mass, and the
// fundamental natural frequency.

#include <array>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tsopt/dense.hpp"

namespace tsopt::fem {

struct Node {
  double x = 0.0;
  double y = 0.0;
};

struct Member {
  std::size_t start = 0;
  std::size_t end = 0;
};

struct NodalLoad {
  std::size_t node = 0;
  double fx = 0.0;
  double fy = 0.0;
};

enum class MassMatrixKind { consistent, lumped };

/// Raised when a free degree of freedom has no stiffness (a mechanism).
class UnstableStructure : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class InvalidModel : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

struct TrussModel {
  std::vector<Node> nodes;
  std::vector<Member> members;
  std::vector<std::size_t> supports;  // fully fixed nodes
  std::vector<NodalLoad> loads;
  double youngs_modulus = 0.0;
  double density = 0.0;  // mass (or weight) per unit volume, as reported
  // Converts density * volume into the inertial unit consistent with the
  // stiffness and load units: 1e-3 for kg with kN, 1/g for lb with in/s^2.
  double dynamic_mass_factor = 1.0;
  MassMatrixKind mass_matrix = MassMatrixKind::consistent;

  /// Checks indices, member lengths, and material constants; throws InvalidModel.
  void validate() const;
  double member_length(std::size_t member) const;
  bool is_supported(std::size_t node) const;
  /// Global DOF indices (2*node, 2*node+1) of unsupported nodes, in node order.
  std::vector<std::size_t> free_dofs() const;
};

/// Ten-bar cantilever: nodes 1-4 free, nodes 5-6 fixed at the wall, load F
/// downward at nodes 2 and 4. Horizontal and vertical bars have length L,
/// diagonals L*sqrt(2).
TrussModel standard_ten_bar_model(double length, double youngs_modulus, double density,
                                  double load);

/// 4x4 element stiffness over (u_xi, u_yi, u_xj, u_yj) in global axes.
Matrix element_stiffness(const TrussModel& model, std::size_t member, double area);
/// 4x4 element mass matrix (consistent or lumped per model.mass_matrix),
/// in inertial units.
Matrix element_mass(const TrussModel& model, std::size_t member, double area);

struct ReducedSystem {
  Matrix stiffness;
  Matrix mass;
  std::vector<double> load;
  std::vector<std::size_t> free_dofs;
};

/// Global stiffness, mass, and load restricted to free DOFs.
ReducedSystem assemble(const TrussModel& model, std::span<const double> areas);

/// Direct Cholesky solve of K u = f.
std::vector<double> solve_static(const Matrix& stiffness, std::span<const double> load);

/// Axial stress from full nodal displacements (2 per node); tension positive.
double member_stress(const TrussModel& model, std::size_t member,
                     std::span<const double> nodal_displacements);

double total_mass(const TrussModel& model, std::span<const double> areas);

/// Smallest circular frequency (rad/s) of K x = w^2 M x.
double fundamental_frequency(const Matrix& stiffness, const Matrix& mass);

/// Sum over unsupported nodes of the resultant displacement magnitude.
double total_displacement(const TrussModel& model, std::span<const double> nodal_displacements);

struct AnalysisResult {
  std::vector<double> displacements;        // all 2*nodes DOFs, zero at supports
  std::vector<double> stresses;             // per member
  double mass = 0.0;
  double omega1 = 0.0;                      // rad/s
  double frequency_hz = 0.0;
  double total_displacement = 0.0;
  double equilibrium_residual = 0.0;        // ||K u - f|| / ||f||, 0 when f = 0

  std::array<double, 2> node_displacement(std::size_t node) const {
    return {displacements[2 * node], displacements[2 * node + 1]};
  }
};

AnalysisResult analyze(const TrussModel& model, std::span<const double> areas);

}  // namespace tsopt::fem

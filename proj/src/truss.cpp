#include "tsopt/truss.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace tsopt::fem {

namespace {

struct Direction {
  double length;
  double c;
  double s;
};

Direction direction(const TrussModel& model, std::size_t member) {
  if (member >= model.members.size())
    throw InvalidModel("member index " + std::to_string(member) + " out of range");
  const auto& m = model.members[member];
  const auto& a = model.nodes.at(m.start);
  const auto& b = model.nodes.at(m.end);
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double len = std::hypot(dx, dy);
  if (!(len > 0.0)) throw InvalidModel("member " + std::to_string(member + 1) + " has zero length");
  return {len, dx / len, dy / len};
}

std::array<std::size_t, 4> member_dofs(const Member& m) {
  return {2 * m.start, 2 * m.start + 1, 2 * m.end, 2 * m.end + 1};
}

void check_areas(const TrussModel& model, std::span<const double> areas) {
  if (areas.size() != model.members.size())
    throw std::invalid_argument("expected " + std::to_string(model.members.size()) +
                                " member areas, got " + std::to_string(areas.size()));
  for (std::size_t i = 0; i < areas.size(); ++i)
    if (!(areas[i] > 0.0))
      throw std::invalid_argument("area of member " + std::to_string(i + 1) + " is not positive");
}

}  // namespace

void TrussModel::validate() const {
  if (!(youngs_modulus > 0.0)) throw InvalidModel("Young's modulus must be positive");
  if (!(density > 0.0)) throw InvalidModel("density must be positive");
  if (!(dynamic_mass_factor > 0.0)) throw InvalidModel("dynamic mass factor must be positive");
  if (members.empty()) throw InvalidModel("model has no members");
  for (std::size_t i = 0; i < members.size(); ++i) {
    const auto& m = members[i];
    if (m.start >= nodes.size() || m.end >= nodes.size())
      throw InvalidModel("member " + std::to_string(i + 1) + " references a missing node");
    if (m.start == m.end)
      throw InvalidModel("member " + std::to_string(i + 1) + " connects a node to itself");
    direction(*this, i);
  }
  for (auto s : supports)
    if (s >= nodes.size()) throw InvalidModel("support references missing node " + std::to_string(s + 1));
  for (const auto& l : loads)
    if (l.node >= nodes.size()) throw InvalidModel("load references missing node " + std::to_string(l.node + 1));
  if (free_dofs().empty()) throw InvalidModel("model has no free degrees of freedom");
}

double TrussModel::member_length(std::size_t member) const { return direction(*this, member).length; }

bool TrussModel::is_supported(std::size_t node) const {
  return std::find(supports.begin(), supports.end(), node) != supports.end();
}

std::vector<std::size_t> TrussModel::free_dofs() const {
  std::vector<std::size_t> dofs;
  for (std::size_t n = 0; n < nodes.size(); ++n) {
    if (is_supported(n)) continue;
    dofs.push_back(2 * n);
    dofs.push_back(2 * n + 1);
  }
  return dofs;
}

TrussModel standard_ten_bar_model(double length, double youngs_modulus, double density, double load) {
  if (!(length > 0.0 && youngs_modulus > 0.0 && density > 0.0 && load > 0.0))
    throw InvalidModel("ten-bar parameters must all be positive");
  const double L = length;
  TrussModel m;
  m.nodes = {{2 * L, L}, {2 * L, 0.0}, {L, L}, {L, 0.0}, {0.0, L}, {0.0, 0.0}};
  // Zero-based node indices; member k joins the listed pair.
  m.members = {{4, 2}, {2, 0}, {5, 3}, {3, 1}, {2, 3}, {0, 1}, {4, 3}, {5, 2}, {2, 1}, {3, 0}};
  m.supports = {4, 5};
  m.loads = {{1, 0.0, -load}, {3, 0.0, -load}};
  m.youngs_modulus = youngs_modulus;
  m.density = density;
  return m;
}

Matrix element_stiffness(const TrussModel& model, std::size_t member, double area) {
  const auto d = direction(model, member);
  const double k = model.youngs_modulus * area / d.length;
  const std::array<double, 4> v{-d.c, -d.s, d.c, d.s};
  Matrix ke(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) ke(i, j) = k * v[i] * v[j];
  return ke;
}

Matrix element_mass(const TrussModel& model, std::size_t member, double area) {
  const auto d = direction(model, member);
  const double total = model.density * model.dynamic_mass_factor * area * d.length;
  Matrix me(4, 4);
  if (model.mass_matrix == MassMatrixKind::lumped) {
    for (std::size_t i = 0; i < 4; ++i) me(i, i) = total / 2.0;
    return me;
  }
  const double c = total / 6.0;
  for (std::size_t i = 0; i < 4; ++i) me(i, i) = 2.0 * c;
  me(0, 2) = me(2, 0) = c;
  me(1, 3) = me(3, 1) = c;
  return me;
}

ReducedSystem assemble(const TrussModel& model, std::span<const double> areas) {
  check_areas(model, areas);
  const std::size_t ndof = 2 * model.nodes.size();
  Matrix k(ndof, ndof);
  Matrix m(ndof, ndof);
  for (std::size_t e = 0; e < model.members.size(); ++e) {
    const auto ke = element_stiffness(model, e, areas[e]);
    const auto me = element_mass(model, e, areas[e]);
    const auto dofs = member_dofs(model.members[e]);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) {
        k(dofs[i], dofs[j]) += ke(i, j);
        m(dofs[i], dofs[j]) += me(i, j);
      }
  }

  std::vector<double> f(ndof, 0.0);
  for (const auto& l : model.loads) {
    f[2 * l.node] += l.fx;
    f[2 * l.node + 1] += l.fy;
  }

  ReducedSystem sys;
  sys.free_dofs = model.free_dofs();
  const std::size_t n = sys.free_dofs.size();
  sys.stiffness = Matrix(n, n);
  sys.mass = Matrix(n, n);
  sys.load.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto gi = sys.free_dofs[i];
    sys.load[i] = f[gi];
    for (std::size_t j = 0; j < n; ++j) {
      sys.stiffness(i, j) = k(gi, sys.free_dofs[j]);
      sys.mass(i, j) = m(gi, sys.free_dofs[j]);
    }
    if (!(sys.stiffness(i, i) > 0.0))
      throw UnstableStructure("free DOF " + std::to_string(gi) + " (node " + std::to_string(gi / 2 + 1) +
                              ") has no stiffness");
  }
  return sys;
}

std::vector<double> solve_static(const Matrix& stiffness, std::span<const double> load) {
  return Cholesky(stiffness).solve(load);
}

double member_stress(const TrussModel& model, std::size_t member, std::span<const double> u) {
  const auto d = direction(model, member);
  const auto dofs = member_dofs(model.members[member]);
  const double elongation = -d.c * u[dofs[0]] - d.s * u[dofs[1]] + d.c * u[dofs[2]] + d.s * u[dofs[3]];
  return model.youngs_modulus / d.length * elongation;
}

double total_mass(const TrussModel& model, std::span<const double> areas) {
  if (areas.size() != model.members.size())
    throw std::invalid_argument("total_mass: area count does not match member count");
  double volume = 0.0;
  for (std::size_t e = 0; e < areas.size(); ++e) volume += areas[e] * model.member_length(e);
  return model.density * volume;
}

double fundamental_frequency(const Matrix& stiffness, const Matrix& mass) {
  const auto eig = generalized_eigenvalues(stiffness, mass);
  if (eig.empty() || !(eig.front() > 0.0))
    throw NotPositiveDefinite("fundamental_frequency: stiffness is not positive definite", 0);
  return std::sqrt(eig.front());
}

double total_displacement(const TrussModel& model, std::span<const double> u) {
  double sum = 0.0;
  for (std::size_t n = 0; n < model.nodes.size(); ++n) {
    if (model.is_supported(n)) continue;
    sum += std::hypot(u[2 * n], u[2 * n + 1]);
  }
  return sum;
}

AnalysisResult analyze(const TrussModel& model, std::span<const double> areas) {
  const auto sys = assemble(model, areas);
  const auto reduced = solve_static(sys.stiffness, sys.load);

  AnalysisResult r;
  r.displacements.assign(2 * model.nodes.size(), 0.0);
  for (std::size_t i = 0; i < sys.free_dofs.size(); ++i) r.displacements[sys.free_dofs[i]] = reduced[i];

  const auto ku = sys.stiffness * std::span<const double>(reduced);
  std::vector<double> residual(ku.size());
  for (std::size_t i = 0; i < ku.size(); ++i) residual[i] = ku[i] - sys.load[i];
  const double fnorm = norm2(sys.load);
  r.equilibrium_residual = fnorm > 0.0 ? norm2(residual) / fnorm : norm2(residual);

  r.stresses.resize(model.members.size());
  for (std::size_t e = 0; e < model.members.size(); ++e) r.stresses[e] = member_stress(model, e, r.displacements);

  r.mass = total_mass(model, areas);
  r.omega1 = fundamental_frequency(sys.stiffness, sys.mass);
  r.frequency_hz = r.omega1 / (2.0 * std::numbers::pi);
  r.total_displacement = total_displacement(model, r.displacements);
  return r;
}

}  // namespace tsopt::fem

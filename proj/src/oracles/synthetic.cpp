#include "tsopt/oracles/synthetic.hpp"

#include <cmath>
#include <numbers>

namespace tsopt::oracles {

std::vector<SyntheticCase> synthetic_cases() {
  std::vector<SyntheticCase> cases;

  // Curved valley with minima near (1, 1) and (-1, 1); the left one is lower.
  cases.push_back({"two-basin bowl",
                   FunctionProblem(Bounds{{-2.0, -1.0}, {2.0, 3.0}},
                                   [](std::span<const double> x) {
                                     const double a = x[1] - x[0] * x[0];
                                     const double b = x[0] * x[0] - 1.0;
                                     return Evaluation{5.0 * a * a + b * b + 0.2 * x[0], true};
                                   }),
                   {0.02}});

  // Weighted sum of sizes under a compliance-like constraint; the optimum sits
  // on the constraint boundary, as in truss sizing.
  cases.push_back({"constrained sizing",
                   FunctionProblem(Bounds{{0.25, 0.25, 0.25}, {5.125, 5.125, 5.125}},
                                   [](std::span<const double> x) {
                                     const double g = 1.0 / x[0] + 1.0 / x[1] + 1.0 / x[2];
                                     return Evaluation{3.0 * x[0] + 2.0 * x[1] + x[2], g <= 1.5};
                                   }),
                   {0.125}});

  cases.push_back({"shifted rastrigin",
                   FunctionProblem(Bounds{{-2.0, -2.0, -2.0, -2.0}, {2.0, 2.0, 2.0, 2.0}},
                                   [](std::span<const double> x) {
                                     static constexpr double shift[] = {0.25, -0.5, 0.75, 0.0};
                                     double f = 10.0 * static_cast<double>(x.size());
                                     for (std::size_t i = 0; i < x.size(); ++i) {
                                       const double z = x[i] - shift[i];
                                       f += z * z - 10.0 * std::cos(2.0 * std::numbers::pi * z);
                                     }
                                     return Evaluation{f, true};
                                   }),
                   {0.25}});
  return cases;
}

}  // namespace tsopt::oracles

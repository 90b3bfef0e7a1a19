#pragma once

#include <span>
#include <vector>

#include "tsopt/dense.hpp"

namespace tsopt::oracles {

/// Full generalized spectrum of K x = lambda M x from a dense library solver,
/// ascending.
std::vector<double> reference_generalized_spectrum(const Matrix& k, const Matrix& m);

/// Solves A x = b by Gaussian elimination with partial pivoting.
std::vector<double> gaussian_elimination(Matrix a, std::vector<double> b);

}  // namespace tsopt::oracles

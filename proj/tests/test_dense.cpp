#include <doctest.h>

#include <cmath>
#include <random>

#include "tsopt/dense.hpp"
#include "tsopt/oracles/reference_eigen.hpp"

using tsopt::Cholesky;
using tsopt::Matrix;

namespace {

Matrix random_spd(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix b(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) b(i, j) = u(rng);
  Matrix a = b.transpose() * b;
  for (std::size_t i = 0; i < n; ++i) a(i, i) += static_cast<double>(n);
  return a;
}

}  // namespace

TEST_CASE("matrix basics") {
  const auto a = Matrix::from_rows({{1, 2}, {3, 4}});
  const auto t = a.transpose();
  CHECK(t(0, 1) == 3);
  const auto p = a * Matrix::identity(2);
  CHECK(p(1, 0) == 3);
  const std::vector<double> x{1, 1};
  const auto y = a * std::span<const double>(x);
  CHECK(y[0] == 3);
  CHECK(y[1] == 7);
  CHECK(a.asymmetry() == doctest::Approx(1.0));
}

TEST_CASE("cholesky solves a diagonal system") {
  Matrix k = 2.0 * Matrix::identity(8);
  std::vector<double> f(8, 4.0);
  const auto u = Cholesky(k).solve(f);
  for (double v : u) CHECK(v == doctest::Approx(2.0));
}

TEST_CASE("cholesky agrees with gaussian elimination on random SPD systems") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_spd(8, rng);
    std::vector<double> b(8);
    for (auto& v : b) v = u(rng);
    const auto x = Cholesky(a).solve(b);
    const auto ref = tsopt::oracles::gaussian_elimination(a, b);
    for (std::size_t i = 0; i < 8; ++i) CHECK(std::abs(x[i] - ref[i]) <= 1e-10 * (1.0 + std::abs(ref[i])));
  }
}

TEST_CASE("cholesky rejects indefinite matrices and names the pivot") {
  const auto a = Matrix::from_rows({{1, 0, 0}, {0, -1, 0}, {0, 0, 1}});
  try {
    Cholesky c(a);
    FAIL("expected NotPositiveDefinite");
  } catch (const tsopt::NotPositiveDefinite& e) {
    CHECK(e.pivot() == 1);
  }
}

TEST_CASE("symmetric eigenvalues") {
  const auto vals = tsopt::symmetric_eigenvalues(Matrix::from_rows({{2, -1}, {-1, 2}}));
  REQUIRE(vals.size() == 2);
  CHECK(vals[0] == doctest::Approx(1.0));
  CHECK(vals[1] == doctest::Approx(3.0));
}

TEST_CASE("generalized eigenvalues") {
  SUBCASE("1-DOF") {
    const auto vals = tsopt::generalized_eigenvalues(Matrix::from_rows({{2}}), Matrix::from_rows({{0.5}}));
    CHECK(std::sqrt(vals.front()) == doctest::Approx(2.0));
  }
  SUBCASE("2x2 with identity mass") {
    const auto vals =
        tsopt::generalized_eigenvalues(Matrix::from_rows({{2, -1}, {-1, 2}}), Matrix::identity(2));
    CHECK(std::sqrt(vals.front()) == doctest::Approx(1.0));
  }
  SUBCASE("random pencils match the library reference") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
      const auto k = random_spd(8, rng);
      const auto m = random_spd(8, rng);
      const auto ours = tsopt::generalized_eigenvalues(k, m);
      const auto ref = tsopt::oracles::reference_generalized_spectrum(k, m);
      REQUIRE(ours.size() == ref.size());
      for (std::size_t i = 0; i < ref.size(); ++i) CHECK(std::abs(ours[i] - ref[i]) <= 1e-9 * ref[i]);
    }
  }
}

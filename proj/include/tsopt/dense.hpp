#pragma once

// Small dense linear algebra for the truss analysis. Sizes are tiny (the
// benchmark reduces to 8x8), so everything is plain row-major storage with
// no blocking.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace tsopt {

class NotPositiveDefinite : public std::runtime_error {
public:
  NotPositiveDefinite(const std::string& what, std::size_t pivot)
      : std::runtime_error(what), pivot_(pivot) {}
  /// Index of the first pivot that was not strictly positive.
  std::size_t pivot() const noexcept { return pivot_; }

private:
  std::size_t pivot_;
};

class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const double> data() const noexcept { return data_; }

  Matrix transpose() const;
  Matrix& operator*=(double s);
  Matrix& operator+=(const Matrix& other);

  friend Matrix operator*(double s, Matrix m) { return m *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend std::vector<double> operator*(const Matrix& a, std::span<const double> x);

  /// Largest |A(i,j) - A(j,i)|.
  double asymmetry() const;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Lower-triangular Cholesky factor L with A = L L^T.
/// Throws NotPositiveDefinite when a pivot is not strictly positive.
class Cholesky {
public:
  explicit Cholesky(const Matrix& a);

  const Matrix& lower() const noexcept { return l_; }

  std::vector<double> solve(std::span<const double> b) const;
  /// Solves L y = b.
  std::vector<double> forward(std::span<const double> b) const;
  /// Solves L^T x = y.
  std::vector<double> backward(std::span<const double> y) const;

private:
  Matrix l_;
};

/// Eigenvalues of a symmetric matrix, ascending, by cyclic Jacobi rotation.
std::vector<double> symmetric_eigenvalues(Matrix a);

/// Eigenvalues lambda of K x = lambda M x for symmetric K and SPD M, ascending.
/// Reduces to the standard problem L^-1 K L^-T with M = L L^T.
std::vector<double> generalized_eigenvalues(const Matrix& k, const Matrix& m);

double norm2(std::span<const double> x);

}  // namespace tsopt

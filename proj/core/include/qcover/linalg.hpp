#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace qcover::linalg {

/// Dense row-major matrix of doubles. Sized for the small systems this
/// project needs (Gram matrices of circuit Jacobians, sample covariances).
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {}

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  double& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

  std::span<const double> data() const { return data_; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
std::vector<double> symmetric_eigenvalues(const Matrix& a);

/// Smallest singular value of a symmetric matrix (= min |eigenvalue|).
double smallest_singular_value(const Matrix& a);

/// Number of eigenvalues of a symmetric PSD matrix above `tol` in magnitude.
int numeric_rank(const Matrix& a, double tol);

/// Determinant via LU with partial pivoting (destroys a copy).
double determinant(Matrix a);

/// Max |a(i,j) - a(j,i)| over the strict upper triangle.
double symmetry_defect(const Matrix& a);

/// Sums values with pairwise recursion; deterministic and accurate for long sums.
double pairwise_sum(std::span<const double> values);

}  // namespace qcover::linalg

#include "qcover/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "qcover/errors.hpp"

namespace qcover::linalg {

std::vector<double> symmetric_eigenvalues(const Matrix& a) {
  detail::require(a.square(), "symmetric_eigenvalues: matrix must be square");
  const int n = a.rows();
  Matrix m = a;
  // Symmetrize first; inputs are Gram matrices assembled entry-wise and can
  // carry tiny antisymmetric noise.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double v = 0.5 * (m(i, j) + m(j, i));
      m(i, j) = v;
      m(j, i) = v;
    }

  const int max_sweeps = 64;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += m(i, j) * m(i, j);
    if (off < 1e-300) break;

    double diag = 0.0;
    for (int i = 0; i < n; ++i) diag += m(i, i) * m(i, i);
    if (off <= 1e-30 * (diag + off)) break;

    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = m(p, q);
        if (apq == 0.0) continue;
        const double app = m(p, p);
        const double aqq = m(q, q);
        const double tau = (aqq - app) / (2.0 * apq);
        const double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                      : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double mkp = m(k, p);
          const double mkq = m(k, q);
          m(k, p) = c * mkp - s * mkq;
          m(k, q) = s * mkp + c * mkq;
        }
        for (int k = 0; k < n; ++k) {
          const double mpk = m(p, k);
          const double mqk = m(q, k);
          m(p, k) = c * mpk - s * mqk;
          m(q, k) = s * mpk + c * mqk;
        }
      }
    }
  }

  std::vector<double> eig(n);
  for (int i = 0; i < n; ++i) eig[i] = m(i, i);
  std::sort(eig.begin(), eig.end());
  return eig;
}

double smallest_singular_value(const Matrix& a) {
  const auto eig = symmetric_eigenvalues(a);
  double best = std::abs(eig.front());
  for (double e : eig) best = std::min(best, std::abs(e));
  return best;
}

int numeric_rank(const Matrix& a, double tol) {
  const auto eig = symmetric_eigenvalues(a);
  int rank = 0;
  for (double e : eig)
    if (std::abs(e) > tol) ++rank;
  return rank;
}

double determinant(Matrix a) {
  detail::require(a.square(), "determinant: matrix must be square");
  const int n = a.rows();
  double det = 1.0;
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
    if (a(pivot, col) == 0.0) return 0.0;
    if (pivot != col) {
      for (int c = 0; c < n; ++c) std::swap(a(pivot, c), a(col, c));
      det = -det;
    }
    det *= a(col, col);
    const double inv = 1.0 / a(col, col);
    for (int r = col + 1; r < n; ++r) {
      const double f = a(r, col) * inv;
      if (f == 0.0) continue;
      for (int c = col; c < n; ++c) a(r, c) -= f * a(col, c);
    }
  }
  return det;
}

double symmetry_defect(const Matrix& a) {
  double worst = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = i + 1; j < a.cols(); ++j)
      worst = std::max(worst, std::abs(a(i, j) - a(j, i)));
  return worst;
}

double pairwise_sum(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n == 0) return 0.0;
  if (n <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace qcover::linalg

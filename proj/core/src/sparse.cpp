#include "transgnn/sparse.hpp"

#include <cmath>

#include "transgnn/errors.hpp"

namespace transgnn {

SparseMatrix SparseMatrix::normalized_adjacency(const Graph& g) {
  const std::uint32_t n = g.num_nodes();
  SparseMatrix s;
  s.rows_ = n;
  s.cols_ = n;
  s.row_offsets_.assign(n + 1, 0);

  std::vector<double> inv_sqrt_deg(n);
  for (std::uint32_t v = 0; v < n; ++v) {
    inv_sqrt_deg[v] = 1.0 / std::sqrt(static_cast<double>(g.degree(v) + 1));
  }

  for (std::uint32_t v = 0; v < n; ++v) s.row_offsets_[v + 1] = g.degree(v) + 1;
  for (std::uint32_t v = 0; v < n; ++v) s.row_offsets_[v + 1] += s.row_offsets_[v];
  s.col_indices_.resize(s.row_offsets_[n]);
  s.values_.resize(s.row_offsets_[n]);

  for (std::uint32_t v = 0; v < n; ++v) {
    std::size_t k = s.row_offsets_[v];
    bool diag_written = false;
    for (std::uint32_t u : g.neighbors(v)) {
      if (!diag_written && u > v) {
        s.col_indices_[k] = v;
        s.values_[k] = inv_sqrt_deg[v] * inv_sqrt_deg[v];
        ++k;
        diag_written = true;
      }
      s.col_indices_[k] = u;
      s.values_[k] = inv_sqrt_deg[v] * inv_sqrt_deg[u];
      ++k;
    }
    if (!diag_written) {
      s.col_indices_[k] = v;
      s.values_[k] = inv_sqrt_deg[v] * inv_sqrt_deg[v];
      ++k;
    }
  }
  return s;
}

SparseMatrix SparseMatrix::from_dense(const Matrix& x) {
  SparseMatrix s;
  s.rows_ = x.rows();
  s.cols_ = x.cols();
  s.row_offsets_.assign(s.rows_ + 1, 0);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t j = 0; j < x.cols(); ++j) {
      if (x(i, j) != 0.0) ++s.row_offsets_[i + 1];
    }
  }
  for (std::size_t i = 0; i < s.rows_; ++i) s.row_offsets_[i + 1] += s.row_offsets_[i];
  s.col_indices_.resize(s.row_offsets_[s.rows_]);
  s.values_.resize(s.row_offsets_[s.rows_]);
  std::size_t k = 0;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t j = 0; j < x.cols(); ++j) {
      if (x(i, j) != 0.0) {
        s.col_indices_[k] = static_cast<std::uint32_t>(j);
        s.values_[k] = x(i, j);
        ++k;
      }
    }
  }
  return s;
}

Matrix SparseMatrix::multiply(const Matrix& x) const {
  if (x.rows() != cols_) throw ShapeError("SparseMatrix::multiply: dimension mismatch");
  Matrix y(rows_, x.cols(), 0.0);
  const std::size_t d = x.cols();
  for (std::size_t i = 0; i < rows_; ++i) {
    double* out = y.data() + i * d;
    for (std::size_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
      const double w = values_[k];
      const double* in = x.data() + static_cast<std::size_t>(col_indices_[k]) * d;
      for (std::size_t j = 0; j < d; ++j) out[j] += w * in[j];
    }
  }
  return y;
}

Matrix SparseMatrix::transpose_multiply(const Matrix& y) const {
  if (y.rows() != rows_) throw ShapeError("SparseMatrix::transpose_multiply: dimension mismatch");
  Matrix x(cols_, y.cols(), 0.0);
  const std::size_t d = y.cols();
  for (std::size_t i = 0; i < rows_; ++i) {
    const double* in = y.data() + i * d;
    for (std::size_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
      const double w = values_[k];
      double* out = x.data() + static_cast<std::size_t>(col_indices_[k]) * d;
      for (std::size_t j = 0; j < d; ++j) out[j] += w * in[j];
    }
  }
  return x;
}

bool SparseMatrix::is_symmetric(double tol) const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
      const std::uint32_t j = col_indices_[k];
      // binary search row j for column i
      std::size_t lo = row_offsets_[j], hi = row_offsets_[j + 1];
      double mirror = 0.0;
      bool found = false;
      while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (col_indices_[mid] < i) {
          lo = mid + 1;
        } else if (col_indices_[mid] > i) {
          hi = mid;
        } else {
          mirror = values_[mid];
          found = true;
          break;
        }
      }
      if (!found || std::fabs(mirror - values_[k]) > tol) return false;
    }
  }
  return true;
}

Matrix SparseMatrix::to_dense() const {
  Matrix d(rows_, cols_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
      d(i, col_indices_[k]) += values_[k];
    }
  }
  return d;
}

}  // namespace transgnn

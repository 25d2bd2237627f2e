#pragma once

#include <cstdint>
#include <vector>

#include "transgnn/graph.hpp"
#include "transgnn/matrix.hpp"

namespace transgnn {

// Compressed sparse row matrix of doubles. Used for the symmetric
// propagation operators and for sparse feature matrices.
class SparseMatrix {
public:
  SparseMatrix() = default;

  // D^{-1/2} (A + I) D^{-1/2} where D is the degree matrix of A + I.
  // Isolated nodes keep an identity diagonal entry.
  static SparseMatrix normalized_adjacency(const Graph& g);

  // keeps entries with |x| > 0
  static SparseMatrix from_dense(const Matrix& x);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nnz() const noexcept { return values_.size(); }

  Matrix multiply(const Matrix& x) const;            // S * X
  Matrix transpose_multiply(const Matrix& y) const;  // S^T * Y

  bool is_symmetric(double tol = 0.0) const;

  Matrix to_dense() const;

  const std::vector<std::size_t>& row_offsets() const noexcept { return row_offsets_; }
  const std::vector<std::uint32_t>& col_indices() const noexcept { return col_indices_; }
  const std::vector<double>& values() const noexcept { return values_; }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> row_offsets_;
  std::vector<std::uint32_t> col_indices_;
  std::vector<double> values_;
};

}  // namespace transgnn

#include "transgnn/matrix.hpp"

#include <cmath>

#include "transgnn/errors.hpp"

namespace transgnn {

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  Matrix m(rows.size(), rows.size() ? rows.begin()->size() : 0);
  std::size_t i = 0;
  for (const auto& r : rows) {
    if (r.size() != m.cols()) {
      throw ShapeError("Matrix::from_rows: ragged row");
    }
    std::size_t j = 0;
    for (double v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

bool Matrix::all_finite() const noexcept {
  for (double v : data_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

}  // namespace transgnn

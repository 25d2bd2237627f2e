#include "transgnn/nn_ops.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "transgnn/errors.hpp"

namespace transgnn {

namespace {

using EigenRowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MapConst = Eigen::Map<const EigenRowMajor>;
using Map = Eigen::Map<EigenRowMajor>;

MapConst as_eigen(const Matrix& m) {
  return MapConst(m.data(), static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
}

Map as_eigen(Matrix& m) {
  return Map(m.data(), static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw ShapeError(msg);
}

}  // namespace

Matrix matmul(const Matrix& a, const Matrix& b) {
  require(a.cols() == b.rows(), "matmul: inner dimensions differ (" + std::to_string(a.cols()) +
                                    " vs " + std::to_string(b.rows()) + ")");
  Matrix c(a.rows(), b.cols());
  as_eigen(c).noalias() = as_eigen(a) * as_eigen(b);
  return c;
}

void matmul_backward(const Matrix& a, const Matrix& b, const Matrix& dc, Matrix* da, Matrix* db) {
  require(dc.rows() == a.rows() && dc.cols() == b.cols(), "matmul_backward: bad dC shape");
  if (da != nullptr) {
    require(da->same_shape(a), "matmul_backward: dA shape mismatch");
    as_eigen(*da).noalias() += as_eigen(dc) * as_eigen(b).transpose();
  }
  if (db != nullptr) {
    require(db->same_shape(b), "matmul_backward: dB shape mismatch");
    as_eigen(*db).noalias() += as_eigen(a).transpose() * as_eigen(dc);
  }
}

Matrix add_bias(const Matrix& x, const Matrix& bias) {
  require(bias.rows() == 1 && bias.cols() == x.cols(), "add_bias: bias must be 1 x cols");
  Matrix y = x;
  for (std::size_t i = 0; i < y.rows(); ++i) {
    auto r = y.row(i);
    for (std::size_t j = 0; j < y.cols(); ++j) r[j] += bias(0, j);
  }
  return y;
}

void add_bias_backward(const Matrix& dy, Matrix& dbias) {
  require(dbias.rows() == 1 && dbias.cols() == dy.cols(), "add_bias_backward: dbias shape");
  for (std::size_t i = 0; i < dy.rows(); ++i) {
    auto r = dy.row(i);
    for (std::size_t j = 0; j < dy.cols(); ++j) dbias(0, j) += r[j];
  }
}

Matrix relu(const Matrix& x) {
  Matrix y = x;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y.data()[i] < 0.0) y.data()[i] = 0.0;
  }
  return y;
}

void relu_backward(const Matrix& x, const Matrix& dy, Matrix& dx) {
  require(x.same_shape(dy) && x.same_shape(dx), "relu_backward: shape mismatch");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x.data()[i] > 0.0) dx.data()[i] += dy.data()[i];
  }
}

Matrix log_softmax_rows(const Matrix& x) {
  Matrix y(x.rows(), x.cols());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    auto in = x.row(i);
    auto out = y.row(i);
    double mx = in[0];
    for (double v : in) mx = std::max(mx, v);
    double sum = 0.0;
    for (std::size_t j = 0; j < in.size(); ++j) sum += std::exp(in[j] - mx);
    const double lse = mx + std::log(sum);
    for (std::size_t j = 0; j < in.size(); ++j) out[j] = in[j] - lse;
  }
  return y;
}

void log_softmax_rows_backward(const Matrix& log_probs, const Matrix& dy, Matrix& dx) {
  require(log_probs.same_shape(dy) && log_probs.same_shape(dx),
          "log_softmax_rows_backward: shape mismatch");
  for (std::size_t i = 0; i < log_probs.rows(); ++i) {
    auto lp = log_probs.row(i);
    auto g = dy.row(i);
    auto out = dx.row(i);
    double gsum = 0.0;
    for (double v : g) gsum += v;
    for (std::size_t j = 0; j < lp.size(); ++j) {
      out[j] += g[j] - std::exp(lp[j]) * gsum;
    }
  }
}

std::vector<double> cosine_rows(const Matrix& a, const Matrix& b) {
  require(a.same_shape(b), "cosine_rows: shape mismatch");
  std::vector<double> cos(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto ra = a.row(i);
    auto rb = b.row(i);
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t j = 0; j < ra.size(); ++j) {
      dot += ra[j] * rb[j];
      na += ra[j] * ra[j];
      nb += rb[j] * rb[j];
    }
    if (na > 0.0 && nb > 0.0) cos[i] = dot / (std::sqrt(na) * std::sqrt(nb));
  }
  return cos;
}

void cosine_rows_backward(const Matrix& a, const Matrix& b, std::span<const double> dcos,
                          Matrix* da, Matrix* db) {
  require(a.same_shape(b), "cosine_rows_backward: shape mismatch");
  require(dcos.size() == a.rows(), "cosine_rows_backward: dcos length");
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto ra = a.row(i);
    auto rb = b.row(i);
    double dot = 0.0, na2 = 0.0, nb2 = 0.0;
    for (std::size_t j = 0; j < ra.size(); ++j) {
      dot += ra[j] * rb[j];
      na2 += ra[j] * ra[j];
      nb2 += rb[j] * rb[j];
    }
    if (na2 == 0.0 || nb2 == 0.0) continue;  // defined as 0, no gradient
    const double na = std::sqrt(na2);
    const double nb = std::sqrt(nb2);
    const double inv = 1.0 / (na * nb);
    const double c = dot * inv;
    const double g = dcos[i];
    if (da != nullptr) {
      auto out = da->row(i);
      for (std::size_t j = 0; j < ra.size(); ++j) {
        out[j] += g * (rb[j] * inv - c * ra[j] / na2);
      }
    }
    if (db != nullptr) {
      auto out = db->row(i);
      for (std::size_t j = 0; j < ra.size(); ++j) {
        out[j] += g * (ra[j] * inv - c * rb[j] / nb2);
      }
    }
  }
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  }
  return t;
}

void axpy(double alpha, const Matrix& x, Matrix& y) {
  require(x.same_shape(y), "axpy: shape mismatch");
  for (std::size_t i = 0; i < x.size(); ++i) y.data()[i] += alpha * x.data()[i];
}

}  // namespace transgnn

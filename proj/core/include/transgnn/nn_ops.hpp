#pragma once

#include <span>
#include <vector>

#include "transgnn/matrix.hpp"

namespace transgnn {

// Differentiable dense primitives. Each forward op has a paired backward
// rule computing the exact analytic gradient; backward functions ACCUMULATE
// into their output arguments, which the caller pre-shapes (usually to
// zero). Gradient verification lives in grad_check.hpp.

Matrix matmul(const Matrix& a, const Matrix& b);
// dA += dC * B^T, dB += A^T * dC; null pointers skip the corresponding term
void matmul_backward(const Matrix& a, const Matrix& b, const Matrix& dc, Matrix* da, Matrix* db);

// bias is 1 x cols, broadcast over rows
Matrix add_bias(const Matrix& x, const Matrix& bias);
void add_bias_backward(const Matrix& dy, Matrix& dbias);  // dbias += column sums

Matrix relu(const Matrix& x);
void relu_backward(const Matrix& x, const Matrix& dy, Matrix& dx);

Matrix log_softmax_rows(const Matrix& x);
// consumes the cached forward output
void log_softmax_rows_backward(const Matrix& log_probs, const Matrix& dy, Matrix& dx);

// Per-row cosine similarity. A row where either operand has zero norm
// yields 0 and propagates no gradient.
std::vector<double> cosine_rows(const Matrix& a, const Matrix& b);
void cosine_rows_backward(const Matrix& a, const Matrix& b, std::span<const double> dcos,
                          Matrix* da, Matrix* db);

Matrix transpose(const Matrix& a);
void axpy(double alpha, const Matrix& x, Matrix& y);  // y += alpha * x

}  // namespace transgnn

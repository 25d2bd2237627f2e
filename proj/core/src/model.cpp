#include "transgnn/model.hpp"

#include <string>

#include "transgnn/errors.hpp"
#include "transgnn/nn_ops.hpp"
#include "transgnn/rng.hpp"

namespace transgnn {

namespace {
// features sparser than this use the CSR fast path for X*W and X^T*dV
constexpr double kSparseFeatureThreshold = 0.25;

double nnz_fraction(const Matrix& x) {
  if (x.size() == 0) return 1.0;
  std::size_t nnz = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x.data()[i] != 0.0) ++nnz;
  }
  return static_cast<double>(nnz) / static_cast<double>(x.size());
}
}  // namespace

BackboneKind backbone_from_name(std::string_view name) {
  if (name == "gcn") return BackboneKind::gcn;
  if (name == "sgc") return BackboneKind::sgc;
  throw ShapeError("unknown backbone '" + std::string(name) + "' (expected gcn or sgc)");
}

const char* backbone_name(BackboneKind kind) {
  return kind == BackboneKind::gcn ? "gcn" : "sgc";
}

DualModel::DualModel(const BackboneConfig& cfg, const Graph& g, const Graph& g_trans,
                     std::uint64_t seed)
    : cfg_(cfg), g_(g), gt_(g_trans), dual_(true) {
  if (g.num_nodes() != g_trans.num_nodes()) {
    throw ShapeError("DualModel: branches must share the node set");
  }
  if (g.features().cols() != g_trans.features().cols() ||
      g.num_classes() != g_trans.num_classes()) {
    throw ShapeError("DualModel: branches must share features and classes");
  }
  ctx_g_ = make_context(g_);
  ctx_t_ = make_context(gt_);
  init_params(seed);
}

DualModel::DualModel(const BackboneConfig& cfg, const Graph& g, std::uint64_t seed)
    : cfg_(cfg), g_(g), dual_(false) {
  ctx_g_ = make_context(g_);
  init_params(seed);
}

const Graph& DualModel::transitivity_graph() const {
  if (!dual_) throw ShapeError("DualModel: no transitivity branch");
  return gt_;
}

std::vector<std::size_t> DualModel::layer_dims() const {
  const int layers = cfg_.layer_count();
  std::vector<std::size_t> dims;
  dims.push_back(g_.features().cols());
  for (int l = 1; l < layers; ++l) dims.push_back(static_cast<std::size_t>(cfg_.hidden_dim));
  dims.push_back(static_cast<std::size_t>(g_.num_classes()));
  return dims;
}

void DualModel::init_params(std::uint64_t seed) {
  if (cfg_.hidden_dim < 1) throw ShapeError("BackboneConfig: hidden_dim must be >= 1");
  if (cfg_.layer_count() < 1) throw ShapeError("BackboneConfig: layer count must be >= 1");
  if (cfg_.kind == BackboneKind::sgc && cfg_.sgc_k < 1) {
    throw ShapeError("BackboneConfig: sgc_k must be >= 1");
  }
  Rng rng(seed);
  const auto dims = layer_dims();
  for (std::size_t l = 1; l < dims.size(); ++l) {
    params_.add("W" + std::to_string(l), glorot_uniform(dims[l - 1], dims[l], rng));
    params_.add("b" + std::to_string(l), Matrix(1, dims[l], 0.0));
  }
}

DualModel::BranchContext DualModel::make_context(const Graph& g) const {
  BranchContext ctx;
  ctx.op = SparseMatrix::normalized_adjacency(g);
  ctx.sparse_features = nnz_fraction(g.features()) < kSparseFeatureThreshold;
  if (ctx.sparse_features) {
    ctx.x_sparse = SparseMatrix::from_dense(g.features());
  } else {
    ctx.x_dense = g.features();
  }
  if (cfg_.layer_count() == 1) {
    Matrix p = g.features();
    for (int s = 0; s < cfg_.propagation_steps(); ++s) p = ctx.op.multiply(p);
    ctx.propagated_features = std::move(p);
  }
  return ctx;
}

BranchOutput DualModel::forward_ctx(const BranchContext& ctx) const {
  const int layers = cfg_.layer_count();
  const int steps = cfg_.propagation_steps();
  BranchOutput out;

  auto propagate = [&](Matrix v) {
    for (int s = 0; s < steps; ++s) v = ctx.op.multiply(v);
    return v;
  };

  Matrix cur;  // H_{l-1} for l >= 2
  for (int l = 1; l <= layers; ++l) {
    const Matrix& w = params_.value("W" + std::to_string(l));
    const Matrix& b = params_.value("b" + std::to_string(l));
    Matrix v;
    if (l == 1) {
      v = ctx.sparse_features ? ctx.x_sparse.multiply(w) : matmul(ctx.x_dense, w);
    } else {
      v = matmul(cur, w);
    }
    Matrix z = add_bias(propagate(std::move(v)), b);
    if (!z.all_finite()) {
      throw NumericError("forward pass produced non-finite values at layer " + std::to_string(l));
    }
    if (l < layers) {
      out.hidden.push_back(relu(z));
      out.pre_acts.push_back(std::move(z));
      cur = out.hidden.back();
    } else {
      out.logits = std::move(z);
    }
  }
  out.embeddings = layers == 1 ? ctx.propagated_features : out.hidden.back();
  return out;
}

void DualModel::backward_ctx(const BranchContext& ctx, const BranchOutput& out,
                             const Matrix& dlogits, const Matrix* dembeddings,
                             GradientSet& grads) const {
  const int layers = cfg_.layer_count();
  const int steps = cfg_.propagation_steps();

  auto transpose_propagate = [&](Matrix v) {
    for (int s = 0; s < steps; ++s) v = ctx.op.transpose_multiply(v);
    return v;
  };
  auto grad_of = [&](const std::string& name) -> Matrix& {
    return grads[params_.index_of(name)];
  };

  // final linear layer: logits = P(H_{L-1} W_L) + b_L
  add_bias_backward(dlogits, grad_of("b" + std::to_string(layers)));
  Matrix dv = transpose_propagate(dlogits);
  if (layers == 1) {
    if (ctx.sparse_features) {
      axpy(1.0, ctx.x_sparse.transpose_multiply(dv), grad_of("W1"));
    } else {
      matmul_backward(ctx.x_dense, params_.value("W1"), dv, nullptr, &grad_of("W1"));
    }
    // single-layer embeddings are propagated features: constant, no gradient
    return;
  }

  const Matrix& w_last = params_.value("W" + std::to_string(layers));
  matmul_backward(out.hidden.back(), w_last, dv, nullptr,
                  &grad_of("W" + std::to_string(layers)));
  Matrix dh = matmul(dv, transpose(w_last));
  if (dembeddings != nullptr) axpy(1.0, *dembeddings, dh);

  for (int l = layers - 1; l >= 1; --l) {
    const Matrix& z = out.pre_acts[static_cast<std::size_t>(l - 1)];
    Matrix dz(z.rows(), z.cols(), 0.0);
    relu_backward(z, dh, dz);
    add_bias_backward(dz, grad_of("b" + std::to_string(l)));
    Matrix dvl = transpose_propagate(std::move(dz));
    if (l == 1) {
      if (ctx.sparse_features) {
        axpy(1.0, ctx.x_sparse.transpose_multiply(dvl), grad_of("W1"));
      } else {
        matmul_backward(ctx.x_dense, params_.value("W1"), dvl, nullptr, &grad_of("W1"));
      }
    } else {
      const Matrix& w = params_.value("W" + std::to_string(l));
      matmul_backward(out.hidden[static_cast<std::size_t>(l - 2)], w, dvl, nullptr,
                      &grad_of("W" + std::to_string(l)));
      dh = matmul(dvl, transpose(w));
    }
  }
}

BranchOutput DualModel::forward_original() const { return forward_ctx(ctx_g_); }

BranchOutput DualModel::forward_transitivity() const {
  if (!dual_) throw ShapeError("DualModel: no transitivity branch");
  return forward_ctx(ctx_t_);
}

BranchOutput DualModel::forward_over(const Graph& other) const {
  if (other.features().cols() != g_.features().cols()) {
    throw ShapeError("forward_over: feature dimension mismatch");
  }
  return forward_ctx(make_context(other));
}

void DualModel::backward_original(const BranchOutput& out, const Matrix& dlogits,
                                  const Matrix* dembeddings, GradientSet& grads) const {
  backward_ctx(ctx_g_, out, dlogits, dembeddings, grads);
}

void DualModel::backward_transitivity(const BranchOutput& out, const Matrix& dlogits,
                                      const Matrix* dembeddings, GradientSet& grads) const {
  if (!dual_) throw ShapeError("DualModel: no transitivity branch");
  backward_ctx(ctx_t_, out, dlogits, dembeddings, grads);
}

}  // namespace transgnn

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "transgnn/graph.hpp"
#include "transgnn/matrix.hpp"
#include "transgnn/param_store.hpp"
#include "transgnn/sparse.hpp"

namespace transgnn {

enum class BackboneKind { gcn, sgc };

BackboneKind backbone_from_name(std::string_view name);  // "gcn" | "sgc"
const char* backbone_name(BackboneKind kind);

struct BackboneConfig {
  BackboneKind kind = BackboneKind::gcn;
  int hidden_dim = 32;
  int num_layers = 2;  // gcn depth; one weight/bias pair per layer
  int sgc_k = 1;       // propagation steps per sgc layer
  int sgc_layers = 1;  // 1 = single collapsed linear layer

  int layer_count() const { return kind == BackboneKind::gcn ? num_layers : sgc_layers; }
  int propagation_steps() const { return kind == BackboneKind::gcn ? 1 : sgc_k; }
};

struct BranchOutput {
  Matrix embeddings;  // hidden-layer activations, or propagated features for
                      // a single-layer sgc (constant w.r.t. parameters)
  Matrix logits;      // n x num_classes

  // forward caches consumed by the paired backward pass
  std::vector<Matrix> pre_acts;  // Z_l before relu, l = 1..L-1
  std::vector<Matrix> hidden;    // H_l = relu(Z_l)
};

// Two message-passing branches over different graph structures reading one
// shared parameter store. Layer l computes
//   Z_l = P(H_{l-1} W_l) + b_l,  H_l = relu(Z_l)   (final layer linear)
// where P applies the normalized adjacency operator (k times for sgc).
// A sparse fast path is used when the feature matrix is mostly zeros.
class DualModel {
public:
  // dual-branch: original graph + transitivity graph
  DualModel(const BackboneConfig& cfg, const Graph& g, const Graph& g_trans, std::uint64_t seed);
  // single-branch baseline
  DualModel(const BackboneConfig& cfg, const Graph& g, std::uint64_t seed);

  const BackboneConfig& config() const noexcept { return cfg_; }
  bool has_transitivity_branch() const noexcept { return dual_; }

  ParameterStore& params() noexcept { return params_; }
  const ParameterStore& params() const noexcept { return params_; }

  const Graph& original_graph() const noexcept { return g_; }
  const Graph& transitivity_graph() const;  // throws if single-branch

  BranchOutput forward_original() const;
  BranchOutput forward_transitivity() const;
  // forward pass over an arbitrary graph with the stored parameters
  // (robustness evaluation propagates over the clean graph)
  BranchOutput forward_over(const Graph& other) const;

  // accumulate parameter gradients for one branch; dembeddings, when given,
  // is an extra upstream gradient on BranchOutput::embeddings
  void backward_original(const BranchOutput& out, const Matrix& dlogits,
                         const Matrix* dembeddings, GradientSet& grads) const;
  void backward_transitivity(const BranchOutput& out, const Matrix& dlogits,
                             const Matrix* dembeddings, GradientSet& grads) const;

private:
  struct BranchContext {
    SparseMatrix op;
    bool sparse_features = false;
    SparseMatrix x_sparse;
    Matrix x_dense;             // kept when the sparse path is off
    Matrix propagated_features;  // S^k X, cached for single-layer sgc
  };

  BranchContext make_context(const Graph& g) const;
  BranchOutput forward_ctx(const BranchContext& ctx) const;
  void backward_ctx(const BranchContext& ctx, const BranchOutput& out, const Matrix& dlogits,
                    const Matrix* dembeddings, GradientSet& grads) const;
  void init_params(std::uint64_t seed);
  std::vector<std::size_t> layer_dims() const;

  BackboneConfig cfg_;
  Graph g_;
  Graph gt_;
  bool dual_ = false;
  BranchContext ctx_g_;
  BranchContext ctx_t_;
  ParameterStore params_;
};

}  // namespace transgnn

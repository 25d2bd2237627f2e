#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "transgnn/graph.hpp"
#include "transgnn/matrix.hpp"

namespace transgnn {

enum class LossKind { base, trans, sim };

const char* loss_kind_name(LossKind kind);

struct LossTerm {
  LossKind kind;
  int sign;  // +1 or -1
};

// Declarative combination of loss terms, e.g. "base+trans-sim". `base`
// appears exactly once with positive sign; no duplicate kinds.
struct LossCombo {
  std::vector<LossTerm> terms;

  static LossCombo parse(std::string_view text);
  std::string to_string() const;

  bool has(LossKind kind) const;
  int sign_of(LossKind kind) const;  // 0 when absent

  // the five canonical combinations, in ablation order
  static std::vector<LossCombo> ablation_set();
};

// Cross-entropy summed (optionally averaged) over the masked nodes.
struct CeResult {
  double value = 0.0;
  Matrix dlogits;
};
CeResult supervised_ce(const Matrix& logits, const std::vector<std::int32_t>& labels,
                       const std::vector<std::uint32_t>& mask, bool average = false);

// Negative-sampling objective over embedding rows:
//   sum_{v in train} sum_{u in N(v)} [ -log s(z_v . z_u)
//        - sum_{q=1..Q} log s(-z_v . z_{v_q}) ],  v_q ~ P_q
// with P_q proportional to degree^0.75. N(v) is the direct neighbor set, or
// the set of nodes met on fixed-length random walks when use_walks is set.
// Nodes with empty N(v) contribute nothing.
struct NsConfig {
  int negatives = 5;
  bool use_walks = false;
  int walk_length = 3;
  int walks_per_node = 2;
  std::uint64_t seed = 1;
};
struct NsResult {
  double value = 0.0;
  Matrix dembeddings;
};
NsResult unsupervised_ns(const Matrix& embeddings, const Graph& g, const NsConfig& cfg);

// Mean over nodes of (1 - cosine(Z_G[v], Z_G'[v])). Rows where either side
// has zero norm contribute 1 (cosine defined as 0) and no gradient.
struct SimResult {
  double value = 0.0;
  Matrix dz_original;
  Matrix dz_transitivity;
};
SimResult sim_loss(const Matrix& z_original, const Matrix& z_transitivity);

// sign-weighted sum of the supplied term values
double combine(const std::vector<std::pair<LossTerm, double>>& term_values);

}  // namespace transgnn

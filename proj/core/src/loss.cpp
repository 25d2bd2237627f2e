#include "transgnn/loss.hpp"

#include <algorithm>
#include <cmath>

#include "transgnn/errors.hpp"
#include "transgnn/nn_ops.hpp"
#include "transgnn/rng.hpp"

namespace transgnn {

const char* loss_kind_name(LossKind kind) {
  switch (kind) {
    case LossKind::base: return "base";
    case LossKind::trans: return "trans";
    case LossKind::sim: return "sim";
  }
  return "base";
}

LossCombo LossCombo::parse(std::string_view text) {
  LossCombo combo;
  std::size_t pos = 0;
  int sign = +1;
  auto fail = [&](const std::string& why) {
    throw ShapeError("invalid loss combo '" + std::string(text) + "': " + why +
                     " (valid: base, base+trans, base+sim, base+trans+sim, base+trans-sim)");
  };
  while (pos < text.size()) {
    std::size_t end = text.find_first_of("+-", pos);
    std::string_view tok = text.substr(pos, end == std::string_view::npos ? end : end - pos);
    LossKind kind;
    if (tok == "base") {
      kind = LossKind::base;
    } else if (tok == "trans") {
      kind = LossKind::trans;
    } else if (tok == "sim") {
      kind = LossKind::sim;
    } else {
      fail("unknown term '" + std::string(tok) + "'");
      return combo;  // unreachable
    }
    if (combo.has(kind)) fail("duplicate term '" + std::string(tok) + "'");
    combo.terms.push_back({kind, sign});
    if (end == std::string_view::npos) break;
    sign = text[end] == '+' ? +1 : -1;
    pos = end + 1;
    if (pos >= text.size()) fail("trailing operator");
  }
  if (combo.terms.empty()) fail("empty");
  if (!combo.has(LossKind::base)) fail("must contain 'base'");
  if (combo.sign_of(LossKind::base) != +1) fail("'base' must have positive sign");
  return combo;
}

std::string LossCombo::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i > 0 || terms[i].sign < 0) s += terms[i].sign > 0 ? "+" : "-";
    s += loss_kind_name(terms[i].kind);
  }
  return s;
}

bool LossCombo::has(LossKind kind) const {
  for (const auto& t : terms) {
    if (t.kind == kind) return true;
  }
  return false;
}

int LossCombo::sign_of(LossKind kind) const {
  for (const auto& t : terms) {
    if (t.kind == kind) return t.sign;
  }
  return 0;
}

std::vector<LossCombo> LossCombo::ablation_set() {
  return {parse("base"), parse("base+trans"), parse("base+sim"), parse("base+trans+sim"),
          parse("base+trans-sim")};
}

CeResult supervised_ce(const Matrix& logits, const std::vector<std::int32_t>& labels,
                       const std::vector<std::uint32_t>& mask, bool average) {
  if (mask.empty()) throw ShapeError("supervised_ce: empty node mask");
  if (labels.size() != logits.rows()) throw ShapeError("supervised_ce: label/logit mismatch");
  const std::size_t num_classes = logits.cols();
  const Matrix logp = log_softmax_rows(logits);

  CeResult res;
  res.dlogits = Matrix(logits.rows(), logits.cols(), 0.0);
  const double scale = average ? 1.0 / static_cast<double>(mask.size()) : 1.0;
  for (std::uint32_t v : mask) {
    if (v >= logits.rows()) throw ShapeError("supervised_ce: mask index out of range");
    const std::int32_t label = labels[v];
    if (label < 0 || static_cast<std::size_t>(label) >= num_classes) {
      throw ShapeError("supervised_ce: label out of range at node " + std::to_string(v));
    }
    res.value -= scale * logp(v, static_cast<std::size_t>(label));
    auto lp = logp.row(v);
    auto dl = res.dlogits.row(v);
    for (std::size_t c = 0; c < num_classes; ++c) dl[c] += scale * std::exp(lp[c]);
    dl[static_cast<std::size_t>(label)] -= scale;
  }
  return res;
}

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// unigram sampler over nodes with weight degree^0.75
class NegativeSampler {
public:
  NegativeSampler(const Graph& g, Rng& rng) : rng_(rng) {
    cumulative_.resize(g.num_nodes());
    double acc = 0.0;
    for (std::uint32_t v = 0; v < g.num_nodes(); ++v) {
      acc += std::pow(static_cast<double>(g.degree(v)), 0.75);
      cumulative_[v] = acc;
    }
    total_ = acc;
  }

  bool usable() const { return total_ > 0.0; }

  std::uint32_t draw() {
    const double x = rng_.next_double() * total_;
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), x);
    return static_cast<std::uint32_t>(
        std::min<std::size_t>(cumulative_.size() - 1,
                              static_cast<std::size_t>(it - cumulative_.begin())));
  }

private:
  Rng& rng_;
  std::vector<double> cumulative_;
  double total_ = 0.0;
};

std::vector<std::uint32_t> walk_neighborhood(const Graph& g, std::uint32_t v, const NsConfig& cfg,
                                             Rng& rng) {
  std::vector<std::uint32_t> met;
  for (int w = 0; w < cfg.walks_per_node; ++w) {
    std::uint32_t cur = v;
    for (int step = 0; step < cfg.walk_length; ++step) {
      auto nb = g.neighbors(cur);
      if (nb.empty()) break;
      cur = nb[rng.next_below(nb.size())];
      if (cur != v) met.push_back(cur);
    }
  }
  std::sort(met.begin(), met.end());
  met.erase(std::unique(met.begin(), met.end()), met.end());
  return met;
}

}  // namespace

NsResult unsupervised_ns(const Matrix& embeddings, const Graph& g, const NsConfig& cfg) {
  if (embeddings.rows() != g.num_nodes()) {
    throw ShapeError("unsupervised_ns: embedding rows != node count");
  }
  if (cfg.negatives < 1) throw ShapeError("unsupervised_ns: negatives must be >= 1");

  NsResult res;
  res.dembeddings = Matrix(embeddings.rows(), embeddings.cols(), 0.0);
  Rng rng(cfg.seed);
  NegativeSampler sampler(g, rng);
  const std::size_t d = embeddings.cols();

  auto dot = [&](std::uint32_t a, std::uint32_t b) {
    auto ra = embeddings.row(a);
    auto rb = embeddings.row(b);
    double s = 0.0;
    for (std::size_t j = 0; j < d; ++j) s += ra[j] * rb[j];
    return s;
  };
  auto accumulate = [&](std::uint32_t target, double coeff, std::uint32_t source) {
    auto out = res.dembeddings.row(target);
    auto in = embeddings.row(source);
    for (std::size_t j = 0; j < d; ++j) out[j] += coeff * in[j];
  };

  for (std::uint32_t v : g.split_nodes(Split::train)) {
    std::vector<std::uint32_t> context;
    if (cfg.use_walks) {
      context = walk_neighborhood(g, v, cfg, rng);
    } else {
      auto nb = g.neighbors(v);
      context.assign(nb.begin(), nb.end());
    }
    if (context.empty()) continue;  // no similar nodes: contributes zero
    for (std::uint32_t u : context) {
      const double s_pos = sigmoid(dot(v, u));
      res.value -= std::log(std::max(s_pos, 1e-300));
      // d/dx -log sigmoid(x) = sigmoid(x) - 1
      accumulate(v, s_pos - 1.0, u);
      accumulate(u, s_pos - 1.0, v);
      for (int q = 0; q < cfg.negatives; ++q) {
        if (!sampler.usable()) break;
        const std::uint32_t neg = sampler.draw();
        const double x = dot(v, neg);
        res.value -= std::log(std::max(sigmoid(-x), 1e-300));
        // d/dx -log sigmoid(-x) = sigmoid(x)
        const double coeff = sigmoid(x);
        accumulate(v, coeff, neg);
        accumulate(neg, coeff, v);
      }
    }
  }
  return res;
}

SimResult sim_loss(const Matrix& z_original, const Matrix& z_transitivity) {
  if (!z_original.same_shape(z_transitivity)) throw ShapeError("sim_loss: shape mismatch");
  if (z_original.rows() == 0) throw ShapeError("sim_loss: empty embeddings");
  const auto cos = cosine_rows(z_original, z_transitivity);
  SimResult res;
  const double inv_n = 1.0 / static_cast<double>(z_original.rows());
  for (double c : cos) res.value += (1.0 - c) * inv_n;
  res.dz_original = Matrix(z_original.rows(), z_original.cols(), 0.0);
  res.dz_transitivity = Matrix(z_original.rows(), z_original.cols(), 0.0);
  std::vector<double> dcos(z_original.rows(), -inv_n);
  cosine_rows_backward(z_original, z_transitivity, dcos, &res.dz_original,
                       &res.dz_transitivity);
  return res;
}

double combine(const std::vector<std::pair<LossTerm, double>>& term_values) {
  double total = 0.0;
  for (const auto& [term, value] : term_values) {
    total += static_cast<double>(term.sign) * value;
  }
  return total;
}

}  // namespace transgnn

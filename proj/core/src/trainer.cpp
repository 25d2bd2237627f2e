#include "transgnn/trainer.hpp"

#include <cmath>
#include <string>

#include "transgnn/errors.hpp"
#include "transgnn/nn_ops.hpp"

namespace transgnn {

namespace {

double split_accuracy(const std::vector<std::int32_t>& preds, const Graph& g, Split split) {
  std::size_t total = 0, correct = 0;
  for (std::uint32_t v = 0; v < g.num_nodes(); ++v) {
    if (g.split()[v] != split) continue;
    ++total;
    if (preds[v] == g.labels()[v]) ++correct;
  }
  return total > 0 ? static_cast<double>(correct) / static_cast<double>(total) : 0.0;
}

struct TermValues {
  double base = 0.0;
  double trans = 0.0;
  double sim = 0.0;
};

// Per-epoch loss evaluation and gradient accumulation shared by the dual
// trainer and the single-branch baseline.
class EpochStep {
public:
  EpochStep(const TrainConfig& cfg, const DualModel& model, const Graph& g,
            const std::vector<std::uint32_t>& train_nodes, int epoch)
      : cfg_(cfg), model_(model), g_(g), train_nodes_(train_nodes), epoch_(epoch) {}

  void forward() {
    out_g_ = model_.forward_original();
    needs_trans_ = cfg_.combo.has(LossKind::trans) || cfg_.combo.has(LossKind::sim);
    if (needs_trans_ && model_.has_transitivity_branch()) {
      out_t_ = model_.forward_transitivity();
    } else {
      needs_trans_ = false;
    }
  }

  const BranchOutput& original_output() const { return out_g_; }

  TermValues term_values() const { return values_; }

  double compute_losses() {
    values_ = {};
    const auto& labels = g_.labels();
    if (cfg_.unsupervised) {
      NsConfig ns = cfg_.ns;
      ns.seed = cfg_.ns.seed + static_cast<std::uint64_t>(epoch_) * 0x9e3779b97f4a7c15ULL;
      base_ns_ = unsupervised_ns(out_g_.embeddings, g_, ns);
      values_.base = base_ns_.value;
      if (cfg_.combo.has(LossKind::trans) && needs_trans_) {
        trans_ns_ = unsupervised_ns(out_t_.embeddings, model_.transitivity_graph(), ns);
        values_.trans = trans_ns_.value;
      }
    } else {
      base_ce_ = supervised_ce(out_g_.logits, labels, train_nodes_, cfg_.average_ce);
      values_.base = base_ce_.value;
      if (cfg_.combo.has(LossKind::trans) && needs_trans_) {
        trans_ce_ = supervised_ce(out_t_.logits, labels, train_nodes_, cfg_.average_ce);
        values_.trans = trans_ce_.value;
      }
    }
    if (cfg_.combo.has(LossKind::sim) && needs_trans_) {
      sim_ = sim_loss(out_g_.embeddings, out_t_.embeddings);
      values_.sim = sim_.value;
    }
    std::vector<std::pair<LossTerm, double>> terms;
    for (const auto& t : cfg_.combo.terms) {
      switch (t.kind) {
        case LossKind::base: terms.push_back({t, values_.base}); break;
        case LossKind::trans: terms.push_back({t, values_.trans}); break;
        case LossKind::sim: terms.push_back({t, values_.sim}); break;
      }
    }
    return combine(terms);
  }

  // accumulates the sign-weighted gradient of the whole combination
  void backward(GradientSet& grads) const {
    backward_selected(grads, true, true, true);
  }

  // accumulates the gradient of a single term (used by the identity check)
  void backward_term(LossKind kind, GradientSet& grads) const {
    backward_selected(grads, kind == LossKind::base, kind == LossKind::trans,
                      kind == LossKind::sim, /*unsigned_terms=*/true);
  }

private:
  void backward_selected(GradientSet& grads, bool with_base, bool with_trans, bool with_sim,
                         bool unsigned_terms = false) const {
    const double s_base = unsigned_terms ? 1.0 : cfg_.combo.sign_of(LossKind::base);
    const double s_trans = unsigned_terms ? 1.0 : cfg_.combo.sign_of(LossKind::trans);
    const double s_sim = unsigned_terms ? 1.0 : cfg_.combo.sign_of(LossKind::sim);

    with_trans = with_trans && cfg_.combo.has(LossKind::trans) && needs_trans_;
    with_sim = with_sim && cfg_.combo.has(LossKind::sim) && needs_trans_;

    // original branch
    {
      Matrix dlogits(out_g_.logits.rows(), out_g_.logits.cols(), 0.0);
      Matrix demb(out_g_.embeddings.rows(), out_g_.embeddings.cols(), 0.0);
      bool any_emb = false;
      if (with_base) {
        if (cfg_.unsupervised) {
          axpy(s_base, base_ns_.dembeddings, demb);
          any_emb = true;
        } else {
          axpy(s_base, base_ce_.dlogits, dlogits);
        }
      }
      if (with_sim) {
        axpy(s_sim, sim_.dz_original, demb);
        any_emb = true;
      }
      if (with_base || any_emb) {
        model_.backward_original(out_g_, dlogits, any_emb ? &demb : nullptr, grads);
      }
    }
    // transitivity branch
    if (with_trans || with_sim) {
      Matrix dlogits(out_t_.logits.rows(), out_t_.logits.cols(), 0.0);
      Matrix demb(out_t_.embeddings.rows(), out_t_.embeddings.cols(), 0.0);
      bool any_emb = false;
      if (with_trans) {
        if (cfg_.unsupervised) {
          axpy(s_trans, trans_ns_.dembeddings, demb);
          any_emb = true;
        } else {
          axpy(s_trans, trans_ce_.dlogits, dlogits);
        }
      }
      if (with_sim) {
        axpy(s_sim, sim_.dz_transitivity, demb);
        any_emb = true;
      }
      model_.backward_transitivity(out_t_, dlogits, any_emb ? &demb : nullptr, grads);
    }
  }

  const TrainConfig& cfg_;
  const DualModel& model_;
  const Graph& g_;
  const std::vector<std::uint32_t>& train_nodes_;
  int epoch_;

  bool needs_trans_ = false;
  BranchOutput out_g_;
  BranchOutput out_t_;
  CeResult base_ce_;
  CeResult trans_ce_;
  NsResult base_ns_;
  NsResult trans_ns_;
  SimResult sim_;
  TermValues values_;
};

void check_gradient_identity(const EpochStep& step, const TrainConfig& cfg,
                             const ParameterStore& params, const GradientSet& applied) {
  GradientSet expected = GradientSet::zeros_like(params);
  for (const auto& term : cfg.combo.terms) {
    GradientSet term_grad = GradientSet::zeros_like(params);
    step.backward_term(term.kind, term_grad);
    for (std::size_t p = 0; p < expected.count(); ++p) {
      axpy(static_cast<double>(term.sign), term_grad[p], expected[p]);
    }
  }
  for (std::size_t p = 0; p < expected.count(); ++p) {
    for (std::size_t i = 0; i < expected[p].size(); ++i) {
      const double diff = std::fabs(expected[p].data()[i] - applied[p].data()[i]);
      if (diff > 1e-10) {
        throw NumericError("gradient identity violated at parameter " + params.name(p) +
                           ": |delta| = " + std::to_string(diff));
      }
    }
  }
}

TrainOutcome run_loop(const TrainConfig& cfg, DualModel model, const Graph& g) {
  const auto train_nodes = g.split_nodes(Split::train);
  if (train_nodes.empty()) throw DataError("training requires at least one train node");
  const bool has_val = !g.split_nodes(Split::val).empty();

  RunHistory history;
  AdamConfig adam{cfg.lr};
  ParameterStore best_params = model.params();
  double best_val = -1.0;
  int best_epoch = -1;

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    EpochStep step(cfg, model, g, train_nodes, epoch);
    step.forward();

    EpochRecord rec;
    rec.total_loss = step.compute_losses();
    const TermValues values = step.term_values();
    rec.base_value = values.base;
    rec.trans_value = values.trans;
    rec.sim_value = values.sim;
    if (!std::isfinite(rec.total_loss)) {
      throw NumericError("non-finite loss at epoch " + std::to_string(epoch));
    }

    const auto preds = argmax_rows(step.original_output().logits);
    rec.train_acc = split_accuracy(preds, g, Split::train);
    rec.val_acc = split_accuracy(preds, g, Split::val);
    history.epochs.push_back(rec);

    // the parameters that produced this epoch's validation accuracy are the
    // ones checkpointed, i.e. before this epoch's update
    if (has_val ? rec.val_acc > best_val : true) {
      best_val = rec.val_acc;
      best_epoch = epoch;
      best_params.assign_values(model.params());
    }

    GradientSet grads = GradientSet::zeros_like(model.params());
    step.backward(grads);
    if (!grads.all_finite()) {
      throw NumericError("non-finite gradient at epoch " + std::to_string(epoch));
    }
    if (epoch == 0 && cfg.check_gradient_identity) {
      check_gradient_identity(step, cfg, model.params(), grads);
    }
    adam_step(model.params(), grads, adam);
  }

  model.params().assign_values(best_params);
  history.selected_epoch = best_epoch;
  return TrainOutcome{std::move(model), std::move(history)};
}

}  // namespace

TrainOutcome train(const TrainConfig& cfg, const Graph& g, const Graph& g_trans) {
  if (cfg.epochs < 1) throw ShapeError("train: epochs must be >= 1");
  if (cfg.lr <= 0.0) throw ShapeError("train: lr must be > 0");
  if (g.num_nodes() != g_trans.num_nodes()) throw ShapeError("train: node count mismatch");
  DualModel model(cfg.backbone, g, g_trans, cfg.seed);
  return run_loop(cfg, std::move(model), g);
}

TrainOutcome run_baseline(const TrainConfig& cfg, const Graph& g) {
  if (cfg.epochs < 1) throw ShapeError("run_baseline: epochs must be >= 1");
  if (cfg.lr <= 0.0) throw ShapeError("run_baseline: lr must be > 0");
  TrainConfig base_cfg = cfg;
  base_cfg.combo = LossCombo::parse("base");
  DualModel model(cfg.backbone, g, cfg.seed);
  return run_loop(base_cfg, std::move(model), g);
}

LossProbe probe_loss(const TrainConfig& cfg, const DualModel& model) {
  const Graph& g = model.original_graph();
  const auto train_nodes = g.split_nodes(Split::train);
  if (train_nodes.empty()) throw DataError("probe_loss: no train nodes");
  EpochStep step(cfg, model, g, train_nodes, /*epoch=*/0);
  step.forward();
  LossProbe probe;
  probe.total = step.compute_losses();
  probe.grads = GradientSet::zeros_like(model.params());
  step.backward(probe.grads);
  return probe;
}

double probe_loss_value(const TrainConfig& cfg, const DualModel& model) {
  const Graph& g = model.original_graph();
  const auto train_nodes = g.split_nodes(Split::train);
  if (train_nodes.empty()) throw DataError("probe_loss_value: no train nodes");
  EpochStep step(cfg, model, g, train_nodes, /*epoch=*/0);
  step.forward();
  return step.compute_losses();
}

GradientSet probe_term_gradient(const TrainConfig& cfg, const DualModel& model, LossKind kind) {
  const Graph& g = model.original_graph();
  const auto train_nodes = g.split_nodes(Split::train);
  if (train_nodes.empty()) throw DataError("probe_term_gradient: no train nodes");
  EpochStep step(cfg, model, g, train_nodes, /*epoch=*/0);
  step.forward();
  step.compute_losses();
  GradientSet grads = GradientSet::zeros_like(model.params());
  step.backward_term(kind, grads);
  return grads;
}

Metrics evaluate(const DualModel& model, const Graph& over, Split split) {
  const BranchOutput out = model.forward_over(over);
  const auto preds = argmax_rows(out.logits);
  std::vector<std::int32_t> mask_labels, mask_preds;
  for (std::uint32_t v = 0; v < over.num_nodes(); ++v) {
    if (over.split()[v] != split) continue;
    mask_labels.push_back(over.labels()[v]);
    mask_preds.push_back(preds[v]);
  }
  if (mask_labels.empty()) {
    throw ShapeError(std::string("evaluate: empty split '") + split_name(split) + "'");
  }
  return compute_metrics(mask_labels, mask_preds, over.num_classes());
}

}  // namespace transgnn

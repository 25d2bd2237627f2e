#pragma once

#include <cstdint>

#include "transgnn/graph.hpp"
#include "transgnn/loss.hpp"
#include "transgnn/metrics.hpp"
#include "transgnn/model.hpp"

namespace transgnn {

struct TrainConfig {
  BackboneConfig backbone;
  LossCombo combo = LossCombo::parse("base+trans");
  double lr = 0.01;
  int epochs = 200;
  std::uint64_t seed = 1;
  bool average_ce = false;    // cross-entropy is summed over training nodes by default
  bool unsupervised = false;  // base/trans become negative-sampling losses
  NsConfig ns;
  // one-time epoch-0 assertion that the applied gradient equals the
  // sign-weighted sum of per-term gradients (tolerance 1e-10)
  bool check_gradient_identity = true;
};

struct EpochRecord {
  double total_loss = 0.0;
  double base_value = 0.0;
  double trans_value = 0.0;
  double sim_value = 0.0;
  double train_acc = 0.0;
  double val_acc = 0.0;
};

struct RunHistory {
  std::vector<EpochRecord> epochs;
  int selected_epoch = -1;  // best validation accuracy (earliest on ties)
};

struct TrainOutcome {
  DualModel model;  // parameters restored to the selected checkpoint
  RunHistory history;
};

// One epoch = forward both branches -> per-term losses -> sign-weighted
// combination -> backward through both branches into the shared store ->
// one Adam step. Deterministic for a fixed (config, data, seed).
TrainOutcome train(const TrainConfig& cfg, const Graph& g, const Graph& g_trans);

// Single-branch loop over G with the plain `base` loss.
TrainOutcome run_baseline(const TrainConfig& cfg, const Graph& g);

// Prediction metrics of the G-branch logits on the selected split of
// `over`; the propagation operator is rebuilt from `over`.
Metrics evaluate(const DualModel& model, const Graph& over, Split split);

// One forward/backward evaluation of the combined objective at the current
// parameters, without an optimizer step. Used by gradient checking and the
// additivity tests.
struct LossProbe {
  double total = 0.0;
  GradientSet grads;  // sign-weighted combination gradient
};
LossProbe probe_loss(const TrainConfig& cfg, const DualModel& model);
double probe_loss_value(const TrainConfig& cfg, const DualModel& model);
// gradient of a single term, unsigned
GradientSet probe_term_gradient(const TrainConfig& cfg, const DualModel& model, LossKind kind);

}  // namespace transgnn

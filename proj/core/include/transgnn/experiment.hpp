#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "transgnn/graph.hpp"
#include "transgnn/loss.hpp"
#include "transgnn/model.hpp"
#include "transgnn/partition.hpp"
#include "transgnn/simrank.hpp"
#include "transgnn/trainer.hpp"
#include "transgnn/transitivity.hpp"

namespace transgnn {

// exit codes shared with the CLI (sysexits-style)
namespace exit_codes {
constexpr int ok = 0;
constexpr int usage = 64;    // bad arguments
constexpr int data = 65;     // malformed input data
constexpr int noinput = 66;  // missing input file
constexpr int numeric = 70;  // non-finite values, diverged runs
constexpr int io = 74;       // filesystem failures
}  // namespace exit_codes

struct ExperimentManifest {
  std::filesystem::path dataset_dir;
  std::string dataset_name;  // empty: dataset_dir basename
  BackboneConfig backbone;
  double threshold = -1.0;  // < 0: per-dataset default
  SimRankConfig simrank;
  std::uint32_t clusters = 0;  // 0: default_cluster_count
  std::uint64_t partition_seed = 1;
  LossCombo combo = LossCombo::parse("base+trans");
  int seeds = 10;
  std::uint64_t seed_base = 1;
  int epochs = 200;
  double lr = 0.01;
  bool average_ce = false;
  bool unsupervised = false;
  NsConfig ns;
  std::filesystem::path out_dir = "out";
  int jobs = 1;
  bool plot_data = false;
  bool baseline_only = false;
  bool trans_only = false;
  std::vector<double> sweep_thresholds;  // optional threshold sweep for cmd_train
  std::optional<std::filesystem::path> cache_dir;  // unset: $TRANSGNN_CACHE_DIR, else out_dir/cache
};

// per-dataset default similarity thresholds (tuned values; overridable)
std::optional<double> default_threshold(const std::string& dataset_name);

std::string resolve_dataset_name(const ExperimentManifest& m);
double resolve_threshold(const ExperimentManifest& m);  // throws when unknown and unset
std::filesystem::path resolve_cache_dir(const ExperimentManifest& m);

struct PreparedData {
  Graph original;
  Graph trans_pruned;  // the pruned transitivity graph fed to training
  std::size_t edges_pre_prune = 0;
  std::size_t edges_post_prune = 0;
  double threshold = 0.0;
  std::uint32_t clusters = 0;
  int simrank_iterations = 0;
  bool simrank_converged = false;
};

// similarity -> transitivity graph -> clustering -> intra-cluster pruning
PreparedData prepare_pipeline(const Graph& g, const ExperimentManifest& m);

// Subcommand drivers. All of them are deterministic under a fixed manifest
// and write byte-stable outputs; they throw on failure.
void cmd_prepare(const ExperimentManifest& m);
void cmd_train(const ExperimentManifest& m);
void cmd_robustness(const ExperimentManifest& m);
void cmd_ablation(const ExperimentManifest& m);

// Finite-difference verification of the full objective across
// {gcn, sgc} x the five loss combinations on a built-in 12-node fixture.
// Returns true when the report matches expectations: all checks within
// tolerance normally, or the corrupted check exceeding 1e-2 when
// inject_fault is set.
bool cmd_gradcheck(const ExperimentManifest& m, bool inject_fault);

// writes a generated dataset (citation_preset names) as a dataset directory
void cmd_make_dataset(const std::string& preset, const std::filesystem::path& out_dir,
                      std::uint64_t seed);

}  // namespace transgnn

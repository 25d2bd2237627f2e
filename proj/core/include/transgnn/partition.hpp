#pragma once

#include <cstdint>
#include <vector>

#include "transgnn/graph.hpp"

namespace transgnn {

struct Partition {
  std::vector<std::uint32_t> assignment;  // node -> cluster id in [0, k)
  std::uint32_t k = 0;
};

struct PartitionConfig {
  std::uint32_t k = 0;         // 0 = default_cluster_count(n)
  std::uint64_t seed = 1;
  double balance = 0.30;       // clusters stay within (1 + balance) * average weight
  int refine_passes = 10;
};

// weighted edge cut before/after refinement at one uncoarsening level;
// coarse-level weighted cuts equal the fine-graph cut of the projected
// partition, so refinement monotonicity is observable per level
struct LevelStats {
  std::size_t coarse_nodes = 0;
  std::uint64_t cut_before_refine = 0;
  std::uint64_t cut_after_refine = 0;
};

struct PartitionResult {
  Partition partition;
  std::vector<LevelStats> levels;  // coarsest first
};

// Multilevel k-way partitioning: repeated heavy-edge-matching coarsening,
// greedy region-growing initial partition on the coarsest graph, then
// boundary single-node refinement at each uncoarsening level. Deterministic
// for a fixed (graph, config); refinement accepts strict improvements only.
PartitionResult partition_graph(const Graph& g, const PartitionConfig& cfg);

// number of edges with endpoints in different clusters
std::uint64_t edge_cut(const Graph& g, const Partition& p);

inline std::uint32_t default_cluster_count(std::uint32_t num_nodes) {
  const std::uint32_t k = (num_nodes + 199) / 200;
  return k < 2 ? 2 : k;
}

}  // namespace transgnn

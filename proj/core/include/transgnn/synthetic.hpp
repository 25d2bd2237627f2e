#pragma once

#include <cstdint>
#include <string>

#include "transgnn/graph.hpp"

namespace transgnn {

// Seeded generators for fixtures and desk-scale benchmark datasets. All of
// them are deterministic functions of their arguments.

// Citation-style benchmark: homophilous class-blocked edges plus sparse
// bag-of-words features drawn from per-class topic blocks.
struct CitationSpec {
  std::uint32_t num_nodes = 0;
  std::int32_t num_classes = 0;
  std::size_t feat_dim = 0;
  std::vector<double> class_weights;  // relative class sizes; empty = uniform
  double avg_degree = 4.0;
  double homophily = 0.8;     // fraction of intra-class edges
  int words_per_doc = 18;     // feature draws per node
  double topic_purity = 0.7;  // probability a word comes from the class block
  int train_per_class = 20;
  std::size_t val_count = 500;
  std::size_t test_count = 1000;
};

Graph synthetic_citation(const CitationSpec& spec, std::uint64_t seed);

// named presets; recognized: "cora-syn", "citeseer-syn"
CitationSpec citation_preset(const std::string& name);

// n nodes in two equal classes; features are a class indicator plus noise
// columns, so the task is linearly separable
Graph two_cluster_fixture(std::uint32_t num_nodes, double noise, std::uint64_t seed);

// two 4-cliques joined by a single bridge edge 0-4 (8 nodes)
Graph two_cliques_bridge();

// 12-node fixture with two dense groups and a few cross links; small enough
// for finite-difference checks, structured enough that its transitivity
// graph is nonempty at moderate thresholds
Graph twelve_node_fixture();

// Erdos-Renyi-style G(n, m) with random features/labels/split
Graph random_graph(std::uint32_t num_nodes, std::size_t num_edges, std::int32_t num_classes,
                   std::size_t feat_dim, std::uint64_t seed);

// simple path 0-1-2-...-(n-1)
Graph path_graph(std::uint32_t num_nodes);

}  // namespace transgnn

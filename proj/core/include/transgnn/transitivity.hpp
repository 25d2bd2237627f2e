#pragma once

#include "transgnn/graph.hpp"
#include "transgnn/partition.hpp"
#include "transgnn/simrank.hpp"

namespace transgnn {

// Graph over the same node set as its origin whose edges join similar but
// non-adjacent node pairs. Node payloads are shared with the origin graph;
// the edge sets are disjoint by construction.
struct TransitivityGraph {
  Graph graph;
  double threshold_used = 0.0;
  std::size_t origin_edge_count = 0;
};

// edges = { {u,v} : u != v, sim(u,v) >= threshold, {u,v} not in E(origin) }
TransitivityGraph build_transitivity_graph(const Graph& origin, const SimilarityMatrix& sim,
                                           double threshold);

// keeps exactly the edges whose endpoints share a cluster
TransitivityGraph prune_intercluster(const TransitivityGraph& tg, const Partition& partition);

}  // namespace transgnn

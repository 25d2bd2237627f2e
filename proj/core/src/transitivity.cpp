#include "transgnn/transitivity.hpp"

#include <string>

#include "transgnn/errors.hpp"

namespace transgnn {

TransitivityGraph build_transitivity_graph(const Graph& origin, const SimilarityMatrix& sim,
                                           double threshold) {
  if (sim.size() != origin.num_nodes()) {
    throw ShapeError("build_transitivity_graph: similarity over " + std::to_string(sim.size()) +
                     " nodes, graph has " + std::to_string(origin.num_nodes()));
  }
  if (threshold < 0.0 || threshold > 1.0) {
    throw ShapeError("build_transitivity_graph: threshold must lie in [0, 1]");
  }
  std::vector<Edge> edges;
  const std::uint32_t n = origin.num_nodes();
  for (std::uint32_t u = 0; u + 1 < n; ++u) {
    auto row = sim.row(u);
    auto nb = origin.neighbors(u);
    std::size_t k = 0;
    for (std::uint32_t v = u + 1; v < n; ++v) {
      if (row[v] < threshold) continue;
      while (k < nb.size() && nb[k] < v) ++k;
      if (k < nb.size() && nb[k] == v) continue;  // adjacent in the origin graph
      edges.emplace_back(u, v);
    }
  }
  TransitivityGraph tg{Graph(origin, std::move(edges)), threshold, origin.num_edges()};
  return tg;
}

TransitivityGraph prune_intercluster(const TransitivityGraph& tg, const Partition& partition) {
  if (partition.assignment.size() != tg.graph.num_nodes()) {
    throw ShapeError("prune_intercluster: partition covers " +
                     std::to_string(partition.assignment.size()) + " nodes, graph has " +
                     std::to_string(tg.graph.num_nodes()));
  }
  std::vector<Edge> kept;
  kept.reserve(tg.graph.num_edges());
  for (const auto& [u, v] : tg.graph.edges()) {
    if (partition.assignment[u] == partition.assignment[v]) kept.emplace_back(u, v);
  }
  return TransitivityGraph{Graph(tg.graph, std::move(kept)), tg.threshold_used,
                           tg.origin_edge_count};
}

}  // namespace transgnn

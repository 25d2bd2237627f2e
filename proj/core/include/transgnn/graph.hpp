#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "transgnn/matrix.hpp"

namespace transgnn {

enum class Split : std::uint8_t { train = 0, val = 1, test = 2, none = 3 };

const char* split_name(Split s);
Split split_from_name(std::string_view name);  // throws DataError on unknown token

using Edge = std::pair<std::uint32_t, std::uint32_t>;

// Immutable undirected simple graph with node features, labels and a
// train/val/test split. Graphs derived from one another (perturbed copies,
// transitivity graphs) share the node payload storage.
class Graph {
public:
  Graph() = default;
  Graph(std::uint32_t num_nodes, std::vector<Edge> edges, Matrix features,
        std::vector<std::int32_t> labels, std::vector<Split> split, std::int32_t num_classes);

  // same node payloads as `base`, different edge set
  Graph(const Graph& base, std::vector<Edge> edges);

  std::uint32_t num_nodes() const noexcept { return num_nodes_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }

  // canonical edge list: u < v, sorted, no duplicates
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  std::span<const std::uint32_t> neighbors(std::uint32_t v) const;  // sorted
  std::size_t degree(std::uint32_t v) const;
  bool is_edge(std::uint32_t u, std::uint32_t v) const;

  const Matrix& features() const noexcept { return *features_; }
  const std::vector<std::int32_t>& labels() const noexcept { return *labels_; }
  const std::vector<Split>& split() const noexcept { return *split_; }
  std::int32_t num_classes() const noexcept { return num_classes_; }

  std::vector<std::uint32_t> split_nodes(Split s) const;

  bool shares_payload_with(const Graph& other) const noexcept {
    return features_ == other.features_;
  }

  // FNV-1a over node count and the canonical edge list; keys caches that
  // depend on structure only
  std::uint64_t structure_hash() const;

private:
  void build_adjacency();
  void check_node_index(std::uint32_t v) const;

  std::uint32_t num_nodes_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> adj_offsets_;
  std::vector<std::uint32_t> adj_;
  std::shared_ptr<const Matrix> features_;
  std::shared_ptr<const std::vector<std::int32_t>> labels_;
  std::shared_ptr<const std::vector<Split>> split_;
  std::int32_t num_classes_ = 0;
};

struct PerturbationSpec {
  enum class Mode { add, remove };
  Mode mode = Mode::remove;
  double rate = 0.0;  // fraction of |E| in [0, 0.5]
  std::uint64_t seed = 1;
};

// Removes or inserts exactly floor(rate * |E|) edges, sampled without
// replacement via a seeded shuffle of the edge (or non-edge candidate)
// list. Node payloads are shared with the input.
Graph perturb_edges(const Graph& g, const PerturbationSpec& spec);

}  // namespace transgnn

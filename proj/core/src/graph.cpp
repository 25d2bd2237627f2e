#include "transgnn/graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "transgnn/errors.hpp"
#include "transgnn/rng.hpp"

namespace transgnn {

const char* split_name(Split s) {
  switch (s) {
    case Split::train: return "train";
    case Split::val: return "val";
    case Split::test: return "test";
    case Split::none: return "none";
  }
  return "none";
}

Split split_from_name(std::string_view name) {
  if (name == "train") return Split::train;
  if (name == "val") return Split::val;
  if (name == "test") return Split::test;
  if (name == "none") return Split::none;
  throw DataError("unknown split token '" + std::string(name) + "'");
}

namespace {

std::vector<Edge> canonicalize_edges(std::uint32_t num_nodes, std::vector<Edge> edges) {
  for (auto& [u, v] : edges) {
    if (u == v) {
      throw DataError("self-loop edge {" + std::to_string(u) + "," + std::to_string(v) + "}");
    }
    if (u >= num_nodes || v >= num_nodes) {
      throw DataError("edge endpoint out of range: {" + std::to_string(u) + "," +
                      std::to_string(v) + "} with " + std::to_string(num_nodes) + " nodes");
    }
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

}  // namespace

Graph::Graph(std::uint32_t num_nodes, std::vector<Edge> edges, Matrix features,
             std::vector<std::int32_t> labels, std::vector<Split> split,
             std::int32_t num_classes)
    : num_nodes_(num_nodes),
      edges_(canonicalize_edges(num_nodes, std::move(edges))),
      num_classes_(num_classes) {
  if (features.rows() != num_nodes) {
    throw DataError("feature matrix has " + std::to_string(features.rows()) + " rows for " +
                    std::to_string(num_nodes) + " nodes");
  }
  if (labels.size() != num_nodes) throw DataError("label count != node count");
  if (split.size() != num_nodes) throw DataError("split count != node count");
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0 || labels[i] >= num_classes) {
      throw DataError("node " + std::to_string(i) + ": label out of range (" +
                      std::to_string(labels[i]) + " with " + std::to_string(num_classes) +
                      " classes)");
    }
  }
  features_ = std::make_shared<const Matrix>(std::move(features));
  labels_ = std::make_shared<const std::vector<std::int32_t>>(std::move(labels));
  split_ = std::make_shared<const std::vector<Split>>(std::move(split));
  build_adjacency();
}

Graph::Graph(const Graph& base, std::vector<Edge> edges)
    : num_nodes_(base.num_nodes_),
      edges_(canonicalize_edges(base.num_nodes_, std::move(edges))),
      features_(base.features_),
      labels_(base.labels_),
      split_(base.split_),
      num_classes_(base.num_classes_) {
  build_adjacency();
}

void Graph::build_adjacency() {
  adj_offsets_.assign(num_nodes_ + 1, 0);
  for (const auto& [u, v] : edges_) {
    ++adj_offsets_[u + 1];
    ++adj_offsets_[v + 1];
  }
  for (std::size_t i = 1; i < adj_offsets_.size(); ++i) adj_offsets_[i] += adj_offsets_[i - 1];
  adj_.resize(edges_.size() * 2);
  std::vector<std::size_t> cursor(adj_offsets_.begin(), adj_offsets_.end() - 1);
  for (const auto& [u, v] : edges_) {
    adj_[cursor[u]++] = v;
    adj_[cursor[v]++] = u;
  }
  for (std::uint32_t v = 0; v < num_nodes_; ++v) {
    std::sort(adj_.begin() + static_cast<std::ptrdiff_t>(adj_offsets_[v]),
              adj_.begin() + static_cast<std::ptrdiff_t>(adj_offsets_[v + 1]));
  }
}

void Graph::check_node_index(std::uint32_t v) const {
  if (v >= num_nodes_) {
    throw ShapeError("node index " + std::to_string(v) + " out of range (n=" +
                     std::to_string(num_nodes_) + ")");
  }
}

std::span<const std::uint32_t> Graph::neighbors(std::uint32_t v) const {
  check_node_index(v);
  return {adj_.data() + adj_offsets_[v], adj_offsets_[v + 1] - adj_offsets_[v]};
}

std::size_t Graph::degree(std::uint32_t v) const {
  check_node_index(v);
  return adj_offsets_[v + 1] - adj_offsets_[v];
}

bool Graph::is_edge(std::uint32_t u, std::uint32_t v) const {
  check_node_index(u);
  check_node_index(v);
  if (u == v) return false;
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<std::uint32_t> Graph::split_nodes(Split s) const {
  std::vector<std::uint32_t> nodes;
  for (std::uint32_t v = 0; v < num_nodes_; ++v) {
    if ((*split_)[v] == s) nodes.push_back(v);
  }
  return nodes;
}

std::uint64_t Graph::structure_hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::uint64_t x) {
    for (int b = 0; b < 8; ++b) {
      h ^= (x >> (8 * b)) & 0xff;
      h *= 1099511628211ULL;
    }
  };
  mix(num_nodes_);
  for (const auto& [u, v] : edges_) {
    mix((static_cast<std::uint64_t>(u) << 32) | v);
  }
  return h;
}

Graph perturb_edges(const Graph& g, const PerturbationSpec& spec) {
  if (spec.rate < 0.0 || spec.rate > 0.5) {
    throw ShapeError("perturbation rate must lie in [0, 0.5]");
  }
  const std::size_t count = static_cast<std::size_t>(
      std::floor(spec.rate * static_cast<double>(g.num_edges())));
  if (count == 0) return Graph(g, g.edges());

  Rng rng(spec.seed);
  if (spec.mode == PerturbationSpec::Mode::remove) {
    std::vector<Edge> edges = g.edges();
    rng.partial_shuffle(edges, count);
    edges.erase(edges.begin(), edges.begin() + static_cast<std::ptrdiff_t>(count));
    return Graph(g, std::move(edges));
  }

  // add: enumerate non-edges, sample a shuffled prefix
  const std::uint64_t n = g.num_nodes();
  std::vector<Edge> candidates;
  candidates.reserve(static_cast<std::size_t>(n * (n - 1) / 2 - g.num_edges()));
  for (std::uint32_t u = 0; u < n; ++u) {
    auto nb = g.neighbors(u);
    std::size_t k = 0;
    for (std::uint32_t v = u + 1; v < n; ++v) {
      while (k < nb.size() && nb[k] < v) ++k;
      if (k < nb.size() && nb[k] == v) continue;
      candidates.emplace_back(u, v);
    }
  }
  if (candidates.size() < count) {
    throw DataError("not enough non-edges to add " + std::to_string(count) + " edges");
  }
  rng.partial_shuffle(candidates, count);
  std::vector<Edge> edges = g.edges();
  edges.insert(edges.end(), candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(count));
  return Graph(g, std::move(edges));
}

}  // namespace transgnn

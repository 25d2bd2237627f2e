#include "transgnn/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "transgnn/errors.hpp"
#include "transgnn/rng.hpp"

namespace transgnn {

namespace {

std::vector<Split> make_split(const std::vector<std::int32_t>& labels, std::int32_t num_classes,
                              int train_per_class, std::size_t val_count, std::size_t test_count,
                              Rng& rng) {
  const std::size_t n = labels.size();
  std::vector<Split> split(n, Split::none);
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);

  std::vector<int> taken(num_classes, 0);
  std::vector<std::uint32_t> rest;
  for (std::uint32_t v : order) {
    if (taken[labels[v]] < train_per_class) {
      split[v] = Split::train;
      ++taken[labels[v]];
    } else {
      rest.push_back(v);
    }
  }
  std::size_t i = 0;
  for (; i < rest.size() && i < val_count; ++i) split[rest[i]] = Split::val;
  for (std::size_t j = 0; j < test_count && i + j < rest.size(); ++j) {
    split[rest[i + j]] = Split::test;
  }
  return split;
}

}  // namespace

Graph synthetic_citation(const CitationSpec& spec, std::uint64_t seed) {
  if (spec.num_nodes == 0 || spec.num_classes <= 0 || spec.feat_dim == 0) {
    throw ShapeError("synthetic_citation: empty spec");
  }
  Rng rng(seed);
  const std::uint32_t n = spec.num_nodes;
  const std::int32_t c = spec.num_classes;

  // class sizes proportional to weights
  std::vector<double> weights = spec.class_weights;
  if (weights.empty()) weights.assign(c, 1.0);
  if (weights.size() != static_cast<std::size_t>(c)) {
    throw ShapeError("synthetic_citation: class_weights size mismatch");
  }
  const double wsum = std::accumulate(weights.begin(), weights.end(), 0.0);
  std::vector<std::int32_t> labels;
  labels.reserve(n);
  for (std::int32_t k = 0; k < c; ++k) {
    std::size_t count = static_cast<std::size_t>(
        std::floor(weights[k] / wsum * static_cast<double>(n)));
    labels.insert(labels.end(), count, k);
  }
  while (labels.size() < n) labels.push_back(static_cast<std::int32_t>(labels.size() % c));
  labels.resize(n);
  rng.shuffle(labels);

  std::vector<std::vector<std::uint32_t>> members(c);
  for (std::uint32_t v = 0; v < n; ++v) members[labels[v]].push_back(v);

  // edges: homophilous pair sampling without duplicates
  const std::size_t target_edges =
      static_cast<std::size_t>(std::llround(spec.avg_degree * n / 2.0));
  std::set<Edge> edge_set;
  std::size_t attempts = 0;
  const std::size_t max_attempts = target_edges * 200 + 1000;
  while (edge_set.size() < target_edges && attempts < max_attempts) {
    ++attempts;
    std::uint32_t u, v;
    if (rng.next_double() < spec.homophily) {
      // intra-class pair, class picked proportional to its pair count
      std::vector<double> pair_w(c);
      double tot = 0.0;
      for (std::int32_t k = 0; k < c; ++k) {
        const double m = static_cast<double>(members[k].size());
        pair_w[k] = m * (m - 1.0);
        tot += pair_w[k];
      }
      double x = rng.next_double() * tot;
      std::int32_t k = 0;
      while (k + 1 < c && x > pair_w[k]) {
        x -= pair_w[k];
        ++k;
      }
      const auto& m = members[k];
      if (m.size() < 2) continue;
      u = m[rng.next_below(m.size())];
      v = m[rng.next_below(m.size())];
    } else {
      u = static_cast<std::uint32_t>(rng.next_below(n));
      v = static_cast<std::uint32_t>(rng.next_below(n));
    }
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    edge_set.insert({u, v});
  }

  // features: per-class topic block plus background noise
  Matrix features(n, spec.feat_dim, 0.0);
  const std::size_t block = std::max<std::size_t>(1, spec.feat_dim / static_cast<std::size_t>(c));
  for (std::uint32_t v = 0; v < n; ++v) {
    const std::size_t lo = static_cast<std::size_t>(labels[v]) * block;
    const std::size_t hi = std::min(spec.feat_dim, lo + block);
    for (int w = 0; w < spec.words_per_doc; ++w) {
      std::size_t word;
      if (hi > lo && rng.next_double() < spec.topic_purity) {
        word = lo + rng.next_below(hi - lo);
      } else {
        word = rng.next_below(spec.feat_dim);
      }
      features(v, word) = 1.0;
    }
  }

  auto split = make_split(labels, c, spec.train_per_class, spec.val_count, spec.test_count, rng);
  return Graph(n, {edge_set.begin(), edge_set.end()}, std::move(features), std::move(labels),
               std::move(split), c);
}

CitationSpec citation_preset(const std::string& name) {
  CitationSpec spec;
  if (name == "cora-syn") {
    spec.num_nodes = 2708;
    spec.num_classes = 7;
    spec.feat_dim = 1433;
    spec.class_weights = {351, 217, 418, 818, 426, 298, 180};
    spec.avg_degree = 3.90;
    spec.homophily = 0.81;
    spec.words_per_doc = 18;
    spec.topic_purity = 0.55;
    spec.train_per_class = 20;
    spec.val_count = 500;
    spec.test_count = 1000;
    return spec;
  }
  if (name == "citeseer-syn") {
    spec.num_nodes = 3327;
    spec.num_classes = 6;
    spec.feat_dim = 3703;
    spec.class_weights = {264, 590, 668, 701, 596, 508};
    spec.avg_degree = 2.74;
    spec.homophily = 0.74;
    spec.words_per_doc = 32;
    spec.topic_purity = 0.55;
    spec.train_per_class = 20;
    spec.val_count = 500;
    spec.test_count = 1000;
    return spec;
  }
  throw ShapeError("unknown citation preset '" + name + "' (expected cora-syn or citeseer-syn)");
}

Graph two_cluster_fixture(std::uint32_t num_nodes, double noise, std::uint64_t seed) {
  if (num_nodes < 4) throw ShapeError("two_cluster_fixture: need at least 4 nodes");
  Rng rng(seed);
  const std::uint32_t half = num_nodes / 2;
  std::vector<std::int32_t> labels(num_nodes);
  for (std::uint32_t v = 0; v < num_nodes; ++v) labels[v] = v < half ? 0 : 1;

  std::set<Edge> edges;
  // dense-ish intra-cluster rings with chords
  for (std::uint32_t v = 0; v < num_nodes; ++v) {
    const std::uint32_t lo = v < half ? 0 : half;
    const std::uint32_t size = v < half ? half : num_nodes - half;
    const std::uint32_t next = lo + (v - lo + 1) % size;
    const std::uint32_t skip = lo + (v - lo + 2) % size;
    if (v != next) edges.insert({std::min(v, next), std::max(v, next)});
    if (v != skip) edges.insert({std::min(v, skip), std::max(v, skip)});
  }
  edges.insert({0, half});  // one bridge

  Matrix features(num_nodes, 4, 0.0);
  for (std::uint32_t v = 0; v < num_nodes; ++v) {
    features(v, static_cast<std::size_t>(labels[v])) = 1.0;
    features(v, 2) = rng.next_double(-noise, noise);
    features(v, 3) = rng.next_double(-noise, noise);
  }

  std::vector<Split> split(num_nodes, Split::test);
  // a couple of train/val nodes per cluster
  split[0] = Split::train;
  split[half] = Split::train;
  if (half > 1) split[1] = Split::val;
  if (num_nodes > half + 1) split[half + 1] = Split::val;
  return Graph(num_nodes, {edges.begin(), edges.end()}, std::move(features), std::move(labels),
               std::move(split), 2);
}

Graph two_cliques_bridge() {
  std::vector<Edge> edges;
  for (std::uint32_t base : {0u, 4u}) {
    for (std::uint32_t i = 0; i < 4; ++i) {
      for (std::uint32_t j = i + 1; j < 4; ++j) edges.emplace_back(base + i, base + j);
    }
  }
  edges.emplace_back(0, 4);
  Matrix features(8, 2, 0.0);
  std::vector<std::int32_t> labels(8);
  std::vector<Split> split(8, Split::none);
  for (std::uint32_t v = 0; v < 8; ++v) {
    labels[v] = v < 4 ? 0 : 1;
    features(v, static_cast<std::size_t>(labels[v])) = 1.0;
  }
  split[0] = Split::train;
  split[4] = Split::train;
  return Graph(8, std::move(edges), std::move(features), std::move(labels), std::move(split), 2);
}

Graph twelve_node_fixture() {
  // two hexagonal groups (ring + chords), three cross links
  std::vector<Edge> edges;
  for (std::uint32_t base : {0u, 6u}) {
    for (std::uint32_t i = 0; i < 6; ++i) {
      edges.emplace_back(base + i, base + (i + 1) % 6);
      if (i < 3) edges.emplace_back(base + i, base + i + 3);
    }
  }
  edges.emplace_back(0, 6);
  edges.emplace_back(2, 8);
  edges.emplace_back(4, 10);

  Rng rng(12);
  Matrix features(12, 5, 0.0);
  std::vector<std::int32_t> labels(12);
  std::vector<Split> split(12, Split::none);
  for (std::uint32_t v = 0; v < 12; ++v) {
    labels[v] = v < 6 ? 0 : 1;
    features(v, static_cast<std::size_t>(labels[v])) = 1.0;
    features(v, 2 + v % 3) = rng.next_double(0.1, 1.0);
    split[v] = v % 3 == 0 ? Split::train : (v % 3 == 1 ? Split::val : Split::test);
  }
  return Graph(12, std::move(edges), std::move(features), std::move(labels), std::move(split), 2);
}

Graph random_graph(std::uint32_t num_nodes, std::size_t num_edges, std::int32_t num_classes,
                   std::size_t feat_dim, std::uint64_t seed) {
  if (num_nodes == 0) throw ShapeError("random_graph: need at least one node");
  Rng rng(seed);
  const std::size_t max_edges = static_cast<std::size_t>(num_nodes) * (num_nodes - 1) / 2;
  num_edges = std::min(num_edges, max_edges);
  std::set<Edge> edges;
  while (edges.size() < num_edges) {
    std::uint32_t u = static_cast<std::uint32_t>(rng.next_below(num_nodes));
    std::uint32_t v = static_cast<std::uint32_t>(rng.next_below(num_nodes));
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    edges.insert({u, v});
  }
  Matrix features(num_nodes, feat_dim);
  for (std::size_t i = 0; i < features.size(); ++i) features.data()[i] = rng.next_double();
  std::vector<std::int32_t> labels(num_nodes);
  std::vector<Split> split(num_nodes);
  for (std::uint32_t v = 0; v < num_nodes; ++v) {
    labels[v] = static_cast<std::int32_t>(v % static_cast<std::uint32_t>(num_classes));
    const auto r = rng.next_below(3);
    split[v] = r == 0 ? Split::train : (r == 1 ? Split::val : Split::test);
  }
  return Graph(num_nodes, {edges.begin(), edges.end()}, std::move(features), std::move(labels),
               std::move(split), num_classes);
}

Graph path_graph(std::uint32_t num_nodes) {
  std::vector<Edge> edges;
  for (std::uint32_t v = 0; v + 1 < num_nodes; ++v) edges.emplace_back(v, v + 1);
  Matrix features(num_nodes, 1, 1.0);
  std::vector<std::int32_t> labels(num_nodes, 0);
  std::vector<Split> split(num_nodes, Split::train);
  return Graph(num_nodes, std::move(edges), std::move(features), std::move(labels),
               std::move(split), 1);
}

}  // namespace transgnn

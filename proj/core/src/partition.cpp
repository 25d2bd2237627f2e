#include "transgnn/partition.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "transgnn/errors.hpp"
#include "transgnn/rng.hpp"

namespace transgnn {

namespace {

// weighted graph used internally by the multilevel scheme
struct WGraph {
  std::uint32_t n = 0;
  std::vector<std::size_t> offsets;
  std::vector<std::uint32_t> nbr;
  std::vector<std::uint64_t> wgt;
  std::vector<std::uint64_t> node_w;
  std::uint64_t total_node_weight = 0;

  std::uint64_t total_edge_weight() const {
    std::uint64_t s = 0;
    for (auto w : wgt) s += w;
    return s / 2;
  }
};

WGraph from_graph(const Graph& g) {
  WGraph w;
  w.n = g.num_nodes();
  w.offsets.assign(w.n + 1, 0);
  for (std::uint32_t v = 0; v < w.n; ++v) w.offsets[v + 1] = w.offsets[v] + g.degree(v);
  w.nbr.resize(w.offsets[w.n]);
  w.wgt.assign(w.offsets[w.n], 1);
  for (std::uint32_t v = 0; v < w.n; ++v) {
    auto nb = g.neighbors(v);
    std::copy(nb.begin(), nb.end(), w.nbr.begin() + static_cast<std::ptrdiff_t>(w.offsets[v]));
  }
  w.node_w.assign(w.n, 1);
  w.total_node_weight = w.n;
  return w;
}

struct CoarseLevel {
  WGraph graph;
  std::vector<std::uint32_t> fine_to_coarse;
};

// Heavy-edge matching: visit nodes in a seeded random order, pair each
// unmatched node with its unmatched neighbor across the heaviest edge
// (ties broken by lowest node index).
CoarseLevel coarsen_once(const WGraph& g, Rng& rng) {
  std::vector<std::uint32_t> order(g.n);
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);

  constexpr std::uint32_t kUnmatched = UINT32_MAX;
  std::vector<std::uint32_t> coarse_id(g.n, kUnmatched);
  std::uint32_t next_id = 0;
  for (std::uint32_t u : order) {
    if (coarse_id[u] != kUnmatched) continue;
    std::uint32_t best = kUnmatched;
    std::uint64_t best_w = 0;
    for (std::size_t k = g.offsets[u]; k < g.offsets[u + 1]; ++k) {
      const std::uint32_t v = g.nbr[k];
      if (coarse_id[v] != kUnmatched) continue;
      if (g.wgt[k] > best_w || (g.wgt[k] == best_w && (best == kUnmatched || v < best))) {
        best = v;
        best_w = g.wgt[k];
      }
    }
    coarse_id[u] = next_id;
    if (best != kUnmatched) coarse_id[best] = next_id;
    ++next_id;
  }

  CoarseLevel level;
  level.fine_to_coarse = std::move(coarse_id);
  WGraph& c = level.graph;
  c.n = next_id;
  c.node_w.assign(c.n, 0);
  for (std::uint32_t v = 0; v < g.n; ++v) c.node_w[level.fine_to_coarse[v]] += g.node_w[v];
  c.total_node_weight = g.total_node_weight;

  // aggregate edges between coarse nodes; internal edges vanish
  std::vector<std::vector<std::pair<std::uint32_t, std::uint64_t>>> rows(c.n);
  std::vector<std::uint64_t> acc(c.n, 0);
  std::vector<std::uint32_t> touched;
  for (std::uint32_t cu = 0; cu < c.n; ++cu) rows[cu].reserve(4);
  // gather per coarse node in fine order for determinism
  std::vector<std::vector<std::uint32_t>> members(c.n);
  for (std::uint32_t v = 0; v < g.n; ++v) members[level.fine_to_coarse[v]].push_back(v);
  for (std::uint32_t cu = 0; cu < c.n; ++cu) {
    touched.clear();
    for (std::uint32_t v : members[cu]) {
      for (std::size_t k = g.offsets[v]; k < g.offsets[v + 1]; ++k) {
        const std::uint32_t cv = level.fine_to_coarse[g.nbr[k]];
        if (cv == cu) continue;
        if (acc[cv] == 0) touched.push_back(cv);
        acc[cv] += g.wgt[k];
      }
    }
    std::sort(touched.begin(), touched.end());
    for (std::uint32_t cv : touched) {
      rows[cu].emplace_back(cv, acc[cv]);
      acc[cv] = 0;
    }
  }
  c.offsets.assign(c.n + 1, 0);
  for (std::uint32_t cu = 0; cu < c.n; ++cu) c.offsets[cu + 1] = c.offsets[cu] + rows[cu].size();
  c.nbr.resize(c.offsets[c.n]);
  c.wgt.resize(c.offsets[c.n]);
  for (std::uint32_t cu = 0; cu < c.n; ++cu) {
    std::size_t k = c.offsets[cu];
    for (auto [cv, w] : rows[cu]) {
      c.nbr[k] = cv;
      c.wgt[k] = w;
      ++k;
    }
  }
  return level;
}

std::uint64_t weighted_cut(const WGraph& g, const std::vector<std::uint32_t>& part) {
  std::uint64_t cut = 0;
  for (std::uint32_t u = 0; u < g.n; ++u) {
    for (std::size_t k = g.offsets[u]; k < g.offsets[u + 1]; ++k) {
      if (g.nbr[k] > u && part[g.nbr[k]] != part[u]) cut += g.wgt[k];
    }
  }
  return cut;
}

// Greedy region growing: each cluster grows from a random seed along the
// strongest frontier connection until it reaches its share of node weight.
std::vector<std::uint32_t> initial_partition(const WGraph& g, std::uint32_t k, double balance,
                                             Rng& rng) {
  constexpr std::uint32_t kNone = UINT32_MAX;
  std::vector<std::uint32_t> part(g.n, kNone);
  std::vector<std::uint64_t> cluster_w(k, 0);
  const double max_w =
      std::ceil((1.0 + balance) * static_cast<double>(g.total_node_weight) / k);
  std::vector<std::uint64_t> conn(g.n, 0);

  std::uint32_t assigned = 0;
  for (std::uint32_t c = 0; c < k; ++c) {
    if (assigned == g.n) break;
    const std::uint32_t remaining_clusters = k - c;
    std::uint64_t remaining_w = g.total_node_weight;
    for (std::uint32_t cc = 0; cc < c; ++cc) remaining_w -= cluster_w[cc];
    const double target = static_cast<double>(remaining_w) / remaining_clusters;

    // seed: random unassigned node
    std::vector<std::uint32_t> unassigned;
    unassigned.reserve(g.n - assigned);
    for (std::uint32_t v = 0; v < g.n; ++v) {
      if (part[v] == kNone) unassigned.push_back(v);
    }
    std::uint32_t seed = unassigned[rng.next_below(unassigned.size())];
    std::fill(conn.begin(), conn.end(), 0);

    auto add_to_cluster = [&](std::uint32_t v) {
      part[v] = c;
      cluster_w[c] += g.node_w[v];
      ++assigned;
      for (std::size_t e = g.offsets[v]; e < g.offsets[v + 1]; ++e) {
        if (part[g.nbr[e]] == kNone) conn[g.nbr[e]] += g.wgt[e];
      }
    };
    add_to_cluster(seed);

    while (static_cast<double>(cluster_w[c]) < target && assigned < g.n &&
           c + 1 < k /* last cluster takes the rest below */) {
      std::uint32_t best = kNone;
      std::uint64_t best_conn = 0;
      for (std::uint32_t v = 0; v < g.n; ++v) {
        if (part[v] != kNone || conn[v] == 0) continue;
        if (best == kNone || conn[v] > best_conn) {
          best = v;
          best_conn = conn[v];
        }
      }
      if (best == kNone) break;  // frontier exhausted (disconnected region)
      if (static_cast<double>(cluster_w[c] + g.node_w[best]) > max_w) break;
      add_to_cluster(best);
    }
  }

  // leftovers: strongest-connection cluster that still has room, else the
  // lightest cluster
  for (std::uint32_t v = 0; v < g.n; ++v) {
    if (part[v] != kNone) continue;
    std::vector<std::uint64_t> cconn(k, 0);
    for (std::size_t e = g.offsets[v]; e < g.offsets[v + 1]; ++e) {
      if (part[g.nbr[e]] != kNone) cconn[part[g.nbr[e]]] += g.wgt[e];
    }
    std::uint32_t best = kNone;
    for (std::uint32_t c = 0; c < k; ++c) {
      if (static_cast<double>(cluster_w[c] + g.node_w[v]) > max_w) continue;
      if (best == kNone || cconn[c] > cconn[best]) best = c;
    }
    if (best == kNone) {
      best = 0;
      for (std::uint32_t c = 1; c < k; ++c) {
        if (cluster_w[c] < cluster_w[best]) best = c;
      }
    }
    part[v] = best;
    cluster_w[best] += g.node_w[v];
  }
  return part;
}

// Boundary single-node moves with strictly positive gain; never increases
// the weighted edge cut.
void refine(const WGraph& g, std::vector<std::uint32_t>& part, std::uint32_t k, double balance,
            int passes) {
  std::vector<std::uint64_t> cluster_w(k, 0);
  std::vector<std::uint32_t> cluster_count(k, 0);
  for (std::uint32_t v = 0; v < g.n; ++v) {
    cluster_w[part[v]] += g.node_w[v];
    ++cluster_count[part[v]];
  }
  const double max_w =
      std::ceil((1.0 + balance) * static_cast<double>(g.total_node_weight) / k);

  std::vector<std::uint64_t> cconn(k);
  for (int pass = 0; pass < passes; ++pass) {
    std::size_t moves = 0;
    for (std::uint32_t v = 0; v < g.n; ++v) {
      const std::uint32_t own = part[v];
      if (cluster_count[own] <= 1) continue;  // keep clusters nonempty
      bool boundary = false;
      std::fill(cconn.begin(), cconn.end(), 0);
      for (std::size_t e = g.offsets[v]; e < g.offsets[v + 1]; ++e) {
        cconn[part[g.nbr[e]]] += g.wgt[e];
        if (part[g.nbr[e]] != own) boundary = true;
      }
      if (!boundary) continue;
      std::uint32_t best = own;
      std::uint64_t best_conn = cconn[own];
      for (std::uint32_t c = 0; c < k; ++c) {
        if (c == own || cconn[c] <= best_conn) continue;
        if (static_cast<double>(cluster_w[c] + g.node_w[v]) > max_w) continue;
        best = c;
        best_conn = cconn[c];
      }
      if (best != own) {
        part[v] = best;
        cluster_w[own] -= g.node_w[v];
        cluster_w[best] += g.node_w[v];
        --cluster_count[own];
        ++cluster_count[best];
        ++moves;
      }
    }
    if (moves == 0) break;
  }
}

}  // namespace

PartitionResult partition_graph(const Graph& g, const PartitionConfig& cfg) {
  const std::uint32_t n = g.num_nodes();
  std::uint32_t k = cfg.k;
  if (k == 0) k = std::min<std::uint32_t>(n, default_cluster_count(n));
  if (k < 1 || k > n) {
    throw ShapeError("partition_graph: k=" + std::to_string(k) + " outside [1, " +
                     std::to_string(n) + "]");
  }

  PartitionResult result;
  result.partition.k = k;
  if (k == 1) {
    result.partition.assignment.assign(n, 0);
    return result;
  }
  if (k == n) {
    result.partition.assignment.resize(n);
    std::iota(result.partition.assignment.begin(), result.partition.assignment.end(), 0);
    return result;
  }

  Rng rng(cfg.seed);
  std::vector<WGraph> levels;
  std::vector<std::vector<std::uint32_t>> maps;
  levels.push_back(from_graph(g));
  const std::uint32_t coarse_limit = std::max<std::uint32_t>(2 * k, 64);
  while (levels.back().n > coarse_limit) {
    CoarseLevel next = coarsen_once(levels.back(), rng);
    if (next.graph.n >= levels.back().n) break;  // matching stalled
    maps.push_back(std::move(next.fine_to_coarse));
    levels.push_back(std::move(next.graph));
  }

  std::vector<std::uint32_t> part = initial_partition(levels.back(), k, cfg.balance, rng);
  for (std::size_t li = levels.size(); li-- > 0;) {
    const WGraph& wg = levels[li];
    LevelStats stats;
    stats.coarse_nodes = wg.n;
    stats.cut_before_refine = weighted_cut(wg, part);
    refine(wg, part, k, cfg.balance, cfg.refine_passes);
    stats.cut_after_refine = weighted_cut(wg, part);
    result.levels.push_back(stats);
    if (li > 0) {
      // project to the finer level
      std::vector<std::uint32_t> fine_part(levels[li - 1].n);
      for (std::uint32_t v = 0; v < levels[li - 1].n; ++v) fine_part[v] = part[maps[li - 1][v]];
      part = std::move(fine_part);
    }
  }
  result.partition.assignment = std::move(part);
  return result;
}

std::uint64_t edge_cut(const Graph& g, const Partition& p) {
  if (p.assignment.size() != g.num_nodes()) {
    throw ShapeError("edge_cut: partition covers " + std::to_string(p.assignment.size()) +
                     " nodes, graph has " + std::to_string(g.num_nodes()));
  }
  for (std::uint32_t c : p.assignment) {
    if (c >= p.k) throw ShapeError("edge_cut: cluster id out of range");
  }
  std::uint64_t cut = 0;
  for (const auto& [u, v] : g.edges()) {
    if (p.assignment[u] != p.assignment[v]) ++cut;
  }
  return cut;
}

}  // namespace transgnn

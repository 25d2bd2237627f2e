#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "transgnn/graph.hpp"

namespace transgnn {

struct SimRankConfig {
  double decay = 0.8;
  int max_iters = 10;
  double tolerance = 1e-4;
  int threads = 0;  // 0 = hardware concurrency
};

// Symmetric all-pairs structural similarity scores in [0, 1], diagonal 1.
class SimilarityMatrix {
public:
  SimilarityMatrix() = default;
  SimilarityMatrix(std::size_t n, double decay)
      : n_(n), decay_(decay), scores_(n * n, 0.0) {
    for (std::size_t v = 0; v < n; ++v) scores_[v * n + v] = 1.0;
  }

  std::size_t size() const noexcept { return n_; }
  double decay() const noexcept { return decay_; }
  int iterations_run() const noexcept { return iterations_run_; }
  bool converged() const noexcept { return converged_; }

  double score(std::uint32_t u, std::uint32_t v) const { return scores_[std::size_t(u) * n_ + v]; }
  std::span<const double> row(std::uint32_t u) const { return {scores_.data() + std::size_t(u) * n_, n_}; }

  // most negative entrywise change s_{k+1} - s_k per iteration, capped at 0;
  // the iteration from the identity never decreases an entry, so a negative
  // value here means the monotonicity invariant broke
  const std::vector<double>& per_iteration_min_delta() const noexcept { return min_delta_; }
  // largest absolute entrywise change per iteration (drives convergence)
  const std::vector<double>& per_iteration_max_delta() const noexcept { return max_delta_; }

private:
  friend SimilarityMatrix simrank(const Graph&, const SimRankConfig&);
  friend void save_similarity(const SimilarityMatrix&, const std::filesystem::path&);
  friend std::optional<SimilarityMatrix> try_load_similarity(const std::filesystem::path&);

  std::size_t n_ = 0;
  double decay_ = 0.0;
  std::vector<double> scores_;
  int iterations_run_ = 0;
  bool converged_ = false;
  std::vector<double> min_delta_;
  std::vector<double> max_delta_;
};

// Fixed-point iteration from the identity:
//   s(u,v) <- decay / (|N(u)||N(v)|) * sum_{i in N(u), j in N(v)} s(i,j)   (u != v)
//   s(v,v) = 1;  s(u,v) = 0 if either node has no neighbors
// Jacobi-style: each iteration reads a snapshot of the previous scores.
// Rows are computed in parallel with a fixed per-entry summation order, so
// results are bitwise identical for any thread count.
SimilarityMatrix simrank(const Graph& g, const SimRankConfig& cfg);

struct SimilarPair {
  std::uint32_t u;
  std::uint32_t v;
  double score;
};

// all unordered pairs u < v with score >= threshold, sorted by (u, v)
std::vector<SimilarPair> pairs_at_or_above(const SimilarityMatrix& sim, double threshold);

// Binary cache keyed by graph structure hash + configuration.
std::filesystem::path simrank_cache_file(const std::filesystem::path& cache_dir,
                                         std::uint64_t graph_hash, const SimRankConfig& cfg);
void save_similarity(const SimilarityMatrix& sim, const std::filesystem::path& file);
std::optional<SimilarityMatrix> try_load_similarity(const std::filesystem::path& file);

// computes through the cache when cache_dir is set
SimilarityMatrix simrank_cached(const Graph& g, const SimRankConfig& cfg,
                                const std::optional<std::filesystem::path>& cache_dir);

}  // namespace transgnn

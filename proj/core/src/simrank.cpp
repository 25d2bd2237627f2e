#include "transgnn/simrank.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <functional>
#include <iostream>
#include <thread>

#include "transgnn/errors.hpp"

namespace transgnn {

namespace {

void parallel_rows(std::size_t n, int threads, const std::function<void(std::size_t, std::size_t)>& work) {
  if (threads <= 1 || n < 64) {
    work(0, n);
    return;
  }
  const std::size_t chunk = (n + threads - 1) / threads;
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    const std::size_t lo = std::min(n, t * chunk);
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo < hi) pool.emplace_back(work, lo, hi);
  }
  for (auto& th : pool) th.join();
}

}  // namespace

SimilarityMatrix simrank(const Graph& g, const SimRankConfig& cfg) {
  if (cfg.decay <= 0.0 || cfg.decay >= 1.0) throw ShapeError("simrank: decay must be in (0,1)");
  if (cfg.max_iters < 1) throw ShapeError("simrank: max_iters must be >= 1");
  if (cfg.tolerance <= 0.0) throw ShapeError("simrank: tolerance must be > 0");

  const std::size_t n = g.num_nodes();
  SimilarityMatrix result(n, cfg.decay);
  if (n == 0) {
    result.converged_ = true;
    return result;
  }
  if (n > 5000) {
    std::cerr << "[warn] simrank: dense similarity for n=" << n << " needs ~"
              << (3 * n * n * sizeof(double)) / (1024 * 1024) << " MiB\n";
  }

  int threads = cfg.threads > 0 ? cfg.threads
                                : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

  std::vector<double> cur(result.scores_);  // s_0 = identity
  std::vector<double> partial(n * n);       // T = M * S snapshot
  std::vector<double> next(n * n);

  std::vector<double> inv_deg(n, 0.0);
  for (std::uint32_t v = 0; v < n; ++v) {
    if (g.degree(v) > 0) inv_deg[v] = 1.0 / static_cast<double>(g.degree(v));
  }

  for (int iter = 0; iter < cfg.max_iters; ++iter) {
    // T(u,:) = mean over sorted neighbors i of s_k(i,:)
    parallel_rows(n, threads, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t u = lo; u < hi; ++u) {
        double* out = partial.data() + u * n;
        std::memset(out, 0, n * sizeof(double));
        auto nb = g.neighbors(static_cast<std::uint32_t>(u));
        for (std::uint32_t i : nb) {
          const double* in = cur.data() + std::size_t(i) * n;
          for (std::size_t j = 0; j < n; ++j) out[j] += in[j];
        }
        const double scale = inv_deg[u];
        for (std::size_t j = 0; j < n; ++j) out[j] *= scale;
      }
    });

    // s_{k+1}(u,v) = decay / d_v * sum over sorted neighbors j of T(u,j)
    std::vector<double> chunk_min(threads, 0.0);
    std::vector<double> chunk_max(threads, 0.0);
    std::atomic<int> chunk_id{0};
    parallel_rows(n, threads, [&](std::size_t lo, std::size_t hi) {
      const int me = chunk_id.fetch_add(1);
      double dmin = 0.0, dmax = 0.0;
      for (std::size_t u = lo; u < hi; ++u) {
        const double* trow = partial.data() + u * n;
        double* out = next.data() + u * n;
        const double* old = cur.data() + u * n;
        for (std::size_t v = 0; v < n; ++v) {
          double acc = 0.0;
          for (std::uint32_t j : g.neighbors(static_cast<std::uint32_t>(v))) acc += trow[j];
          out[v] = cfg.decay * inv_deg[v] * acc;
        }
        out[u] = 1.0;
        for (std::size_t v = 0; v < n; ++v) {
          const double d = out[v] - old[v];
          dmin = std::min(dmin, d);
          dmax = std::max(dmax, std::fabs(d));
        }
      }
      chunk_min[me] = dmin;
      chunk_max[me] = dmax;
    });

    double min_delta = 0.0, max_delta = 0.0;
    for (double d : chunk_min) min_delta = std::min(min_delta, d);
    for (double d : chunk_max) max_delta = std::max(max_delta, d);
    result.min_delta_.push_back(min_delta);
    result.max_delta_.push_back(max_delta);
    cur.swap(next);
    result.iterations_run_ = iter + 1;
    if (max_delta < cfg.tolerance) {
      result.converged_ = true;
      break;
    }
  }

  result.scores_ = std::move(cur);
  return result;
}

std::vector<SimilarPair> pairs_at_or_above(const SimilarityMatrix& sim, double threshold) {
  if (threshold < 0.0 || threshold > 1.0) {
    // scores live in [0,1]; out-of-range thresholds are legal but trivial
  }
  std::vector<SimilarPair> pairs;
  const std::size_t n = sim.size();
  for (std::uint32_t u = 0; u + 1 < n; ++u) {
    auto row = sim.row(u);
    for (std::uint32_t v = u + 1; v < n; ++v) {
      if (row[v] >= threshold) pairs.push_back({u, v, row[v]});
    }
  }
  return pairs;
}

std::filesystem::path simrank_cache_file(const std::filesystem::path& cache_dir,
                                         std::uint64_t graph_hash, const SimRankConfig& cfg) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "simrank-%016llx-d%.6g-i%d-t%.6g.bin",
                static_cast<unsigned long long>(graph_hash), cfg.decay, cfg.max_iters,
                cfg.tolerance);
  return cache_dir / buf;
}

namespace {
constexpr char kMagic[12] = "TGSIMRANK1";
}

void save_similarity(const SimilarityMatrix& sim, const std::filesystem::path& file) {
  std::filesystem::create_directories(file.parent_path());
  std::ofstream out(file, std::ios::binary);
  if (!out) throw IoError("cannot write similarity cache: " + file.string());
  out.write(kMagic, sizeof(kMagic));
  const std::uint64_t n = sim.size();
  const std::int32_t iters = sim.iterations_run();
  const std::uint8_t conv = sim.converged() ? 1 : 0;
  const double decay = sim.decay();
  out.write(reinterpret_cast<const char*>(&n), sizeof(n));
  out.write(reinterpret_cast<const char*>(&decay), sizeof(decay));
  out.write(reinterpret_cast<const char*>(&iters), sizeof(iters));
  out.write(reinterpret_cast<const char*>(&conv), sizeof(conv));
  out.write(reinterpret_cast<const char*>(sim.scores_.data()),
            static_cast<std::streamsize>(sim.scores_.size() * sizeof(double)));
  if (!out) throw IoError("similarity cache write failed: " + file.string());
}

std::optional<SimilarityMatrix> try_load_similarity(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) return std::nullopt;
  char magic[sizeof(kMagic)];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) return std::nullopt;
  std::uint64_t n = 0;
  double decay = 0.0;
  std::int32_t iters = 0;
  std::uint8_t conv = 0;
  in.read(reinterpret_cast<char*>(&n), sizeof(n));
  in.read(reinterpret_cast<char*>(&decay), sizeof(decay));
  in.read(reinterpret_cast<char*>(&iters), sizeof(iters));
  in.read(reinterpret_cast<char*>(&conv), sizeof(conv));
  if (!in) return std::nullopt;
  SimilarityMatrix sim(n, decay);
  in.read(reinterpret_cast<char*>(sim.scores_.data()),
          static_cast<std::streamsize>(sim.scores_.size() * sizeof(double)));
  if (!in) return std::nullopt;
  sim.iterations_run_ = iters;
  sim.converged_ = conv != 0;
  return sim;
}

SimilarityMatrix simrank_cached(const Graph& g, const SimRankConfig& cfg,
                                const std::optional<std::filesystem::path>& cache_dir) {
  if (!cache_dir) return simrank(g, cfg);
  const auto file = simrank_cache_file(*cache_dir, g.structure_hash(), cfg);
  if (auto cached = try_load_similarity(file)) {
    if (cached->size() == g.num_nodes()) return std::move(*cached);
  }
  SimilarityMatrix sim = simrank(g, cfg);
  save_similarity(sim, file);
  return sim;
}

}  // namespace transgnn

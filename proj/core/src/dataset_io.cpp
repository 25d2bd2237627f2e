#include "transgnn/dataset_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "transgnn/errors.hpp"

namespace transgnn {

namespace {

std::string where(const std::filesystem::path& file, std::size_t line) {
  return file.filename().string() + ":" + std::to_string(line) + ": ";
}

std::vector<std::string> read_lines(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw DataError("missing file: " + file.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  // trailing blank lines are tolerated
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

std::vector<std::string_view> split_tabs(const std::string& line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      fields.emplace_back(line.data() + start, line.size() - start);
      break;
    }
    fields.emplace_back(line.data() + start, tab - start);
    start = tab + 1;
  }
  return fields;
}

long parse_int(std::string_view tok, const std::filesystem::path& file, std::size_t line) {
  long value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw DataError(where(file, line) + "expected integer, got '" + std::string(tok) + "'");
  }
  return value;
}

double parse_double(std::string_view tok, const std::filesystem::path& file, std::size_t line) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw DataError(where(file, line) + "expected number, got '" + std::string(tok) + "'");
  }
  return value;
}

}  // namespace

Graph load_dataset(const std::filesystem::path& dir) {
  const auto features_file = dir / "features.tsv";
  const auto edges_file = dir / "edges.tsv";
  const auto labels_file = dir / "labels.tsv";
  const auto split_file = dir / "split.tsv";

  const auto feature_lines = read_lines(features_file);
  const std::uint32_t n = static_cast<std::uint32_t>(feature_lines.size());
  if (n == 0) throw DataError("empty dataset: " + features_file.string());

  std::size_t feat_dim = split_tabs(feature_lines[0]).size();
  Matrix features(n, feat_dim);
  for (std::size_t i = 0; i < n; ++i) {
    auto fields = split_tabs(feature_lines[i]);
    if (fields.size() != feat_dim) {
      throw DataError(where(features_file, i + 1) + "ragged feature row: expected " +
                      std::to_string(feat_dim) + " values, got " + std::to_string(fields.size()));
    }
    for (std::size_t j = 0; j < feat_dim; ++j) {
      features(i, j) = parse_double(fields[j], features_file, i + 1);
    }
  }

  const auto label_lines = read_lines(labels_file);
  if (label_lines.size() != n) {
    throw DataError(labels_file.string() + ": " + std::to_string(label_lines.size()) +
                    " lines for " + std::to_string(n) + " nodes");
  }
  std::vector<std::int32_t> labels(n);
  std::int32_t max_label = 0;
  for (std::size_t i = 0; i < n; ++i) {
    long v = parse_int(split_tabs(label_lines[i]).at(0), labels_file, i + 1);
    if (v < 0) throw DataError(where(labels_file, i + 1) + "negative class id");
    labels[i] = static_cast<std::int32_t>(v);
    max_label = std::max(max_label, labels[i]);
  }
  // class ids must be contiguous; a stray high id is almost always a typo
  std::vector<std::size_t> class_counts(static_cast<std::size_t>(max_label) + 1, 0);
  for (std::size_t i = 0; i < n; ++i) ++class_counts[static_cast<std::size_t>(labels[i])];
  for (std::size_t c = 0; c < class_counts.size(); ++c) {
    if (class_counts[c] == 0) {
      throw DataError(labels_file.string() + ": label out of range: class id " +
                      std::to_string(max_label) + " present but class " + std::to_string(c) +
                      " is empty (ids must be contiguous 0.." + std::to_string(max_label) + ")");
    }
  }
  const std::int32_t num_classes = max_label + 1;

  const auto split_lines = read_lines(split_file);
  if (split_lines.size() != n) {
    throw DataError(split_file.string() + ": " + std::to_string(split_lines.size()) +
                    " lines for " + std::to_string(n) + " nodes");
  }
  std::vector<Split> split(n);
  for (std::size_t i = 0; i < n; ++i) {
    try {
      split[i] = split_from_name(split_lines[i]);
    } catch (const DataError& e) {
      throw DataError(where(split_file, i + 1) + e.what());
    }
  }

  const auto edge_lines = read_lines(edges_file);
  std::vector<Edge> edges;
  edges.reserve(edge_lines.size());
  std::size_t self_loops = 0;
  for (std::size_t i = 0; i < edge_lines.size(); ++i) {
    if (edge_lines[i].empty()) continue;
    auto fields = split_tabs(edge_lines[i]);
    if (fields.size() != 2) {
      throw DataError(where(edges_file, i + 1) + "expected 'u<TAB>v', got '" + edge_lines[i] + "'");
    }
    long u = parse_int(fields[0], edges_file, i + 1);
    long v = parse_int(fields[1], edges_file, i + 1);
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw DataError(where(edges_file, i + 1) + "node index out of range: " + edge_lines[i] +
                      " with " + std::to_string(n) + " nodes");
    }
    if (u == v) {
      ++self_loops;
      continue;
    }
    edges.emplace_back(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v));
  }
  if (self_loops > 0) {
    std::cerr << "[warn] " << edges_file.string() << ": skipped " << self_loops
              << " self-loop line(s)\n";
  }

  return Graph(n, std::move(edges), std::move(features), std::move(labels), std::move(split),
               num_classes);
}

void save_dataset(const Graph& g, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "edges.tsv");
    if (!out) throw IoError("cannot write " + (dir / "edges.tsv").string());
    for (const auto& [u, v] : g.edges()) out << u << '\t' << v << '\n';
  }
  {
    std::ofstream out(dir / "features.tsv");
    if (!out) throw IoError("cannot write " + (dir / "features.tsv").string());
    char buf[64];
    const Matrix& x = g.features();
    for (std::size_t i = 0; i < x.rows(); ++i) {
      for (std::size_t j = 0; j < x.cols(); ++j) {
        std::snprintf(buf, sizeof(buf), "%.17g", x(i, j));
        if (j) out << '\t';
        out << buf;
      }
      out << '\n';
    }
  }
  {
    std::ofstream out(dir / "labels.tsv");
    if (!out) throw IoError("cannot write " + (dir / "labels.tsv").string());
    for (std::uint32_t v = 0; v < g.num_nodes(); ++v) out << g.labels()[v] << '\n';
  }
  {
    std::ofstream out(dir / "split.tsv");
    if (!out) throw IoError("cannot write " + (dir / "split.tsv").string());
    for (std::uint32_t v = 0; v < g.num_nodes(); ++v) out << split_name(g.split()[v]) << '\n';
  }
}

}  // namespace transgnn

#pragma once

#include <filesystem>

#include "transgnn/graph.hpp"

namespace transgnn {

// Dataset directory format (UTF-8, tab-separated):
//   edges.tsv     one "u<TAB>v" pair per line, 0-indexed
//   features.tsv  line i = features of node i, tab-separated decimals
//   labels.tsv    line i = integer class of node i
//   split.tsv     line i in {train, val, test, none}
//
// Duplicate and reversed edge lines are deduplicated; self-loop lines are
// skipped with a warning. Class ids must be contiguous 0..C-1.
Graph load_dataset(const std::filesystem::path& dir);

void save_dataset(const Graph& g, const std::filesystem::path& dir);

}  // namespace transgnn

#pragma once

#include <vector>

#include "boxlab/hypergraph.hpp"

namespace boxlab {

enum class SearchStatus { found, none, unknown };

struct CliqueOptions {
    // Maximum number of extension attempts; < 0 means unbounded.  Budgeted
    // searches always run serially so that "unknown" verdicts are
    // reproducible; unbounded searches may parallelize their top-level
    // branches (the verdict and witness are branch-deterministic either way).
    long long node_limit = -1;
    bool deterministic = false;
};

struct CliqueResult {
    SearchStatus status = SearchStatus::none;
    std::vector<int> witness;  // sorted vertices, filled when found
    long long nodes = 0;
};

// Searches for k vertices whose every triple is an edge.  Branch order is
// fixed: vertices sorted by descending link degree (ties by index), and
// candidates are filtered through link-row bitsets.  A found witness is
// re-verified before it is returned.
CliqueResult find_clique(const Hypergraph3& h, int k, const CliqueOptions& opts = {});

// true iff every triple of the (distinct) vertices is an edge.
bool is_clique(const Hypergraph3& h, const std::vector<int>& vs);

}  // namespace boxlab

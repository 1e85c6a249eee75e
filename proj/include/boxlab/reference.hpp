#pragma once

#include <optional>
#include <vector>

#include "boxlab/counting.hpp"
#include "boxlab/hypergraph.hpp"
#include "boxlab/palette.hpp"

namespace boxlab {

// Serial reference implementations.  Each walks the full configuration space
// with plain nested loops and shares no kernel code with the optimized
// counterparts, so the two paths check each other: the test suite asserts
// exact agreement and the benchmark tool measures the gap.  Keep these naive
// on purpose.
namespace reference {

DensityReport count_boxtimes(const Hypergraph3& h, const PairSet& P, const PairSet& Q);
DensityReport count_ev(const Hypergraph3& h, const std::vector<int>& X, const PairSet& P);
DensityReport count_vvv(const Hypergraph3& h, const std::vector<int>& X,
                        const std::vector<int>& Y, const std::vector<int>& Z);
long long count_triangles_tripartite(const TripartiteGraph& g);

// Enumerates all k-subsets in lexicographic order; first clique found wins.
std::optional<std::vector<int>> find_clique(const Hypergraph3& h, int k);

// Enumerates all colours^C(k,2) edge colourings of K_k in lexicographic order
// and returns the first one whose every triangle pattern lies in the palette.
// Only sensible for tiny k and few colours.
std::optional<std::vector<int>> enumerate_palette_colouring(const Palette& p, int k);

}  // namespace reference
}  // namespace boxlab

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "boxlab/bitset.hpp"
#include "boxlab/rational.hpp"

namespace boxlab {

// 3-uniform hypergraph on vertices 0..n-1.  Edges are unordered triples of
// distinct vertices, kept as a sorted list plus a rank-indexed bitset
// (combinatorial number system) so membership queries cost O(1) regardless of
// the edge count.
class Hypergraph3 {
public:
    explicit Hypergraph3(int n);

    // Sorts, validates and deduplicates.  Each triple must have three distinct
    // in-range vertices.
    static Hypergraph3 from_edges(int n, std::vector<std::array<int, 3>> edges);

    int vertex_count() const { return n_; }
    long long edge_count() const { return static_cast<long long>(edges_.size()); }
    const std::vector<std::array<int, 3>>& edges() const { return edges_; }

    void add_edge(int x, int y, int z);

    // Any argument order; false when the vertices are not pairwise distinct.
    bool has_edge(int x, int y, int z) const;

    // Number of edges containing each vertex.
    std::vector<long long> link_degrees() const;

    // {z : {x,y,z} is an edge} as a bitset over vertices.
    DynBitset link_row(int x, int y) const;

private:
    int n_ = 0;
    std::vector<std::array<int, 3>> edges_;  // each sorted, list sorted
    DynBitset member_;                       // bit per triple rank
    std::vector<long long> rank2_;           // C(i,2)
    std::vector<long long> rank3_;           // C(i,3)

    long long rank(int x, int y, int z) const {  // requires x < y < z
        return x + rank2_[y] + rank3_[z];
    }
};

// Set of ordered pairs (x, y) over vertices 0..n-1.  Loops are rejected: the
// density counters only ever count configurations with pairwise-distinct
// vertices, so pairs (x, x) have no meaning here.
class PairSet {
public:
    explicit PairSet(int n);

    int vertex_count() const { return n_; }
    long long size() const { return count_; }

    void add(int x, int y);
    bool contains(int x, int y) const;

    // {y : (x,y) in P} as a bitset.
    const DynBitset& row(int x) const { return rows_[x]; }

    // All ordered pairs (x, y) from X x Y with x != y.
    static PairSet product(int n, const std::vector<int>& X, const std::vector<int>& Y);

    // Each ordered pair (x, y), x != y, kept independently with probability
    // rho.  Deterministic per-pair streams: the outcome for a given pair
    // depends only on (seed, x, y).
    static PairSet random(int n, const Rational& rho, uint64_t seed);

private:
    int n_ = 0;
    long long count_ = 0;
    std::vector<DynBitset> rows_;
};

// Validates a vertex subset (in-range, no duplicates) and returns it as a
// bitset over 0..n-1.
DynBitset vertex_subset_bits(int n, const std::vector<int>& xs);

}  // namespace boxlab

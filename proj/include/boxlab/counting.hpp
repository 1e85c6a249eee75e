#pragma once

#include <optional>
#include <vector>

#include "boxlab/bitset.hpp"
#include "boxlab/hypergraph.hpp"
#include "boxlab/rational.hpp"

namespace boxlab {

// Outcome of a density count: how many configurations were counted, how many
// of them were supported by an edge, and their exact ratio (absent when the
// family is empty).  No floating division anywhere.
struct DensityReport {
    long long e = 0;
    long long total = 0;
    std::optional<Rational> ratio;  // e/total when total > 0

    static DensityReport of(long long e, long long total);
};

// Counts pairs of pairs ((x,y),(x,z)) in P x Q sharing their first coordinate,
// with x, y, z pairwise distinct; e counts those whose {x,y,z} is an edge.
// The optimized kernel walks edges for e and bitset rows for the total, and
// parallelizes across vertices when OpenMP is enabled.
DensityReport count_boxtimes(const Hypergraph3& h, const PairSet& P, const PairSet& Q);

// Counts pairs (x,(y,z)) in X x P with x, y, z pairwise distinct; e counts
// edge-supported ones.
DensityReport count_ev(const Hypergraph3& h, const std::vector<int>& X, const PairSet& P);

// Counts triples (x,y,z) in X x Y x Z with pairwise-distinct entries; e counts
// edge-supported ones.  The sets may overlap; degenerate triples are excluded.
DensityReport count_vvv(const Hypergraph3& h, const std::vector<int>& X,
                        const std::vector<int>& Y, const std::vector<int>& Z);

// Tripartite graph on three disjoint vertex parts with bipartite adjacency
// between each pair of parts.  Adjacency is stored as bitset rows.
class TripartiteGraph {
public:
    // Parts are given as disjoint vertex subsets of a common ground set;
    // overlap is an argument error.
    TripartiteGraph(std::vector<int> X, std::vector<int> Y, std::vector<int> Z);

    // Random bipartite adjacency: each cross pair kept independently with
    // probability p (deterministic per-pair streams).
    static TripartiteGraph random(std::vector<int> X, std::vector<int> Y, std::vector<int> Z,
                                  const Rational& p, uint64_t seed);

    int x_size() const { return static_cast<int>(X_.size()); }
    int y_size() const { return static_cast<int>(Y_.size()); }
    int z_size() const { return static_cast<int>(Z_.size()); }
    const std::vector<int>& X() const { return X_; }
    const std::vector<int>& Y() const { return Y_; }
    const std::vector<int>& Z() const { return Z_; }

    void add_xy(int xi, int yi);
    void add_xz(int xi, int zi);
    void add_yz(int yi, int zi);
    bool xy(int xi, int yi) const { return xy_[xi].test(yi); }
    bool xz(int xi, int zi) const { return xz_[xi].test(zi); }
    bool yz(int yi, int zi) const { return yz_[yi].test(zi); }
    const DynBitset& xz_row(int xi) const { return xz_[xi]; }
    const DynBitset& yz_row(int yi) const { return yz_[yi]; }
    const DynBitset& xy_row(int xi) const { return xy_[xi]; }

private:
    std::vector<int> X_, Y_, Z_;
    std::vector<DynBitset> xy_, xz_, yz_;  // rows over the second part
};

// Number of triangles (x,y,z) with one vertex per part and all three cross
// edges present.
long long count_triangles_tripartite(const TripartiteGraph& g);

// Regularity parameters (d2, delta2) for the triangle-count upper bound
// d2^3 |X||Y||Z| + 3 delta2 |X||Y||Z| that regular-enough tripartite graphs
// obey.  Used by the statistical triangle-count checks.
struct RegularityParams {
    Rational d2;
    Rational delta2;
};

double triangle_count_upper_bound(const RegularityParams& rp, long long nx, long long ny,
                                  long long nz);

}  // namespace boxlab

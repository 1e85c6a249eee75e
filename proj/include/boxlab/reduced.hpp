#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "boxlab/bitset.hpp"
#include "boxlab/clique.hpp"
#include "boxlab/rational.hpp"

namespace boxlab {

// A multipartite 3-uniform structure over an ordered index set I: one vertex
// class per unordered index pair, and edges that take exactly one vertex from
// each class of an index triple.  Vertices within a class are 0..size-1.
class ReducedHypergraph {
public:
    explicit ReducedHypergraph(std::vector<std::string> indices);

    // Declares the size of the class on {i, j}; must happen before any edge
    // touches the pair and sizes must be >= 1.
    void set_class_size(int i, int j, int size);

    // Adds the edge (p in the {i,j} class, q in {i,k}, s in {j,k}) for
    // positions i < j < k.  Idempotent; validates ranges.
    void add_edge(int i, int j, int k, int p, int q, int s);

    int index_count() const { return static_cast<int>(indices_.size()); }
    const std::vector<std::string>& indices() const { return indices_; }
    const std::string& index_name(int pos) const;
    // Position of a named index; throws ArgumentError if unknown.
    int position(const std::string& name) const;

    // Size of the class on {i, j} (0 when undeclared); i != j, any order.
    int class_size(int i, int j) const;
    // Throws PreconditionError naming a pair whose class is undeclared.
    void require_complete_classes() const;

    long long edge_count() const { return edge_count_; }

    // Membership for sorted roles: i < j < k, p in {i,j}, q in {i,k}, s in {j,k}.
    bool has_edge_sorted(int i, int j, int k, int p, int q, int s) const;

    // Membership for arbitrary roles: vertices v_ab in the {a,b} class,
    // v_ac in {a,c}, v_bc in {b,c} for distinct positions a, b, c.
    bool has_edge(int a, int b, int c, int v_ab, int v_ac, int v_bc) const;

    // Number of w in the {b, c} class completing an edge with u in {apex, b}
    // and v in {apex, c}.
    long long pair_degree(int apex, int b, int c, int u, int v) const;

    // Edges of the sorted triple (i < j < k) as (p, q, s) rows.
    std::vector<std::array<int, 3>> triple_edges(int i, int j, int k) const;

    // Every class of the given size, every possible edge present.
    static ReducedHypergraph complete(std::vector<std::string> indices, int class_size);
    // Every class of the given size; each possible edge kept independently
    // with probability rho.
    static ReducedHypergraph random(std::vector<std::string> indices, int class_size,
                                    const Rational& rho, std::uint64_t seed);

private:
    struct TripleGrid {
        int sij = 0, sik = 0, sjk = 0;
        std::vector<DynBitset> by_pq;  // row over s for each (p, q)
        std::vector<DynBitset> by_ps;  // row over q for each (p, s)
        std::vector<DynBitset> by_qs;  // row over p for each (q, s)
    };

    long long pair_rank(int i, int j) const;   // i < j
    long long triple_rank(int i, int j, int k) const;  // i < j < k
    const TripleGrid* grid(int i, int j, int k) const;

    std::vector<std::string> indices_;
    std::unordered_map<std::string, int> position_;
    std::vector<int> class_size_;
    std::unordered_map<long long, TripleGrid> grids_;
    long long edge_count_ = 0;
};

// Index names "p01", "p02", ... convenient for generated instances.
std::vector<std::string> numbered_indices(int n, const std::string& prefix = "p");

// ---- density check --------------------------------------------------------

struct BoxDenseViolation {
    std::array<int, 3> roles;  // (apex, left, right) index positions
    long long bad_pairs = 0;   // pairs with degree below d * |target class|
    long long pair_total = 0;  // |{apex,left} class| * |{apex,right} class|
};

struct BoxDenseReport {
    bool dense = false;
    bool vacuous = false;  // fewer than three indices
    Rational d, delta;
    long long orientations_checked = 0;
    std::vector<BoxDenseViolation> violations;
};

// For every ordered role assignment (apex, left, right) of every index
// triple, counts vertex pairs in the two apex classes whose degree into the
// third class is strictly below d * |third class|; the structure passes when
// every such count is at most delta * (product of the two apex class sizes).
// All comparisons are exact rational arithmetic.
BoxDenseReport check_box_dense(const ReducedHypergraph& A, const Rational& d,
                               const Rational& delta);

// ---- selections and admissibility ----------------------------------------

// A full assignment of one class vertex per (x, y) with x from xs, y from ys
// (disjoint position lists); vertex[a * |ys| + b] lies in the class on
// {xs[a], ys[b]}.
struct Selection {
    std::vector<int> xs, ys;
    std::vector<int> vertex;

    int at(int a, int b) const;                      // by list position
    int vertex_for(int x_pos, int y_pos) const;      // by index position
    Selection restricted(const std::vector<int>& sub_xs,
                         const std::vector<int>& sub_ys) const;
};

struct AdmissibleViolation {
    int x, xp, y;  // positions: distinct x, xp in xs, y in ys
    long long degree = 0;
    long long class_size = 0;  // |class on {x, xp}|
};

struct AdmissibleReport {
    bool pass = false;
    Rational d;
    std::vector<AdmissibleViolation> violations;
};

// Checks that for all distinct x, x' in sel.xs and every y in sel.ys the two
// selected vertices on {x,y} and {x',y} have at least d * |class on {x,x'}|
// common completions in that class.
AdmissibleReport check_admissible(const ReducedHypergraph& A, const Selection& sel,
                                  const Rational& d);

// ---- cliques ---------------------------------------------------------------

struct ReducedCliqueWitness {
    std::vector<int> members;      // index positions, increasing
    std::vector<int> pair_vertex;  // one vertex per pair (members[a], members[b]),
                                   // a < b, indexed b*(b-1)/2 + a
};

struct ReducedCliqueOptions {
    long long node_limit = -1;  // < 0 means unbounded
};

struct ReducedCliqueResult {
    SearchStatus status = SearchStatus::none;
    ReducedCliqueWitness witness;  // populated when status == found
    long long nodes = 0;
};

// True when every triple of members has its three chosen vertices as an edge.
bool reduced_clique_holds(const ReducedHypergraph& A, const ReducedCliqueWitness& w);

// Backtracking over index positions (increasing) and per-pair vertex choices.
// t >= 3 required; t > |I| returns none immediately.
ReducedCliqueResult find_reduced_clique(const ReducedHypergraph& A, int t,
                                        const ReducedCliqueOptions& opts = {});

}  // namespace boxlab

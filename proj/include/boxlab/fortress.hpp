#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "boxlab/rational.hpp"
#include "boxlab/reduced.hpp"
#include "boxlab/systems.hpp"

namespace boxlab {

// Key of one fortress vertex: an unordered leaf pair (positions into the
// host tree's sorted leaf list, a < b) plus a deviation sequence taken from
// the deviation set of the pair's meet.
struct FortressKey {
    int a = 0;
    int b = 0;
    Seq d;
    auto operator<=>(const FortressKey&) const = default;
};

// A host tree, a mapping of its leaves to index names of a reduced
// hypergraph, and one class vertex per (leaf pair, deviation sequence).
struct Fortress {
    KMTree tree = KMTree::uniform(1, 1);  // placeholder until assigned
    std::vector<std::string> leaf_names;  // parallel to tree.leaves()
    std::map<FortressKey, int> vertices;

    // Vertex stored for the (possibly unnormalized) pair and deviation;
    // throws ArgumentError when the key is absent.
    int vertex_at(int a, int b, const Seq& d) const;
};

struct FortressViolation {
    int a = 0;  // the shallow leaf (meets both others at the same depth)
    int b = 0, c = 0;  // the deep pair, b < c
    Seq d;             // deviation sequence of the (b, c) meet
};

struct FortressCheck {
    bool pass = false;
    bool vacuous = false;  // height-1 host: the closure axiom never binds
    long long checks = 0;
    std::vector<FortressViolation> violations;
};

// Structural validation (leaf-name bijection into A, complete vertex domain,
// class-range vertices) throws ArgumentError naming the first defect.  The
// closure axiom is then checked for every leaf triple where one leaf meets
// the other two at a strictly shallower depth, over every deviation sequence
// of the deep pair's meet whose next entry matches the shallow leaf.
FortressCheck verify_fortress(const ReducedHypergraph& A, const Fortress& F);

// Binary hosts carry exactly one deviation sequence per leaf pair, and a
// passing fortress is exactly a clique of order 2^height on the leaf
// indices.  Requires arity 2 (ArgumentError) and a passing verify_fortress
// (PreconditionError).
ReducedCliqueWitness fortress_to_clique(const ReducedHypergraph& A, const Fortress& F);

// Inverse relabeling: the members of a valid clique witness of order 2^r
// become the leaves of a uniform binary tree of height r.  The result passes
// verify_fortress, and fortress_to_clique returns the original witness.
Fortress clique_to_fortress(const ReducedHypergraph& A, const ReducedCliqueWitness& w);

// ---- randomized base selection ---------------------------------------------

struct BaseSelectionInput {
    std::vector<int> x0;               // index positions; |x0| = m >= 2
    std::vector<std::vector<int>> xj;  // attached sets; their count fixes r = count + 1
    std::vector<Selection> cj;         // per attached set: xs == x0, ys == xj[j]
    Rational eps;                      // in (0, 1/(r-1)]
    int retries = 64;
    std::uint64_t seed = 0;
};

struct BaseSelectionResult {
    bool success = false;
    int draws = 0;                     // attempts consumed
    std::vector<int> pair_vertex;      // per unordered pair of x0, index b*(b-1)/2+a for a < b
    std::vector<std::vector<int>> yj;  // surviving members per attached set
    std::vector<bool> yj_degenerate;   // attached set was empty
};

// Draws one uniform class vertex per unordered pair of x0 (all draws from
// the explicit seed), keeps the attached members whose selected vertices
// complete an edge with every drawn pair vertex, and succeeds when every
// surviving set holds at least an (eps/2)^C(m,2) share of its attached set
// (exact arbitrary-precision comparison).  Retries independently up to the
// budget; exhausting it is a failure result, not an error.  Hypothesis
// violations (overlapping sets, non-admissible attachments at level
// (r-2)/(r-1)+eps) throw PreconditionError.
BaseSelectionResult sample_base_selection(const ReducedHypergraph& A,
                                          const BaseSelectionInput& in);

// ---- recursive fortress builder ---------------------------------------------

struct FortressBuildInput {
    KMTree x0 = KMTree::uniform(1, 1);  // height k host; k is read off the tree
    std::vector<std::string> x0_names;  // leaf -> index name, parallel to x0.leaves()
    std::vector<std::vector<int>> xj;   // attached sets; count must equal r - k
    std::vector<Selection> cj;          // (X0-leaves, attached set) selections
    int r = 2;
    int m = 2;
    Rational eps;                       // in (0, 1/(r-1)]
    std::uint64_t seed = 0;
    int retries = 64;
};

struct FortressBuildResult {
    bool success = false;
    // On failure: one of "Part II arity", "Part III admissibility",
    // "Part III Y0 size", "Part IV recursion", "Part IV W extraction",
    // "base selection"; detail pins down the pair/set/stage concerned.
    std::string failure_stage;
    std::string failure_detail;
    Fortress fortress;                 // on success; fortress.tree is the arity-m system
    std::vector<std::vector<int>> yj;  // surviving attached members (positions)
    long long draws = 0;               // total random draws across all levels
};

// Builds an arity-m fortress inside the supplied host system by recursion on
// height: the first m children of the root are fixed, cross-child vertices
// are sampled and checked (admissibility plus attached-survivor shares), and
// each ordered child pair in turn receives a sub-fortress from the
// height-(k-1) recursion, after which the partner subtree is re-extracted
// from the returned survivor set.  Every stage that exhausts its retry or
// size budget produces a stage-named failure instead of an exception.  All
// randomness derives from the input seed.
FortressBuildResult build_fortress(const ReducedHypergraph& A, const FortressBuildInput& in);

}  // namespace boxlab

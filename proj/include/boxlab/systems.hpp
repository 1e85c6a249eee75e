#pragma once

#include <string>
#include <utility>
#include <vector>

#include "boxlab/rational.hpp"

namespace boxlab {

// A label is an opaque token; sequences of labels address tree nodes
// (root-to-node paths).  Labels sort as strings, which is the only order the
// library ever uses, so determinism does not depend on any numeric scheme.
using Label = std::string;
using Seq = std::vector<Label>;

// Length of the longest common initial segment of a and b.
int wedge_length(const Seq& a, const Seq& b);

// Longest common initial segment (the "meet" of two paths).
Seq wedge(const Seq& a, const Seq& b);

// First `len` entries of a; throws ArgumentError unless 0 <= len <= |a|.
Seq restrict_seq(const Seq& a, int len);

// Concatenation a followed by b.
Seq concat(const Seq& a, const Seq& b);

// Comma-joined rendering used in diagnostics and file formats; the empty
// sequence renders as "-".
std::string seq_to_string(const Seq& a);

// Inverse of seq_to_string.  Throws ArgumentError on empty tokens.
Seq seq_from_string(const std::string& text);

// A uniform M-ary tree of height k, stored as its sorted leaf list.  Every
// leaf has length k, every internal node has exactly M children, and the
// leaf count is M^k.
class KMTree {
public:
    // Builds a tree from its full leaf list and validates uniformity.
    // Labels must be nonempty and free of whitespace, '#' and ','.
    static KMTree from_leaves(std::vector<Seq> leaves);

    // The tree with labels "1".."M" (zero-padded to equal width) at every
    // node; convenient canonical instance for tests and the CLI.
    static KMTree uniform(int k, int M);

    int height() const { return k_; }
    int arity() const { return M_; }
    long long leaf_count() const { return static_cast<long long>(leaves_.size()); }
    const std::vector<Seq>& leaves() const { return leaves_; }

    bool is_node(const Seq& prefix) const;
    bool is_leaf(const Seq& c) const;

    // Child labels of an internal node, sorted.  Throws ArgumentError if the
    // prefix is not an internal node.
    std::vector<Label> successors(const Seq& prefix) const;

    // The tree of height k - |prefix| rooted at an internal node.
    KMTree subtree(const Seq& prefix) const;

    // Keeps the lexicographically first m children of every node; 1 <= m <= M.
    KMTree trim_to_arity(int m) const;

    // Position of a leaf in the sorted leaf list; throws ArgumentError if absent.
    int leaf_position(const Seq& c) const;

    bool operator==(const KMTree&) const = default;

private:
    KMTree() = default;
    std::pair<std::size_t, std::size_t> range_of(const Seq& prefix) const;

    int k_ = 0;
    int M_ = 0;
    std::vector<Seq> leaves_;  // sorted lexicographically
};

// Deviation sequences of a node c: all d of length |c| whose i-th entry is a
// sibling label of c_i (drawn from the successors of c's own prefix, not
// from the deviated path).  Sorted lexicographically; the result has
// (M-1)^{|c|} elements.  Throws ArgumentError if c is not a node or the
// result would exceed an internal size guard.
std::vector<Seq> q_set(const KMTree& tree, const Seq& c);

struct ExtractResult {
    KMTree tree;  // uniform arity m, same height, leaves inside the given set
    int m = 0;
};

// Extracts a uniform-arity subtree whose leaves all lie in `chosen`.
//
// Requires |chosen| >= eps * M^k (PreconditionError otherwise) and
// 0 < eps <= 1.  The default mode follows the density recursion: a child is
// kept when its subtree still holds a ((k'-1)/k')-scaled share of the chosen
// leaves, the lexicographically first m = ceil(eps*M/k) qualifying children
// survive at every node, and a counting argument guarantees m qualify.  With
// best_effort set, returns instead the maximum uniform arity achievable (via
// a bottom-up feasibility pass), which is always >= ceil(eps*M/k).
ExtractResult extract_subsystem(const KMTree& tree, const std::vector<Seq>& chosen,
                                const Rational& eps, bool best_effort = false);

}  // namespace boxlab

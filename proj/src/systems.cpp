#include "boxlab/systems.hpp"

#include <algorithm>
#include <cctype>

#include "boxlab/error.hpp"

namespace boxlab {

int wedge_length(const Seq& a, const Seq& b) {
    std::size_t n = std::min(a.size(), b.size());
    std::size_t s = 0;
    while (s < n && a[s] == b[s]) ++s;
    return static_cast<int>(s);
}

Seq wedge(const Seq& a, const Seq& b) {
    return restrict_seq(a, wedge_length(a, b));
}

Seq restrict_seq(const Seq& a, int len) {
    if (len < 0 || len > static_cast<int>(a.size()))
        throw ArgumentError("sequence restriction length out of range");
    return Seq(a.begin(), a.begin() + len);
}

Seq concat(const Seq& a, const Seq& b) {
    Seq out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

std::string seq_to_string(const Seq& a) {
    if (a.empty()) return "-";
    std::string out;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) out += ',';
        out += a[i];
    }
    return out;
}

Seq seq_from_string(const std::string& text) {
    if (text == "-") return {};
    Seq out;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = text.find(',', start);
        std::string token = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (token.empty()) throw ArgumentError("empty label in sequence text '" + text + "'");
        out.push_back(token);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

namespace {

void validate_label(const Label& label) {
    if (label.empty()) throw ArgumentError("tree labels must be nonempty");
    for (char ch : label) {
        if (ch == ',' || ch == '#' || std::isspace(static_cast<unsigned char>(ch)))
            throw ArgumentError("tree label '" + label + "' contains a reserved character");
    }
}

// Checks that leaves[lo, hi) all agree up to `depth` and branch uniformly
// with arity M below it.
void validate_uniform(const std::vector<Seq>& leaves, std::size_t lo, std::size_t hi, int depth,
                      int k, int M) {
    if (depth == k) {
        if (hi - lo != 1) throw ArgumentError("duplicate leaf in tree");
        return;
    }
    int children = 0;
    std::size_t i = lo;
    while (i < hi) {
        const Label& label = leaves[i][depth];
        std::size_t j = i;
        while (j < hi && leaves[j][depth] == label) ++j;
        ++children;
        validate_uniform(leaves, i, j, depth + 1, k, M);
        i = j;
    }
    if (children != M)
        throw ArgumentError("tree is not uniformly " + std::to_string(M) + "-ary at depth " +
                            std::to_string(depth));
}

}  // namespace

KMTree KMTree::from_leaves(std::vector<Seq> leaves) {
    if (leaves.empty()) throw ArgumentError("a tree needs at least one leaf");
    const std::size_t k = leaves.front().size();
    if (k == 0) throw ArgumentError("tree height must be at least 1");
    for (const Seq& leaf : leaves) {
        if (leaf.size() != k) throw ArgumentError("all leaves must have equal length");
        for (const Label& label : leaf) validate_label(label);
    }
    std::sort(leaves.begin(), leaves.end());

    // Root arity determines M; the recursive walk enforces it everywhere and
    // rejects duplicates.
    int M = 0;
    for (std::size_t i = 0; i < leaves.size();) {
        const Label& label = leaves[i][0];
        std::size_t j = i;
        while (j < leaves.size() && leaves[j][0] == label) ++j;
        ++M;
        i = j;
    }
    unsigned __int128 expected = 1;
    for (std::size_t d = 0; d < k; ++d) {
        expected *= static_cast<unsigned>(M);
        if (expected > (static_cast<unsigned __int128>(1) << 40))
            throw ArgumentError("tree too large");
    }
    if (expected != leaves.size())
        throw ArgumentError("leaf count " + std::to_string(leaves.size()) + " is not arity^height");
    validate_uniform(leaves, 0, leaves.size(), 0, static_cast<int>(k), M);

    KMTree t;
    t.k_ = static_cast<int>(k);
    t.M_ = M;
    t.leaves_ = std::move(leaves);
    return t;
}

KMTree KMTree::uniform(int k, int M) {
    if (k < 1 || M < 1) throw ArgumentError("uniform tree needs height >= 1 and arity >= 1");
    int width = static_cast<int>(std::to_string(M).size());
    std::vector<Label> labels(M);
    for (int i = 0; i < M; ++i) {
        std::string s = std::to_string(i + 1);
        labels[i] = std::string(width - s.size(), '0') + s;
    }
    std::vector<Seq> leaves;
    Seq current;
    auto rec = [&](auto&& self, int depth) -> void {
        if (depth == k) {
            leaves.push_back(current);
            return;
        }
        for (const Label& label : labels) {
            current.push_back(label);
            self(self, depth + 1);
            current.pop_back();
        }
    };
    rec(rec, 0);
    return from_leaves(std::move(leaves));
}

std::pair<std::size_t, std::size_t> KMTree::range_of(const Seq& prefix) const {
    // Leaves extending `prefix` form a contiguous block of the sorted list.
    auto lo = std::lower_bound(leaves_.begin(), leaves_.end(), prefix,
                               [](const Seq& leaf, const Seq& p) {
                                   return std::lexicographical_compare(
                                       leaf.begin(), leaf.begin() + std::min(leaf.size(), p.size()),
                                       p.begin(), p.end());
                               });
    std::size_t start = static_cast<std::size_t>(lo - leaves_.begin());
    std::size_t end = start;
    while (end < leaves_.size() &&
           std::equal(prefix.begin(), prefix.end(), leaves_[end].begin(),
                      leaves_[end].begin() + std::min(leaves_[end].size(), prefix.size())) &&
           leaves_[end].size() >= prefix.size())
        ++end;
    return {start, end};
}

bool KMTree::is_node(const Seq& prefix) const {
    if (prefix.size() > static_cast<std::size_t>(k_)) return false;
    auto [lo, hi] = range_of(prefix);
    return lo < hi;
}

bool KMTree::is_leaf(const Seq& c) const {
    return c.size() == static_cast<std::size_t>(k_) &&
           std::binary_search(leaves_.begin(), leaves_.end(), c);
}

std::vector<Label> KMTree::successors(const Seq& prefix) const {
    if (prefix.size() >= static_cast<std::size_t>(k_))
        throw ArgumentError("successors requested below an internal node");
    auto [lo, hi] = range_of(prefix);
    if (lo >= hi) throw ArgumentError("prefix '" + seq_to_string(prefix) + "' is not a tree node");
    std::vector<Label> out;
    const std::size_t depth = prefix.size();
    for (std::size_t i = lo; i < hi;) {
        out.push_back(leaves_[i][depth]);
        std::size_t j = i;
        while (j < hi && leaves_[j][depth] == out.back()) ++j;
        i = j;
    }
    return out;  // sorted because leaves are sorted
}

KMTree KMTree::subtree(const Seq& prefix) const {
    if (prefix.size() >= static_cast<std::size_t>(k_))
        throw ArgumentError("subtree root must be an internal node");
    auto [lo, hi] = range_of(prefix);
    if (lo >= hi) throw ArgumentError("prefix '" + seq_to_string(prefix) + "' is not a tree node");
    std::vector<Seq> leaves;
    leaves.reserve(hi - lo);
    for (std::size_t i = lo; i < hi; ++i)
        leaves.emplace_back(leaves_[i].begin() + prefix.size(), leaves_[i].end());
    return from_leaves(std::move(leaves));
}

KMTree KMTree::trim_to_arity(int m) const {
    if (m < 1 || m > M_) throw ArgumentError("trim arity out of range");
    if (m == M_) return *this;
    // A leaf survives when, at every depth, its label ranks among the first m
    // child labels of its own ancestor.  Surviving ancestors keep their full
    // original successor sets, so ranks can be read off the original tree.
    std::vector<Seq> kept;
    auto rec = [&](auto&& self, std::size_t lo, std::size_t hi, int depth) -> void {
        if (depth == k_) {
            kept.push_back(leaves_[lo]);
            return;
        }
        int taken = 0;
        std::size_t i = lo;
        while (i < hi && taken < m) {
            const Label& label = leaves_[i][depth];
            std::size_t j = i;
            while (j < hi && leaves_[j][depth] == label) ++j;
            self(self, i, j, depth + 1);
            ++taken;
            i = j;
        }
    };
    rec(rec, 0, leaves_.size(), 0);
    return from_leaves(std::move(kept));
}

int KMTree::leaf_position(const Seq& c) const {
    auto it = std::lower_bound(leaves_.begin(), leaves_.end(), c);
    if (it == leaves_.end() || *it != c)
        throw ArgumentError("'" + seq_to_string(c) + "' is not a leaf of the tree");
    return static_cast<int>(it - leaves_.begin());
}

std::vector<Seq> q_set(const KMTree& tree, const Seq& c) {
    if (!tree.is_node(c)) throw ArgumentError("'" + seq_to_string(c) + "' is not a tree node");
    // Per-position sibling alternatives, each taken from the successor set of
    // c's own prefix (deviated paths never change the reference node).
    std::vector<std::vector<Label>> choices(c.size());
    long long total = 1;
    for (std::size_t i = 0; i < c.size(); ++i) {
        std::vector<Label> sibs = tree.successors(restrict_seq(c, static_cast<int>(i)));
        auto it = std::find(sibs.begin(), sibs.end(), c[i]);
        if (it == sibs.end())
            throw ArgumentError("sequence leaves the tree at position " + std::to_string(i + 1));
        sibs.erase(it);
        total *= static_cast<long long>(sibs.size());
        if (total > 1'000'000) throw ArgumentError("deviation set exceeds the size guard");
        choices[i] = std::move(sibs);
    }
    std::vector<Seq> out;
    if (total == 0 && !c.empty()) return out;  // arity 1: no deviations exist
    out.reserve(static_cast<std::size_t>(total));
    Seq current(c.size());
    auto rec = [&](auto&& self, std::size_t pos) -> void {
        if (pos == c.size()) {
            out.push_back(current);
            return;
        }
        for (const Label& label : choices[pos]) {
            current[pos] = label;
            self(self, pos + 1);
        }
    };
    rec(rec, 0);
    return out;  // lexicographically sorted: choices are sorted, first position varies slowest
}

namespace {

// Sorted-set membership plus subset counting over leaf blocks.
struct ChosenIndex {
    std::vector<Seq> sorted;

    bool contains(const Seq& leaf) const {
        return std::binary_search(sorted.begin(), sorted.end(), leaf);
    }
};

}  // namespace

ExtractResult extract_subsystem(const KMTree& tree, const std::vector<Seq>& chosen,
                                const Rational& eps, bool best_effort) {
    if (!(Rational(0, 1) < eps) || Rational(1, 1) < eps)
        throw ArgumentError("density parameter must lie in (0, 1]");
    ChosenIndex X;
    X.sorted = chosen;
    std::sort(X.sorted.begin(), X.sorted.end());
    X.sorted.erase(std::unique(X.sorted.begin(), X.sorted.end()), X.sorted.end());
    if (X.sorted.size() != chosen.size()) throw ArgumentError("chosen leaf set has duplicates");
    for (const Seq& leaf : X.sorted)
        if (!tree.is_leaf(leaf))
            throw ArgumentError("'" + seq_to_string(leaf) + "' is not a leaf of the tree");

    const int k = tree.height();
    const int M = tree.arity();
    long long total = tree.leaf_count();
    if (Rational(static_cast<long long>(X.sorted.size()), 1) < eps * Rational(total, 1))
        throw PreconditionError("chosen set smaller than the required density share");

    const std::vector<Seq>& leaves = tree.leaves();

    if (best_effort) {
        // Bottom-up: cap(node) = largest m' such that the node's subtree
        // contains a full-height uniform-m' subtree with leaves in X.  A node
        // achieves m' exactly when at least m' children achieve m'.
        std::vector<Seq> kept;
        auto cap = [&](auto&& self, std::size_t lo, std::size_t hi, int depth) -> int {
            if (depth == k) return X.contains(leaves[lo]) ? M : 0;
            std::vector<int> child_caps;
            std::size_t i = lo;
            while (i < hi) {
                const Label& label = leaves[i][depth];
                std::size_t j = i;
                while (j < hi && leaves[j][depth] == label) ++j;
                child_caps.push_back(self(self, i, j, depth + 1));
                i = j;
            }
            std::sort(child_caps.rbegin(), child_caps.rend());
            int best = 0;
            for (std::size_t c = 0; c < child_caps.size(); ++c)
                best = std::max(best, std::min(child_caps[c], static_cast<int>(c) + 1));
            return best;
        };
        int m = cap(cap, 0, leaves.size(), 0);
        if (m == 0)
            throw PreconditionError("chosen set admits no uniform subtree");  // unreachable given the density precondition
        // Collect the witness: lexicographically first m children achieving m.
        auto collect = [&](auto&& self, std::size_t lo, std::size_t hi, int depth) -> void {
            if (depth == k) {
                kept.push_back(leaves[lo]);
                return;
            }
            int taken = 0;
            std::size_t i = lo;
            while (i < hi && taken < m) {
                const Label& label = leaves[i][depth];
                std::size_t j = i;
                while (j < hi && leaves[j][depth] == label) ++j;
                if (cap(cap, i, j, depth + 1) >= m) {
                    self(self, i, j, depth + 1);
                    ++taken;
                }
                i = j;
            }
            if (taken != m) throw PreconditionError("uniform subtree collection failed");
        };
        collect(collect, 0, leaves.size(), 0);
        return {KMTree::from_leaves(std::move(kept)), m};
    }

    // Density recursion.  At a node of remaining height k' whose subtree
    // holds at least eps' * M^{k'} chosen leaves, a child qualifies when its
    // subtree holds at least ((k'-1)/k') * eps' * M^{k'-1}; counting shows at
    // least ceil(eps*M/k) children qualify, and that target is level-invariant.
    Rational target = eps * Rational(M, k);
    int m = static_cast<int>((target.num + target.den - 1) / target.den);
    std::vector<Seq> kept;
    auto count_in = [&](std::size_t lo, std::size_t hi) -> long long {
        long long c = 0;
        for (std::size_t i = lo; i < hi; ++i)
            if (X.contains(leaves[i])) ++c;
        return c;
    };
    auto rec = [&](auto&& self, std::size_t lo, std::size_t hi, int depth, Rational share) -> void {
        const int remaining = k - depth;
        if (remaining == 0) {
            kept.push_back(leaves[lo]);
            return;
        }
        Rational child_share = share * Rational(remaining - 1, remaining);
        long long block = 1;
        for (int d = 0; d < remaining - 1; ++d) block *= M;
        int taken = 0;
        std::size_t i = lo;
        while (i < hi && taken < m) {
            const Label& label = leaves[i][depth];
            std::size_t j = i;
            while (j < hi && leaves[j][depth] == label) ++j;
            long long inside = count_in(i, j);
            bool qualifies = remaining == 1 ? X.contains(leaves[i])
                                            : !(Rational(inside, 1) < child_share * Rational(block, 1));
            if (qualifies) {
                self(self, i, j, depth + 1, child_share);
                ++taken;
            }
            i = j;
        }
        if (taken != m)
            throw PreconditionError("density recursion found too few qualifying children");
    };
    rec(rec, 0, leaves.size(), 0, eps);
    return {KMTree::from_leaves(std::move(kept)), m};
}

}  // namespace boxlab

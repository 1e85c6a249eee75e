#include "boxlab/clique.hpp"

#include <algorithm>
#include <atomic>
#include <map>

#include "boxlab/error.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace boxlab {

bool is_clique(const Hypergraph3& h, const std::vector<int>& vs) {
    for (size_t a = 0; a < vs.size(); ++a)
        for (size_t b = a + 1; b < vs.size(); ++b) {
            if (vs[a] == vs[b]) return false;
            for (size_t c = b + 1; c < vs.size(); ++c)
                if (!h.has_edge(vs[a], vs[b], vs[c])) return false;
        }
    return true;
}

namespace {

// Search state over positions in the fixed vertex order.  Rows are built
// lazily per (clique vertex, new vertex) pair and memoized.
struct Searcher {
    const Hypergraph3& h;
    const std::vector<int>& order;  // position -> vertex
    int k;
    long long node_limit;
    long long nodes = 0;
    bool out_of_budget = false;
    std::map<std::pair<int, int>, DynBitset> row_cache;  // position-space rows

    Searcher(const Hypergraph3& hh, const std::vector<int>& ord, int kk, long long limit)
        : h(hh), order(ord), k(kk), node_limit(limit) {}

    const DynBitset& row(int u, int v) {  // vertices, u < v normalized
        if (u > v) std::swap(u, v);
        auto it = row_cache.find({u, v});
        if (it != row_cache.end()) return it->second;
        DynBitset bits(static_cast<int>(order.size()));
        for (size_t p = 0; p < order.size(); ++p)
            if (h.has_edge(u, v, order[p])) bits.set(static_cast<int>(p));
        return row_cache.emplace(std::make_pair(u, v), std::move(bits)).first->second;
    }

    // clique holds vertices; cand holds candidate positions, all > the
    // position of the last clique vertex and compatible with every clique pair.
    bool dfs(std::vector<int>& clique, const DynBitset& cand, int from_pos,
             std::vector<int>& witness) {
        if (static_cast<int>(clique.size()) == k) {
            witness = clique;
            return true;
        }
        int need = k - static_cast<int>(clique.size());
        if (cand.count() < need) return false;
        for (int p = from_pos; p < cand.size(); ++p) {
            if (!cand.test(p)) continue;
            if (node_limit >= 0 && nodes >= node_limit) {
                out_of_budget = true;
                return false;
            }
            ++nodes;
            int v = order[p];
            DynBitset next = cand;
            next.reset_below(p + 1);
            for (int u : clique) next &= row(u, v);
            clique.push_back(v);
            if (dfs(clique, next, p + 1, witness)) return true;
            clique.pop_back();
            if (out_of_budget) return false;
        }
        return false;
    }
};

}  // namespace

CliqueResult find_clique(const Hypergraph3& h, int k, const CliqueOptions& opts) {
    if (k < 0) throw ArgumentError("negative clique order");
    int n = h.vertex_count();
    CliqueResult res;
    if (k <= 2) {
        // No triple constraints below order 3: any k distinct vertices work.
        if (n >= k) {
            res.status = SearchStatus::found;
            for (int i = 0; i < k; ++i) res.witness.push_back(i);
        }
        return res;
    }
    if (n < k) return res;

    // Fixed deterministic order: descending link degree, ties by index.
    std::vector<long long> deg = h.link_degrees();
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return deg[a] > deg[b]; });

    bool parallel = opts.node_limit < 0 && !opts.deterministic;
#ifdef _OPENMP
    parallel = parallel && omp_get_max_threads() > 1;
#else
    parallel = false;
#endif

    if (!parallel) {
        Searcher s(h, order, k, opts.node_limit);
        DynBitset all(n);
        for (int p = 0; p < n; ++p) all.set(p);
        std::vector<int> clique, witness;
        bool found = s.dfs(clique, all, 0, witness);
        res.nodes = s.nodes;
        if (found) {
            std::sort(witness.begin(), witness.end());
            if (!is_clique(h, witness)) throw PreconditionError("clique witness failed re-check");
            res.status = SearchStatus::found;
            res.witness = std::move(witness);
        } else {
            res.status = s.out_of_budget ? SearchStatus::unknown : SearchStatus::none;
        }
        return res;
    }

#ifdef _OPENMP
    // Top-level split over the first chosen position.  The reported witness is
    // the one from the smallest branch that succeeds, which is exactly the
    // sequential answer; larger branches abandon work once a smaller branch
    // has found a clique.
    std::atomic<int> best_branch{n};
    std::vector<std::vector<int>> branch_witness(n);
    long long total_nodes = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : total_nodes)
    for (int p0 = 0; p0 <= n - k; ++p0) {
        if (p0 > best_branch.load(std::memory_order_relaxed)) continue;
        Searcher s(h, order, k, -1);
        DynBitset cand(n);
        for (int p = p0 + 1; p < n; ++p) cand.set(p);
        int v0 = order[p0];
        std::vector<int> clique{v0}, witness;
        ++s.nodes;
        DynBitset next = cand;
        if (s.dfs(clique, next, p0 + 1, witness)) {
            int cur = best_branch.load();
            while (p0 < cur && !best_branch.compare_exchange_weak(cur, p0)) {
            }
            branch_witness[p0] = witness;
        }
        total_nodes += s.nodes;
    }
    res.nodes = total_nodes;
    int bb = best_branch.load();
    if (bb < n) {
        std::vector<int> witness = branch_witness[bb];
        std::sort(witness.begin(), witness.end());
        if (!is_clique(h, witness)) throw PreconditionError("clique witness failed re-check");
        res.status = SearchStatus::found;
        res.witness = std::move(witness);
    } else {
        res.status = SearchStatus::none;
    }
#endif
    return res;
}

}  // namespace boxlab

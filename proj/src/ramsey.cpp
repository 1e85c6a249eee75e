#include "boxlab/ramsey.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <vector>

#include "boxlab/error.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace boxlab {

bool colouring_respects_palette(const EdgeColouring& phi, const Palette& p) {
    int n = phi.vertex_count();
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c)
                if (!p.contains(phi.colour(a, b), phi.colour(a, c), phi.colour(b, c)))
                    return false;
    return true;
}

namespace {

using Clock = std::chrono::steady_clock;

// Backtracking state for one worker.  Edges of K_k are ordered vertex by
// vertex: block v holds (0,v), (1,v), ..., (v-1,v), so every assignment closes
// all its triangles against already-coloured edges via mask propagation.
struct Searcher {
    const Palette& pal;
    int k, l, m;
    std::vector<uint32_t> allowed;  // per-edge colour masks (bit c-1)
    std::vector<int> colour;        // per-edge, 0 = unset
    std::vector<std::pair<int, uint32_t>> trail;
    std::vector<std::vector<int>> autos;           // non-identity palette automorphisms
    std::vector<std::vector<uint16_t>> stab_stack;  // alive automorphism indices
    std::vector<int> block_state;                  // per vertex: 0 compare-equal, 1 greater

    long long nodes = 0;
    long long node_limit;
    Clock::time_point deadline;
    bool has_deadline;
    bool out_of_budget = false;

    // frontier support: collect prefixes instead of recursing past depth
    int collect_depth = -1;
    std::vector<std::vector<int>>* collector = nullptr;
    std::atomic<bool>* stop_flag = nullptr;

    Searcher(const Palette& p, int kk, const SearchBudget& budget)
        : pal(p), k(kk), l(p.colours()), m(kk * (kk - 1) / 2) {
        allowed.assign(m, (l >= 32 ? ~0u : (1u << l) - 1));
        colour.assign(m, 0);
        block_state.assign(std::max(k, 2), 1);
        for (int v = 2; v < k; ++v) block_state[v] = 0;
        for (auto& a : palette_colour_automorphisms(p)) {
            bool ident = true;
            for (int i = 0; i < l; ++i) ident = ident && a[i] == i + 1;
            if (!ident) autos.push_back(a);
        }
        // dfs/replay hold references into this stack across pushes; depth is
        // bounded by one initial entry plus one per edge, so reserving up
        // front keeps every reference stable.
        stab_stack.reserve(static_cast<size_t>(m) + 2);
        std::vector<uint16_t> all(autos.size());
        for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<uint16_t>(i);
        stab_stack.push_back(std::move(all));
        node_limit = budget.node_limit;
        has_deadline = budget.time_limit_sec >= 0;
        if (has_deadline)
            deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                          std::chrono::duration<double>(budget.time_limit_sec));
    }

    static int edge_u(int e) {  // inverse of eidx, u component
        int v = edge_v(e);
        return e - v * (v - 1) / 2;
    }
    static int edge_v(int e) {
        int v = 1;
        while ((v + 1) * v / 2 <= e) ++v;
        return v;
    }
    static int eidx(int u, int v) { return v * (v - 1) / 2 + u; }

    bool budget_exhausted() {
        if (node_limit >= 0 && nodes >= node_limit) return out_of_budget = true;
        if (has_deadline && (nodes & 0xfff) == 0 && Clock::now() >= deadline)
            return out_of_budget = true;
        if (stop_flag && stop_flag->load(std::memory_order_relaxed)) return out_of_budget = true;
        return false;
    }

    // Restrict future edges closing a triangle with (u,v); false on wipeout.
    bool propagate(int u, int v, int c) {
        for (int w = u + 1; w < v; ++w) {
            int e2 = eidx(w, v);
            uint32_t mask = pal.third_mask(colour[eidx(u, w)], c);
            uint32_t cur = allowed[e2];
            uint32_t nxt = cur & mask;
            if (nxt != cur) {
                trail.emplace_back(e2, cur);
                allowed[e2] = nxt;
                if (nxt == 0) return false;
            }
        }
        return true;
    }

    bool dfs(int e, std::vector<int>& solution) {
        if (e == m) {
            solution = colour;
            return true;
        }
        if (e == collect_depth) {
            collector->push_back(std::vector<int>(colour.begin(), colour.begin() + e));
            return false;
        }
        int v = edge_v(e), u = edge_u(e);
        const std::vector<uint16_t>& stab = stab_stack.back();
        uint32_t mask = allowed[e];
        int prev = (u < v - 1 && block_state[v] == 0) ? colour[eidx(u, v - 1)] : 0;
        while (mask) {
            int c = std::countr_zero(mask) + 1;
            mask &= mask - 1;
            // vertex-transposition lex constraint against block v-1
            if (prev && c < prev) continue;
            // orbit-minimum under the palette automorphisms fixing the prefix
            bool pruned = false;
            for (uint16_t ai : stab)
                if (autos[ai][c - 1] < c) {
                    pruned = true;
                    break;
                }
            if (pruned) continue;
            if (budget_exhausted()) return false;
            ++nodes;

            size_t trail_mark = trail.size();
            colour[e] = c;
            int old_state = block_state[v];
            if (prev && c > prev) block_state[v] = 1;
            std::vector<uint16_t> next_stab;
            for (uint16_t ai : stab)
                if (autos[ai][c - 1] == c) next_stab.push_back(ai);
            stab_stack.push_back(std::move(next_stab));

            bool ok = propagate(u, v, c);
            if (ok && dfs(e + 1, solution)) return true;

            stab_stack.pop_back();
            block_state[v] = old_state;
            colour[e] = 0;
            while (trail.size() > trail_mark) {
                allowed[trail.back().first] = trail.back().second;
                trail.pop_back();
            }
            if (out_of_budget) return false;
        }
        return false;
    }

    // Re-plays a frontier prefix (assignments already proven consistent).
    bool replay(const std::vector<int>& prefix) {
        for (size_t e = 0; e < prefix.size(); ++e) {
            int v = edge_v(static_cast<int>(e)), u = edge_u(static_cast<int>(e));
            int c = prefix[e];
            colour[e] = c;
            if (u < v - 1 && block_state[v] == 0 && c > colour[eidx(u, v - 1)])
                block_state[v] = 1;
            std::vector<uint16_t> next_stab;
            for (uint16_t ai : stab_stack.back())
                if (autos[ai][c - 1] == c) next_stab.push_back(ai);
            stab_stack.push_back(std::move(next_stab));
            if (!propagate(u, v, c)) return false;
        }
        return true;
    }
};

EdgeColouring to_colouring(int k, int l, const std::vector<int>& flat) {
    EdgeColouring phi(k, l);
    for (int v = 1; v < k; ++v)
        for (int u = 0; u < v; ++u) phi.set_colour(u, v, flat[Searcher::eidx(u, v)]);
    return phi;
}

}  // namespace

ColouringSearchResult search_palette_colouring(const Palette& p, int k,
                                               const ColouringSearchOptions& opts) {
    if (k < 0) throw ArgumentError("negative graph order");
    ColouringSearchResult res;
    auto started = Clock::now();
    auto finish = [&](SearchStatus st) {
        res.status = st;
        res.seconds = std::chrono::duration<double>(Clock::now() - started).count();
        return res;
    };

    int m = k * (k - 1) / 2;
    if (m == 0) {
        res.witness = EdgeColouring(k, p.colours());
        return finish(SearchStatus::found);
    }
    if (p.patterns().empty() && k >= 3) return finish(SearchStatus::none);

    bool budgeted = opts.budget.node_limit >= 0 || opts.budget.time_limit_sec >= 0;
    bool parallel = !budgeted && !opts.deterministic && k >= 4;
#ifdef _OPENMP
    parallel = parallel && omp_get_max_threads() > 1;
#else
    parallel = false;
#endif

    if (!parallel) {
        Searcher s(p, k, opts.budget);
        std::vector<int> solution;
        bool found = s.dfs(0, solution);
        res.nodes = s.nodes;
        if (found) {
            EdgeColouring phi = to_colouring(k, p.colours(), solution);
            if (!colouring_respects_palette(phi, p))
                throw PreconditionError("colouring witness failed re-check");
            res.witness = std::move(phi);
            return finish(SearchStatus::found);
        }
        return finish(s.out_of_budget ? SearchStatus::unknown : SearchStatus::none);
    }

#ifdef _OPENMP
    // Frontier split: enumerate consistent prefixes of the first few edges
    // sequentially, then finish each branch in parallel.  The witness comes
    // from the smallest branch that succeeds, matching the sequential answer.
    int depth = std::min(opts.frontier_depth, m);
    std::vector<std::vector<int>> frontier;
    long long total_nodes = 0;
    {
        Searcher s(p, k, opts.budget);
        s.collect_depth = depth;
        s.collector = &frontier;
        std::vector<int> solution;
        if (s.dfs(0, solution)) {  // solution shallower than the frontier
            EdgeColouring phi = to_colouring(k, p.colours(), solution);
            res.nodes = s.nodes;
            res.witness = std::move(phi);
            return finish(SearchStatus::found);
        }
        total_nodes = s.nodes;
    }
    std::atomic<bool> stop{false};
    std::atomic<long long> best_branch{static_cast<long long>(frontier.size())};
    std::vector<std::vector<int>> branch_solution(frontier.size());
#pragma omp parallel for schedule(dynamic) reduction(+ : total_nodes)
    for (long long b = 0; b < static_cast<long long>(frontier.size()); ++b) {
        if (b > best_branch.load(std::memory_order_relaxed)) continue;
        Searcher s(p, k, opts.budget);
        std::vector<int> solution;
        if (s.replay(frontier[b]) && s.dfs(depth, solution)) {
            long long cur = best_branch.load();
            while (b < cur && !best_branch.compare_exchange_weak(cur, b)) {
            }
            branch_solution[b] = solution;
            // only stop branches that cannot beat us
        }
        total_nodes += s.nodes;
    }
    res.nodes = total_nodes;
    long long bb = best_branch.load();
    if (bb < static_cast<long long>(frontier.size())) {
        EdgeColouring phi = to_colouring(k, p.colours(), branch_solution[bb]);
        if (!colouring_respects_palette(phi, p))
            throw PreconditionError("colouring witness failed re-check");
        res.witness = std::move(phi);
        return finish(SearchStatus::found);
    }
    return finish(SearchStatus::none);
#else
    return finish(SearchStatus::none);  // unreachable
#endif
}

LowerBoundReport lower_bound_report(const Palette& p, int k, const ColouringSearchOptions& opts) {
    LowerBoundReport rep;
    rep.k = k;
    rep.d = min_codegree(p);
    ColouringSearchResult sr = search_palette_colouring(p, k, opts);
    rep.search = sr.status;
    rep.bound_established = sr.status == SearchStatus::none;
    rep.nodes = sr.nodes;
    rep.seconds = sr.seconds;
    rep.witness = std::move(sr.witness);
    return rep;
}

}  // namespace boxlab

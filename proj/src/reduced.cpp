#include "boxlab/reduced.hpp"

#include <algorithm>

#include "boxlab/error.hpp"
#include "boxlab/rng.hpp"

namespace boxlab {

ReducedHypergraph::ReducedHypergraph(std::vector<std::string> indices)
    : indices_(std::move(indices)) {
    if (indices_.size() < 2) throw ArgumentError("an index set needs at least two elements");
    for (std::size_t i = 0; i < indices_.size(); ++i) {
        if (indices_[i].empty()) throw ArgumentError("index names must be nonempty");
        if (!position_.emplace(indices_[i], static_cast<int>(i)).second)
            throw ArgumentError("duplicate index name '" + indices_[i] + "'");
    }
    class_size_.assign(indices_.size() * (indices_.size() - 1) / 2, 0);
}

long long ReducedHypergraph::pair_rank(int i, int j) const {
    return static_cast<long long>(j) * (j - 1) / 2 + i;
}

long long ReducedHypergraph::triple_rank(int i, int j, int k) const {
    long long n = static_cast<long long>(indices_.size());
    return (static_cast<long long>(i) * n + j) * n + k;
}

const std::string& ReducedHypergraph::index_name(int pos) const {
    if (pos < 0 || pos >= index_count()) throw ArgumentError("index position out of range");
    return indices_[static_cast<std::size_t>(pos)];
}

int ReducedHypergraph::position(const std::string& name) const {
    auto it = position_.find(name);
    if (it == position_.end()) throw ArgumentError("unknown index '" + name + "'");
    return it->second;
}

void ReducedHypergraph::set_class_size(int i, int j, int size) {
    if (i == j || i < 0 || j < 0 || i >= index_count() || j >= index_count())
        throw ArgumentError("class pair positions out of range");
    if (size < 1) throw ArgumentError("class sizes must be at least 1");
    if (i > j) std::swap(i, j);
    int& slot = class_size_[static_cast<std::size_t>(pair_rank(i, j))];
    if (slot != 0 && slot != size) {
        // Resizing after edges exist would invalidate grids; reject outright.
        throw ArgumentError("class on {" + indices_[i] + "," + indices_[j] +
                            "} already declared with size " + std::to_string(slot));
    }
    slot = size;
}

int ReducedHypergraph::class_size(int i, int j) const {
    if (i == j || i < 0 || j < 0 || i >= index_count() || j >= index_count())
        throw ArgumentError("class pair positions out of range");
    if (i > j) std::swap(i, j);
    return class_size_[static_cast<std::size_t>(pair_rank(i, j))];
}

void ReducedHypergraph::require_complete_classes() const {
    for (int j = 1; j < index_count(); ++j)
        for (int i = 0; i < j; ++i)
            if (class_size_[static_cast<std::size_t>(pair_rank(i, j))] == 0)
                throw PreconditionError("class on {" + indices_[i] + "," + indices_[j] +
                                        "} has no declared size");
}

void ReducedHypergraph::add_edge(int i, int j, int k, int p, int q, int s) {
    if (!(0 <= i && i < j && j < k && k < index_count()))
        throw ArgumentError("edge positions must satisfy i < j < k within the index set");
    int sij = class_size(i, j), sik = class_size(i, k), sjk = class_size(j, k);
    if (sij == 0 || sik == 0 || sjk == 0)
        throw ArgumentError("all three classes need declared sizes before edges");
    if (p < 0 || p >= sij || q < 0 || q >= sik || s < 0 || s >= sjk)
        throw ArgumentError("edge vertex out of class range");
    TripleGrid& g = grids_[triple_rank(i, j, k)];
    if (g.by_pq.empty()) {
        g.sij = sij;
        g.sik = sik;
        g.sjk = sjk;
        g.by_pq.assign(static_cast<std::size_t>(sij) * sik, DynBitset(sjk));
        g.by_ps.assign(static_cast<std::size_t>(sij) * sjk, DynBitset(sik));
        g.by_qs.assign(static_cast<std::size_t>(sik) * sjk, DynBitset(sij));
    }
    DynBitset& row = g.by_pq[static_cast<std::size_t>(p) * sik + q];
    if (row.test(s)) return;  // already present
    row.set(s);
    g.by_ps[static_cast<std::size_t>(p) * sjk + s].set(q);
    g.by_qs[static_cast<std::size_t>(q) * sjk + s].set(p);
    ++edge_count_;
}

const ReducedHypergraph::TripleGrid* ReducedHypergraph::grid(int i, int j, int k) const {
    auto it = grids_.find(triple_rank(i, j, k));
    return it == grids_.end() ? nullptr : &it->second;
}

bool ReducedHypergraph::has_edge_sorted(int i, int j, int k, int p, int q, int s) const {
    if (!(0 <= i && i < j && j < k && k < index_count()))
        throw ArgumentError("edge positions must satisfy i < j < k within the index set");
    const TripleGrid* g = grid(i, j, k);
    if (!g) return false;
    if (p < 0 || p >= g->sij || q < 0 || q >= g->sik || s < 0 || s >= g->sjk)
        throw ArgumentError("edge vertex out of class range");
    return g->by_pq[static_cast<std::size_t>(p) * g->sik + q].test(s);
}

bool ReducedHypergraph::has_edge(int a, int b, int c, int v_ab, int v_ac, int v_bc) const {
    if (a == b || a == c || b == c) throw ArgumentError("edge needs three distinct indices");
    // Sort the positions and carry each pair vertex to its sorted slot.
    struct PairV {
        int lo, hi, v;
    };
    std::array<PairV, 3> pvs = {PairV{std::min(a, b), std::max(a, b), v_ab},
                                PairV{std::min(a, c), std::max(a, c), v_ac},
                                PairV{std::min(b, c), std::max(b, c), v_bc}};
    std::array<int, 3> sorted = {a, b, c};
    std::sort(sorted.begin(), sorted.end());
    auto vertex_of = [&](int lo, int hi) -> int {
        for (const PairV& pv : pvs)
            if (pv.lo == lo && pv.hi == hi) return pv.v;
        throw ArgumentError("inconsistent pair roles");
    };
    int p = vertex_of(sorted[0], sorted[1]);
    int q = vertex_of(sorted[0], sorted[2]);
    int s = vertex_of(sorted[1], sorted[2]);
    return has_edge_sorted(sorted[0], sorted[1], sorted[2], p, q, s);
}

long long ReducedHypergraph::pair_degree(int apex, int b, int c, int u, int v) const {
    if (apex == b || apex == c || b == c)
        throw ArgumentError("pair degree needs three distinct indices");
    int i = apex, j = b, kk = c;
    // Reduce to the sorted triple's grids: the row over the {b,c} class keyed
    // by the two apex-side vertices.
    std::array<int, 3> sorted = {i, j, kk};
    std::sort(sorted.begin(), sorted.end());
    const TripleGrid* g = grid(sorted[0], sorted[1], sorted[2]);
    int su = class_size(apex, b), sv = class_size(apex, c);
    if (u < 0 || u >= su || v < 0 || v >= sv)
        throw ArgumentError("pair degree vertex out of class range");
    if (!g) return 0;
    if (apex == sorted[0]) {
        // apex pairs are {i,j} and {i,k} in sorted terms
        int p = (b == sorted[1]) ? u : v;
        int q = (c == sorted[2]) ? v : u;
        return static_cast<long long>(g->by_pq[static_cast<std::size_t>(p) * g->sik + q].count());
    }
    if (apex == sorted[1]) {
        // apex pairs are {i,j} and {j,k}: rows over {i,k} are by_ps
        int p = (b == sorted[0]) ? u : v;   // vertex in {sorted0, sorted1}
        int s = (c == sorted[2]) ? v : u;   // vertex in {sorted1, sorted2}
        return static_cast<long long>(g->by_ps[static_cast<std::size_t>(p) * g->sjk + s].count());
    }
    // apex == sorted[2]: apex pairs are {i,k} and {j,k}; rows over {i,j} are by_qs
    int q = (b == sorted[0]) ? u : v;
    int s = (c == sorted[1]) ? v : u;
    return static_cast<long long>(g->by_qs[static_cast<std::size_t>(q) * g->sjk + s].count());
}

std::vector<std::array<int, 3>> ReducedHypergraph::triple_edges(int i, int j, int k) const {
    if (!(0 <= i && i < j && j < k && k < index_count()))
        throw ArgumentError("edge positions must satisfy i < j < k within the index set");
    std::vector<std::array<int, 3>> out;
    const TripleGrid* g = grid(i, j, k);
    if (!g) return out;
    for (int p = 0; p < g->sij; ++p)
        for (int q = 0; q < g->sik; ++q)
            g->by_pq[static_cast<std::size_t>(p) * g->sik + q].for_each_set(
                [&](int s) { out.push_back({p, q, s}); });
    return out;
}

ReducedHypergraph ReducedHypergraph::complete(std::vector<std::string> indices, int size) {
    ReducedHypergraph A(std::move(indices));
    int n = A.index_count();
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i) A.set_class_size(i, j, size);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k)
                for (int p = 0; p < size; ++p)
                    for (int q = 0; q < size; ++q)
                        for (int s = 0; s < size; ++s) A.add_edge(i, j, k, p, q, s);
    return A;
}

ReducedHypergraph ReducedHypergraph::random(std::vector<std::string> indices, int size,
                                            const Rational& rho, std::uint64_t seed) {
    if (rho < Rational(0, 1) || Rational(1, 1) < rho)
        throw ArgumentError("edge probability must lie in [0, 1]");
    ReducedHypergraph A(std::move(indices));
    int n = A.index_count();
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i) A.set_class_size(i, j, size);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                SplitMix64 rng(mix_seed(seed, static_cast<std::uint64_t>(i),
                                        static_cast<std::uint64_t>(j),
                                        static_cast<std::uint64_t>(k)));
                for (int p = 0; p < size; ++p)
                    for (int q = 0; q < size; ++q)
                        for (int s = 0; s < size; ++s)
                            if (static_cast<long long>(rng.below(
                                    static_cast<std::uint64_t>(rho.den))) < rho.num)
                                A.add_edge(i, j, k, p, q, s);
            }
    return A;
}

std::vector<std::string> numbered_indices(int n, const std::string& prefix) {
    if (n < 0) throw ArgumentError("index count must be nonnegative");
    int width = static_cast<int>(std::to_string(n).size());
    std::vector<std::string> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        std::string s = std::to_string(i);
        out.push_back(prefix + std::string(width - s.size(), '0') + s);
    }
    return out;
}

BoxDenseReport check_box_dense(const ReducedHypergraph& A, const Rational& d,
                               const Rational& delta) {
    if (d < Rational(0, 1) || Rational(1, 1) < d || delta < Rational(0, 1) ||
        Rational(1, 1) < delta)
        throw ArgumentError("density parameters must lie in [0, 1]");
    BoxDenseReport report;
    report.d = d;
    report.delta = delta;
    int n = A.index_count();
    if (n < 3) {
        report.dense = true;
        report.vacuous = true;
        return report;
    }
    A.require_complete_classes();
    report.dense = true;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                // Six ordered role assignments; the two sharing an apex have
                // transposed pair sets and therefore equal bad counts.
                const std::array<std::array<int, 3>, 6> orientations = {
                    std::array<int, 3>{i, j, k}, {i, k, j}, {j, i, k},
                    {j, k, i},                   {k, i, j}, {k, j, i}};
                std::array<long long, 3> bad_by_apex = {-1, -1, -1};
                for (const auto& o : orientations) {
                    int apex = o[0], left = o[1], right = o[2];
                    int slot = apex == i ? 0 : apex == j ? 1 : 2;
                    long long target = A.class_size(left, right);
                    if (bad_by_apex[static_cast<std::size_t>(slot)] < 0) {
                        long long bad = 0;
                        int s1 = A.class_size(apex, left), s2 = A.class_size(apex, right);
                        for (int u = 0; u < s1; ++u)
                            for (int v = 0; v < s2; ++v) {
                                long long deg = A.pair_degree(apex, left, right, u, v);
                                if (Rational(deg, 1) < d * Rational(target, 1)) ++bad;
                            }
                        bad_by_apex[static_cast<std::size_t>(slot)] = bad;
                    }
                    long long bad = bad_by_apex[static_cast<std::size_t>(slot)];
                    long long pair_total = static_cast<long long>(A.class_size(apex, left)) *
                                           A.class_size(apex, right);
                    ++report.orientations_checked;
                    if (delta * Rational(pair_total, 1) < Rational(bad, 1)) {
                        report.dense = false;
                        report.violations.push_back({{apex, left, right}, bad, pair_total});
                    }
                }
            }
    return report;
}

int Selection::at(int a, int b) const {
    if (a < 0 || b < 0 || a >= static_cast<int>(xs.size()) || b >= static_cast<int>(ys.size()))
        throw ArgumentError("selection list position out of range");
    return vertex[static_cast<std::size_t>(a) * ys.size() + static_cast<std::size_t>(b)];
}

int Selection::vertex_for(int x_pos, int y_pos) const {
    auto xi = std::find(xs.begin(), xs.end(), x_pos);
    auto yi = std::find(ys.begin(), ys.end(), y_pos);
    if (xi == xs.end() || yi == ys.end())
        throw ArgumentError("selection does not cover the requested index pair");
    return at(static_cast<int>(xi - xs.begin()), static_cast<int>(yi - ys.begin()));
}

Selection Selection::restricted(const std::vector<int>& sub_xs,
                                const std::vector<int>& sub_ys) const {
    Selection out;
    out.xs = sub_xs;
    out.ys = sub_ys;
    out.vertex.resize(sub_xs.size() * sub_ys.size());
    for (std::size_t a = 0; a < sub_xs.size(); ++a)
        for (std::size_t b = 0; b < sub_ys.size(); ++b)
            out.vertex[a * sub_ys.size() + b] = vertex_for(sub_xs[a], sub_ys[b]);
    return out;
}

namespace {

void validate_selection(const ReducedHypergraph& A, const Selection& sel) {
    if (sel.vertex.size() != sel.xs.size() * sel.ys.size())
        throw ArgumentError("selection is not total on its index rectangle");
    for (int x : sel.xs)
        for (int y : sel.ys)
            if (x == y) throw ArgumentError("selection index sets must be disjoint");
    std::vector<int> xs = sel.xs, ys = sel.ys;
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    if (std::adjacent_find(xs.begin(), xs.end()) != xs.end() ||
        std::adjacent_find(ys.begin(), ys.end()) != ys.end())
        throw ArgumentError("selection index lists contain duplicates");
    for (std::size_t a = 0; a < sel.xs.size(); ++a)
        for (std::size_t b = 0; b < sel.ys.size(); ++b) {
            int v = sel.vertex[a * sel.ys.size() + b];
            int size = A.class_size(sel.xs[a], sel.ys[b]);
            if (v < 0 || v >= size)
                throw ArgumentError("selection vertex out of class range on {" +
                                    A.index_name(sel.xs[a]) + "," + A.index_name(sel.ys[b]) + "}");
        }
}

}  // namespace

AdmissibleReport check_admissible(const ReducedHypergraph& A, const Selection& sel,
                                  const Rational& d) {
    if (d < Rational(0, 1) || Rational(1, 1) < d)
        throw ArgumentError("admissibility level must lie in [0, 1]");
    validate_selection(A, sel);
    AdmissibleReport report;
    report.d = d;
    report.pass = true;
    for (std::size_t a = 0; a < sel.xs.size(); ++a)
        for (std::size_t ap = a + 1; ap < sel.xs.size(); ++ap)
            for (std::size_t b = 0; b < sel.ys.size(); ++b) {
                int x = sel.xs[a], xp = sel.xs[ap], y = sel.ys[b];
                long long deg = A.pair_degree(y, x, xp, sel.at(static_cast<int>(a), static_cast<int>(b)),
                                              sel.at(static_cast<int>(ap), static_cast<int>(b)));
                long long size = A.class_size(x, xp);
                if (Rational(deg, 1) < d * Rational(size, 1)) {
                    report.pass = false;
                    report.violations.push_back({x, xp, y, deg, size});
                }
            }
    return report;
}

bool reduced_clique_holds(const ReducedHypergraph& A, const ReducedCliqueWitness& w) {
    int t = static_cast<int>(w.members.size());
    if (t < 3) return false;
    if (w.pair_vertex.size() != static_cast<std::size_t>(t) * (t - 1) / 2) return false;
    for (int a = 0; a < t; ++a)
        for (int b = a + 1; b < t; ++b)
            if (w.members[a] >= w.members[b]) return false;
    auto pr = [](int a, int b) { return b * (b - 1) / 2 + a; };
    for (int a = 0; a < t; ++a)
        for (int b = a + 1; b < t; ++b)
            for (int c = b + 1; c < t; ++c) {
                if (!A.has_edge_sorted(w.members[a], w.members[b], w.members[c],
                                       w.pair_vertex[pr(a, b)], w.pair_vertex[pr(a, c)],
                                       w.pair_vertex[pr(b, c)]))
                    return false;
            }
    return true;
}

namespace {

// Depth-first search interleaving index choices with per-pair vertex choices.
// When index number c joins, the pairs (0,c), (1,c), ..., (c-1,c) receive
// vertices in order; setting pair (b,c) validates every triple (a,b,c) with
// a < b, whose other two pair vertices are already fixed.
struct ReducedCliqueSearcher {
    const ReducedHypergraph& A;
    int t;
    long long node_limit;
    long long nodes = 0;
    bool out_of_budget = false;
    std::vector<int> members;      // chosen index positions
    std::vector<int> pair_vertex;  // aligned with members pairs

    ReducedCliqueSearcher(const ReducedHypergraph& a, int t_, long long limit)
        : A(a), t(t_), node_limit(limit) {}

    static int pr(int a, int b) { return b * (b - 1) / 2 + a; }

    bool budget_gone() {
        ++nodes;
        if (node_limit >= 0 && nodes > node_limit) {
            out_of_budget = true;
            return true;
        }
        return false;
    }

    bool pick_pair_vertices(int b) {  // vertices for pair (b, newest member)
        int c = static_cast<int>(members.size()) - 1;
        if (b == c) return extend();
        int size = A.class_size(members[b], members[c]);
        for (int v = 0; v < size; ++v) {
            if (budget_gone()) return false;
            pair_vertex[pr(b, c)] = v;
            bool ok = true;
            for (int a = 0; a < b && ok; ++a) {
                if (!A.has_edge_sorted(members[a], members[b], members[c],
                                       pair_vertex[pr(a, b)], pair_vertex[pr(a, c)],
                                       pair_vertex[pr(b, c)]))
                    ok = false;
            }
            if (ok && pick_pair_vertices(b + 1)) return true;
            if (out_of_budget) return false;
        }
        return false;
    }

    bool extend() {
        if (static_cast<int>(members.size()) == t) return true;
        int start = members.empty() ? 0 : members.back() + 1;
        int slot = static_cast<int>(members.size());
        int remaining = t - slot;
        for (int next = start; next + remaining <= A.index_count(); ++next) {
            if (budget_gone()) return false;
            members.push_back(next);
            pair_vertex.resize(static_cast<std::size_t>(pr(0, slot + 1)));
            if (pick_pair_vertices(0)) return true;
            members.pop_back();
            if (out_of_budget) return false;
        }
        return false;
    }
};

}  // namespace

ReducedCliqueResult find_reduced_clique(const ReducedHypergraph& A, int t,
                                        const ReducedCliqueOptions& opts) {
    if (t < 3) throw ArgumentError("clique order must be at least 3");
    ReducedCliqueResult result;
    if (t > A.index_count()) {
        result.status = SearchStatus::none;
        return result;
    }
    A.require_complete_classes();
    ReducedCliqueSearcher searcher(A, t, opts.node_limit);
    bool found = searcher.extend();
    result.nodes = searcher.nodes;
    if (found) {
        result.witness.members = searcher.members;
        result.witness.pair_vertex = searcher.pair_vertex;
        if (!reduced_clique_holds(A, result.witness))
            throw PreconditionError("clique witness failed re-validation");
        result.status = SearchStatus::found;
    } else {
        result.status = searcher.out_of_budget ? SearchStatus::unknown : SearchStatus::none;
    }
    return result;
}

}  // namespace boxlab

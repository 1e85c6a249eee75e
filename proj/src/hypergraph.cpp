#include "boxlab/hypergraph.hpp"

#include <algorithm>
#include <string>

#include "boxlab/error.hpp"
#include "boxlab/rng.hpp"

namespace boxlab {

namespace {

void check_vertex(int v, int n, const char* what) {
    if (v < 0 || v >= n)
        throw ArgumentError(std::string(what) + ": vertex " + std::to_string(v) +
                            " out of range [0," + std::to_string(n) + ")");
}

}  // namespace

Hypergraph3::Hypergraph3(int n) : n_(n) {
    if (n < 0) throw ArgumentError("negative vertex count");
    rank2_.resize(n + 1, 0);
    rank3_.resize(n + 1, 0);
    for (long long i = 0; i <= n; ++i) {
        rank2_[i] = i * (i - 1) / 2;
        rank3_[i] = i * (i - 1) * (i - 2) / 6;
    }
    long long triples = n >= 3 ? rank3_[n] : 0;
    if (triples > (1ll << 34))
        throw ArgumentError("vertex count too large for the triple index");
    member_ = DynBitset(static_cast<int>(triples));
}

Hypergraph3 Hypergraph3::from_edges(int n, std::vector<std::array<int, 3>> edges) {
    Hypergraph3 h(n);
    for (auto& e : edges) {
        std::sort(e.begin(), e.end());
        if (e[0] == e[1] || e[1] == e[2])
            throw ArgumentError("edge with repeated vertex");
        check_vertex(e[0], n, "edge");
        check_vertex(e[2], n, "edge");
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    h.edges_ = std::move(edges);
    for (const auto& e : h.edges_) h.member_.set(static_cast<int>(h.rank(e[0], e[1], e[2])));
    return h;
}

void Hypergraph3::add_edge(int x, int y, int z) {
    std::array<int, 3> e{x, y, z};
    std::sort(e.begin(), e.end());
    if (e[0] == e[1] || e[1] == e[2]) throw ArgumentError("edge with repeated vertex");
    check_vertex(e[0], n_, "edge");
    check_vertex(e[2], n_, "edge");
    long long r = rank(e[0], e[1], e[2]);
    if (member_.test(static_cast<int>(r))) return;
    member_.set(static_cast<int>(r));
    edges_.insert(std::lower_bound(edges_.begin(), edges_.end(), e), e);
}

bool Hypergraph3::has_edge(int x, int y, int z) const {
    if (x == y || y == z || x == z) return false;
    if (x < 0 || y < 0 || z < 0 || x >= n_ || y >= n_ || z >= n_) return false;
    int a = x, b = y, c = z;
    if (a > b) std::swap(a, b);
    if (b > c) std::swap(b, c);
    if (a > b) std::swap(a, b);
    return member_.test(static_cast<int>(rank(a, b, c)));
}

std::vector<long long> Hypergraph3::link_degrees() const {
    std::vector<long long> deg(n_, 0);
    for (const auto& e : edges_) {
        ++deg[e[0]];
        ++deg[e[1]];
        ++deg[e[2]];
    }
    return deg;
}

DynBitset Hypergraph3::link_row(int x, int y) const {
    check_vertex(x, n_, "link_row");
    check_vertex(y, n_, "link_row");
    if (x == y) throw ArgumentError("link_row of a loop");
    DynBitset row(n_);
    for (int z = 0; z < n_; ++z)
        if (z != x && z != y && has_edge(x, y, z)) row.set(z);
    return row;
}

PairSet::PairSet(int n) : n_(n) {
    if (n < 0) throw ArgumentError("negative vertex count");
    rows_.assign(n, DynBitset(n));
}

void PairSet::add(int x, int y) {
    check_vertex(x, n_, "pair");
    check_vertex(y, n_, "pair");
    if (x == y) throw ArgumentError("pair set rejects loops (" + std::to_string(x) + ")");
    if (!rows_[x].test(y)) {
        rows_[x].set(y);
        ++count_;
    }
}

bool PairSet::contains(int x, int y) const {
    if (x < 0 || y < 0 || x >= n_ || y >= n_) return false;
    return rows_[x].test(y);
}

PairSet PairSet::product(int n, const std::vector<int>& X, const std::vector<int>& Y) {
    PairSet p(n);
    DynBitset xb = vertex_subset_bits(n, X);
    DynBitset yb = vertex_subset_bits(n, Y);
    for (int x : X) {
        p.rows_[x] = yb;
        if (yb.test(x)) p.rows_[x].reset(x);
        p.count_ += p.rows_[x].count();
    }
    (void)xb;
    return p;
}

PairSet PairSet::random(int n, const Rational& rho, uint64_t seed) {
    if (rho < Rational(0) || rho > Rational(1)) throw ArgumentError("density outside [0,1]");
    PairSet p(n);
    // Per-pair streams keep the outcome independent of iteration order.
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            if (x == y) continue;
            SplitMix64 g(mix_seed(seed, static_cast<uint64_t>(x), static_cast<uint64_t>(y)));
            // keep iff draw < rho, compared exactly: draw in [0, den) vs num
            if (static_cast<long long>(g.below(static_cast<uint64_t>(rho.den))) < rho.num)
                p.add(x, y);
        }
    return p;
}

DynBitset vertex_subset_bits(int n, const std::vector<int>& xs) {
    DynBitset b(n);
    for (int v : xs) {
        check_vertex(v, n, "vertex subset");
        if (b.test(v)) throw ArgumentError("duplicate vertex " + std::to_string(v) + " in subset");
        b.set(v);
    }
    return b;
}

}  // namespace boxlab

// Density counters against the serial reference kernels, clique search
// against exhaustive enumeration, and the tripartite triangle machinery.

#include <cstdint>
#include <optional>
#include <vector>

#include "boxlab/clique.hpp"
#include "boxlab/counting.hpp"
#include "boxlab/error.hpp"
#include "boxlab/hypergraph.hpp"
#include "boxlab/rational.hpp"
#include "boxlab/reference.hpp"
#include "boxlab/rng.hpp"
#include "doctest.h"

using namespace boxlab;

namespace {

Hypergraph3 random_hypergraph(int n, double density, uint64_t seed) {
    SplitMix64 g(seed);
    std::vector<std::array<int, 3>> edges;
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y)
            for (int z = y + 1; z < n; ++z)
                if (g.next_unit() < density) edges.push_back({x, y, z});
    return Hypergraph3::from_edges(n, std::move(edges));
}

PairSet random_pairs(int n, double density, uint64_t seed) {
    SplitMix64 g(seed);
    PairSet P(n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (x != y && g.next_unit() < density) P.add(x, y);
    return P;
}

std::vector<int> random_subset(int n, double density, uint64_t seed) {
    SplitMix64 g(seed);
    std::vector<int> out;
    for (int v = 0; v < n; ++v)
        if (g.next_unit() < density) out.push_back(v);
    return out;
}

}  // namespace

TEST_CASE("hypergraph structure and membership") {
    Hypergraph3 h = Hypergraph3::from_edges(5, {{0, 1, 2}, {2, 1, 0}, {4, 3, 2}});
    CHECK(h.edge_count() == 2);  // duplicate collapsed
    CHECK(h.has_edge(0, 1, 2));
    CHECK(h.has_edge(2, 0, 1));
    CHECK(h.has_edge(4, 2, 3));
    CHECK_FALSE(h.has_edge(0, 1, 3));
    CHECK_FALSE(h.has_edge(0, 1, 1));  // degenerate

    auto deg = h.link_degrees();
    CHECK(deg[2] == 2);
    CHECK(deg[0] == 1);

    DynBitset row = h.link_row(1, 2);
    CHECK(row.test(0));
    CHECK_FALSE(row.test(3));

    CHECK_THROWS_AS(Hypergraph3::from_edges(3, {{0, 1, 3}}), ArgumentError);
    CHECK_THROWS_AS(Hypergraph3::from_edges(3, {{0, 1, 1}}), ArgumentError);
}

TEST_CASE("pair sets reject loops and keep exact counts") {
    PairSet P(4);
    P.add(0, 1);
    P.add(0, 1);
    P.add(1, 0);
    CHECK(P.size() == 2);  // ordered pairs, duplicate ignored
    CHECK(P.contains(0, 1));
    CHECK(P.contains(1, 0));
    CHECK_FALSE(P.contains(0, 2));
    CHECK_THROWS_AS(P.add(2, 2), ArgumentError);

    PairSet prod = PairSet::product(5, {0, 1}, {1, 3});
    // (0,1) (0,3) (1,3); (1,1) is a loop and excluded
    CHECK(prod.size() == 3);
    CHECK_FALSE(prod.contains(1, 1));
}

TEST_CASE("optimized counters match the reference kernels exactly") {
    for (uint64_t inst = 0; inst < 50; ++inst) {
        int n = 6 + static_cast<int>(inst % 25);  // up to 30
        double hd = 0.15 + 0.12 * static_cast<double>(inst % 6);
        Hypergraph3 h = random_hypergraph(n, hd, mix_seed(900, inst, 0));
        PairSet P = random_pairs(n, 0.4, mix_seed(900, inst, 1));
        PairSet Q = random_pairs(n, 0.5, mix_seed(900, inst, 2));
        std::vector<int> X = random_subset(n, 0.5, mix_seed(900, inst, 3));
        std::vector<int> Y = random_subset(n, 0.6, mix_seed(900, inst, 4));
        std::vector<int> Z = random_subset(n, 0.7, mix_seed(900, inst, 5));

        DensityReport a = count_boxtimes(h, P, Q);
        DensityReport b = reference::count_boxtimes(h, P, Q);
        CHECK(a.e == b.e);
        CHECK(a.total == b.total);
        CHECK(a.ratio == b.ratio);

        a = count_ev(h, X, P);
        b = reference::count_ev(h, X, P);
        CHECK(a.e == b.e);
        CHECK(a.total == b.total);

        a = count_vvv(h, X, Y, Z);
        b = reference::count_vvv(h, X, Y, Z);
        CHECK(a.e == b.e);
        CHECK(a.total == b.total);
    }
}

TEST_CASE("counter edge cases") {
    Hypergraph3 h = Hypergraph3::from_edges(4, {{0, 1, 2}});
    PairSet empty(4);
    DensityReport r = count_boxtimes(h, empty, empty);
    CHECK(r.total == 0);
    CHECK_FALSE(r.ratio.has_value());

    // pairs sharing the first coordinate, second coordinates distinct
    PairSet P(4);
    P.add(0, 1);
    P.add(0, 2);
    P.add(0, 3);
    r = count_boxtimes(h, P, P);
    // ordered (y, z) choices from {1,2,3}: 6 wedges, one edge-supported pair
    // {0,1,2} counted in both orders
    CHECK(r.total == 6);
    CHECK(r.e == 2);
    CHECK(*r.ratio == Rational(1, 3));
}

TEST_CASE("clique search agrees with exhaustive enumeration") {
    for (uint64_t inst = 0; inst < 24; ++inst) {
        int n = 8 + static_cast<int>(inst % 13);  // up to 20
        double hd = 0.35 + 0.1 * static_cast<double>(inst % 5);
        Hypergraph3 h = random_hypergraph(n, hd, mix_seed(901, inst, 0));
        for (int k = 3; k <= 5; ++k) {
            CliqueResult fast = find_clique(h, k);
            auto brute = reference::find_clique(h, k);
            CHECK(fast.status == (brute ? SearchStatus::found : SearchStatus::none));
            if (fast.status == SearchStatus::found) {
                CHECK(static_cast<int>(fast.witness.size()) == k);
                CHECK(is_clique(h, fast.witness));
            }
            if (brute) CHECK(is_clique(h, *brute));
        }
    }
}

TEST_CASE("clique search respects the node budget") {
    Hypergraph3 h = random_hypergraph(18, 0.9, 77);
    CliqueOptions opts;
    opts.node_limit = 1;
    CliqueResult r = find_clique(h, 6, opts);
    CHECK(r.status == SearchStatus::unknown);
    CHECK(r.nodes <= 1);
}

TEST_CASE("deterministic clique mode returns the same witness") {
    Hypergraph3 h = random_hypergraph(16, 0.55, 3);
    CliqueOptions det;
    det.deterministic = true;
    CliqueResult a = find_clique(h, 4, det);
    CliqueResult b = find_clique(h, 4);
    CHECK(a.status == b.status);
    if (a.status == SearchStatus::found) CHECK(a.witness == b.witness);
}

TEST_CASE("tripartite triangle counting matches the reference") {
    std::vector<int> X, Y, Z;
    for (int v = 0; v < 30; ++v) {
        if (v % 3 == 0) X.push_back(v);
        if (v % 3 == 1) Y.push_back(v);
        if (v % 3 == 2) Z.push_back(v);
    }
    for (uint64_t seed = 1; seed <= 5; ++seed) {
        TripartiteGraph g = TripartiteGraph::random(X, Y, Z, Rational(1, 2), seed);
        CHECK(count_triangles_tripartite(g) == reference::count_triangles_tripartite(g));
    }
    CHECK_THROWS_AS(TripartiteGraph({0, 1}, {1, 2}, {4, 5}), ArgumentError);  // overlap
}

TEST_CASE("triangle counts sit inside the regularity-style upper bound") {
    std::vector<int> X, Y, Z;
    for (int v = 0; v < 120; ++v) {
        if (v < 40) X.push_back(v);
        else if (v < 80) Y.push_back(v);
        else Z.push_back(v);
    }
    RegularityParams rp{Rational(1, 2), Rational(1, 20)};
    double bound = triangle_count_upper_bound(rp, 40, 40, 40);
    CHECK(bound == doctest::Approx(0.5 * 0.5 * 0.5 * 64000 + 3 * 0.05 * 64000));
    for (uint64_t seed = 10; seed < 13; ++seed) {
        TripartiteGraph g = TripartiteGraph::random(X, Y, Z, Rational(1, 2), seed);
        long long t = count_triangles_tripartite(g);
        CHECK(static_cast<double>(t) <= bound);
        CHECK(t > 4000);  // sanity: nowhere near degenerate
    }
}

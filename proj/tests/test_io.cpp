// Text formats: round-trips through save/load for every format, precise
// malformed-input diagnostics, and a fuzz pass proving loaders only ever fail
// with FormatError.

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "boxlab/colouring.hpp"
#include "boxlab/error.hpp"
#include "boxlab/fortress.hpp"
#include "boxlab/hypergraph.hpp"
#include "boxlab/io.hpp"
#include "boxlab/palette.hpp"
#include "boxlab/reduced.hpp"
#include "boxlab/rng.hpp"
#include "boxlab/systems.hpp"
#include "doctest.h"

using namespace boxlab;

namespace {

Hypergraph3 sample_hypergraph() {
    std::vector<std::array<int, 3>> edges;
    SplitMix64 rng(515151);
    for (int i = 0; i < 60; ++i) {
        int x = static_cast<int>(rng.below(18));
        int y = static_cast<int>(rng.below(18));
        int z = static_cast<int>(rng.below(18));
        if (x != y && x != z && y != z) edges.push_back({x, y, z});
    }
    return Hypergraph3::from_edges(18, edges);
}

ReducedHypergraph sample_reduced() {
    ReducedHypergraph A =
        ReducedHypergraph::random(numbered_indices(5), 3, Rational(1, 3), 606060);
    return A;
}

Fortress sample_fortress() {
    ReducedHypergraph A = ReducedHypergraph::complete(numbered_indices(4), 2);
    ReducedCliqueResult r = find_reduced_clique(A, 4);
    REQUIRE(r.status == SearchStatus::found);
    return clique_to_fortress(A, r.witness);
}

}  // namespace

TEST_CASE("hypergraph round-trip") {
    Hypergraph3 H = sample_hypergraph();
    REQUIRE(H.edge_count() > 10);
    Hypergraph3 back = load_hypergraph(save_hypergraph(H));
    CHECK(back.vertex_count() == H.vertex_count());
    CHECK(back.edges() == H.edges());

    Hypergraph3 empty(4);
    CHECK(load_hypergraph(save_hypergraph(empty)).edge_count() == 0);
}

TEST_CASE("pair set round-trip") {
    PairSet P = PairSet::random(15, Rational(1, 3), 717171);
    REQUIRE(P.size() > 0);
    PairSet back = load_pair_set(save_pair_set(P));
    CHECK(back.vertex_count() == 15);
    CHECK(back.size() == P.size());
    for (int x = 0; x < 15; ++x)
        for (int y = 0; y < 15; ++y)
            if (x != y) CHECK(back.contains(x, y) == P.contains(x, y));
}

TEST_CASE("vertex subset round-trip") {
    std::vector<int> xs = {0, 5, 7, 12};
    CHECK(load_vertex_subset(save_vertex_subset(xs)) == xs);
    CHECK(load_vertex_subset(save_vertex_subset({})).empty());
}

TEST_CASE("palette round-trip") {
    for (const char* name : {"cyclic3", "two_colour_nonmono", "exactly_two_of_three", "nonmono(5)"}) {
        Palette p = standard_palette(name);
        CHECK(load_palette(save_palette(p)) == p);
    }
    Palette empty(4, {});
    CHECK(load_palette(save_palette(empty)) == empty);
}

TEST_CASE("colouring round-trip") {
    EdgeColouring phi = random_colouring(12, 3, 828282);
    EdgeColouring back = load_colouring(save_colouring(phi));
    REQUIRE(back.vertex_count() == 12);
    REQUIRE(back.colour_count() == 3);
    for (int x = 0; x < 12; ++x)
        for (int y = x + 1; y < 12; ++y) CHECK(back.colour(x, y) == phi.colour(x, y));
}

TEST_CASE("tree round-trip") {
    CHECK(load_tree(save_tree(KMTree::uniform(3, 2))) == KMTree::uniform(3, 2));
    KMTree custom = KMTree::from_leaves({
        {"left", "aa"}, {"left", "bb"}, {"right", "aa"}, {"right", "bb"}});
    CHECK(load_tree(save_tree(custom)) == custom);
}

TEST_CASE("reduced round-trip") {
    ReducedHypergraph A = sample_reduced();
    ReducedHypergraph back = load_reduced(save_reduced(A));
    CHECK(back.indices() == A.indices());
    CHECK(back.edge_count() == A.edge_count());
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) {
            CHECK(back.class_size(i, j) == A.class_size(i, j));
            for (int k = j + 1; k < 5; ++k)
                CHECK(back.triple_edges(i, j, k) == A.triple_edges(i, j, k));
        }
}

TEST_CASE("fortress round-trip") {
    Fortress F = sample_fortress();
    Fortress back = load_fortress(save_fortress(F));
    CHECK(back.tree == F.tree);
    CHECK(back.leaf_names == F.leaf_names);
    CHECK(back.vertices == F.vertices);
}

TEST_CASE("selection round-trip") {
    ReducedHypergraph A = ReducedHypergraph::complete(numbered_indices(5), 3);
    Selection sel;
    sel.xs = {0, 2};
    sel.ys = {1, 4};
    sel.vertex = {2, 0, 1, 2};
    Selection back = load_selection(A, save_selection(A, sel));
    CHECK(back.xs == sel.xs);
    CHECK(back.ys == sel.ys);
    CHECK(back.vertex == sel.vertex);
}

TEST_CASE("malformed inputs carry line numbers") {
    auto message_of = [](auto&& fn) -> std::string {
        try {
            fn();
        } catch (const FormatError& e) {
            return e.what();
        }
        return "";  // no throw: the CHECKs below will fail on the empty string
    };

    std::string m = message_of([] { return load_hypergraph("vertices 5\n0 1 2\n2 1 9\n"); });
    CHECK(m.find("(line 3)") != std::string::npos);

    m = message_of([] { return load_hypergraph("verts 5\n"); });
    CHECK(m.find("(line 1)") != std::string::npos);

    m = message_of([] { return load_hypergraph("vertices 5000\n"); });
    CHECK(m.find("out of range") != std::string::npos);

    m = message_of([] { return load_palette("colors 3\n1 2\n"); });
    CHECK(m.find("(line 2)") != std::string::npos);

    m = message_of([] { return load_palette("colors 3\n2 1 3\n"); });
    CHECK(m.find("(line 2)") != std::string::npos);

    m = message_of([] { return load_colouring("vertices 3 colors 2\n0 1 1\n0 2 1\n"); });
    CHECK(m.find("incomplete") != std::string::npos);

    m = message_of([] {
        return load_colouring("vertices 3 colors 2\n0 1 1\n0 2 1\n1 2 1\n0 1 2\n");
    });
    CHECK(m.find("(line 5)") != std::string::npos);

    m = message_of([] { return load_tree("height 2 arity 2\n1 1\n1 2\n2 1\n"); });
    CHECK(m.find("leaf lines") != std::string::npos);

    m = message_of([] { return load_tree("height 40 arity 3\n"); });
    CHECK(m.find("size guard") != std::string::npos);

    m = message_of([] { return load_reduced("indices a b c\nedge a b c 0 0 0\n"); });
    CHECK(m.find("(line 2)") != std::string::npos);

    m = message_of([] { return load_reduced("indices a b c\nclass a q 2\n"); });
    CHECK(m.find("(line 2)") != std::string::npos);

    ReducedHypergraph A = ReducedHypergraph::complete(numbered_indices(4), 2);
    m = message_of([&] { return load_selection(A, "xs p1\nys p2\np1 p3 0\n"); });
    CHECK(m.find("(line 3)") != std::string::npos);

    m = message_of([&] { return load_selection(A, "xs p1\nys p2 p3\np1 p2 0\n"); });
    CHECK(m.find("unassigned") != std::string::npos);
}

TEST_CASE("comments and blank lines are accepted everywhere") {
    Hypergraph3 H = load_hypergraph("# a comment\n\nvertices 4\n# another\n0 1 2\n\n");
    CHECK(H.edge_count() == 1);
    Palette p = load_palette("colors 2\n# nonmono\n1 1 2\n1 2 2\n");
    CHECK(p == standard_palette("nonmono(2)"));
}

TEST_CASE("loaders never raise anything but FormatError") {
    ReducedHypergraph A = ReducedHypergraph::complete(numbered_indices(4), 2);
    using Loader = std::function<void(const std::string&)>;
    std::vector<Loader> loaders = {
        [](const std::string& s) { load_hypergraph(s); },
        [](const std::string& s) { load_pair_set(s); },
        [](const std::string& s) { load_vertex_subset(s); },
        [](const std::string& s) { load_palette(s); },
        [](const std::string& s) { load_colouring(s); },
        [](const std::string& s) { load_tree(s); },
        [](const std::string& s) { load_reduced(s); },
        [](const std::string& s) { load_fortress(s); },
        [&](const std::string& s) { load_selection(A, s); },
    };

    auto survives = [&](const std::string& text) {
        for (const Loader& load : loaders) {
            try {
                load(text);
            } catch (const FormatError&) {
                // expected failure mode
            }
            // anything else propagates and fails the test case
        }
    };

    // random byte soup, biased towards format-ish tokens
    const std::string atoms[] = {"vertices", "colors",  "height",  "arity", "indices",
                                 "class",    "edge",    "xs",      "ys",    "index",
                                 "vertex",   "#",       "-",       "\n",    " ",
                                 "0",        "1",       "2",       "12",    "-3",
                                 "99999999", "a",       "p1",      "1,2",   "\t",
                                 "2147483648",          "18446744073709551616"};
    for (uint64_t seed = 0; seed < 150; ++seed) {
        SplitMix64 rng(mix_seed(9300, seed));
        std::string text;
        const int pieces = static_cast<int>(rng.below(40));
        for (int i = 0; i < pieces; ++i) {
            text += atoms[rng.below(sizeof(atoms) / sizeof(atoms[0]))];
            if (rng.below(3) == 0) text += ' ';
        }
        survives(text);
    }

    // raw bytes, including NUL and high bits
    for (uint64_t seed = 0; seed < 50; ++seed) {
        SplitMix64 rng(mix_seed(9301, seed));
        std::string text;
        const int len = static_cast<int>(rng.below(120));
        for (int i = 0; i < len; ++i) text += static_cast<char>(rng.below(256));
        survives(text);
    }

    // truncations of valid files
    const std::string valid[] = {
        save_hypergraph(sample_hypergraph()),
        save_palette(standard_palette("cyclic3")),
        save_colouring(random_colouring(6, 3, 1)),
        save_tree(KMTree::uniform(2, 3)),
        save_reduced(sample_reduced()),
        save_fortress(sample_fortress()),
    };
    for (const std::string& file : valid)
        for (std::size_t cut = 0; cut < file.size(); cut += 3) survives(file.substr(0, cut));
}

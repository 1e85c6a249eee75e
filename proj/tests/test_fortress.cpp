// Fortress machinery: the closure check, the clique correspondence in both
// directions, the randomized base selection, and the recursive builder's
// success and stage-failure paths.

#include <cstdint>
#include <string>
#include <vector>

#include "boxlab/error.hpp"
#include "boxlab/fortress.hpp"
#include "boxlab/rational.hpp"
#include "boxlab/reduced.hpp"
#include "boxlab/rng.hpp"
#include "boxlab/systems.hpp"
#include "doctest.h"

using namespace boxlab;

namespace {

// Noise plus a planted order-4 clique on members {1,3,5,8}.  skip_last omits
// the planted edge on the member triple (3,5,8), leaving everything else
// untouched.
const std::vector<int> kMembers = {1, 3, 5, 8};
const std::vector<int> kPairVertex = {2, 0, 1, 2, 0, 1};  // pr(a,b) = b(b-1)/2+a

ReducedHypergraph planted_instance(bool skip_last) {
    ReducedHypergraph A =
        ReducedHypergraph::random(numbered_indices(10), 3, Rational(1, 5), 424242);
    auto pr = [](int a, int b) { return b * (b - 1) / 2 + a; };
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b)
            for (int c = b + 1; c < 4; ++c) {
                if (skip_last && a == 1 && b == 2 && c == 3) continue;
                A.add_edge(kMembers[static_cast<std::size_t>(a)],
                           kMembers[static_cast<std::size_t>(b)],
                           kMembers[static_cast<std::size_t>(c)],
                           kPairVertex[static_cast<std::size_t>(pr(a, b))],
                           kPairVertex[static_cast<std::size_t>(pr(a, c))],
                           kPairVertex[static_cast<std::size_t>(pr(b, c))]);
            }
    return A;
}

ReducedCliqueWitness planted_witness() {
    ReducedCliqueWitness w;
    w.members = kMembers;
    w.pair_vertex = kPairVertex;
    return w;
}

// Ten indices: a 16-vertex class on the base pair {X1, X2} and eight attached
// indices y1..y8 whose triples with the base carry the edges (P, 0, 0) for
// P < 8.  A drawn base vertex below 8 keeps every attached member; any other
// draw keeps none, so one draw succeeds with probability exactly 1/2.
ReducedHypergraph half_window_instance() {
    std::vector<std::string> names = {"X1", "X2"};
    for (int i = 1; i <= 8; ++i) names.push_back("y" + std::to_string(i));
    ReducedHypergraph A(names);
    A.set_class_size(0, 1, 16);
    for (int y = 2; y < 10; ++y) {
        A.set_class_size(0, y, 1);
        A.set_class_size(1, y, 1);
    }
    for (int y = 2; y < 10; ++y)
        for (int p = 0; p < 8; ++p) A.add_edge(0, 1, y, p, 0, 0);
    return A;
}

BaseSelectionInput half_window_input(uint64_t seed, int retries) {
    BaseSelectionInput in;
    in.x0 = {0, 1};
    in.xj = {{2, 3, 4, 5, 6, 7, 8, 9}};
    Selection c;
    c.xs = in.x0;
    c.ys = in.xj[0];
    c.vertex.assign(16, 0);
    in.cj = {c};
    in.eps = Rational(1, 2);
    in.retries = retries;
    in.seed = seed;
    return in;
}

}  // namespace

TEST_CASE("clique to fortress and back is the identity") {
    // binary hosts of heights 2 and 3 over complete instances
    for (int r : {2, 3}) {
        int t = 1 << r;
        ReducedHypergraph A = ReducedHypergraph::complete(numbered_indices(t + 1), 2);
        ReducedCliqueResult res = find_reduced_clique(A, t);
        REQUIRE(res.status == SearchStatus::found);

        Fortress F = clique_to_fortress(A, res.witness);
        CHECK(F.tree.height() == r);
        CHECK(F.tree.arity() == 2);
        FortressCheck check = verify_fortress(A, F);
        CHECK(check.pass);
        CHECK_FALSE(check.vacuous);

        ReducedCliqueWitness back = fortress_to_clique(A, F);
        CHECK(back.members == res.witness.members);
        CHECK(back.pair_vertex == res.witness.pair_vertex);
    }

    // and over a noisy instance with a planted clique
    ReducedHypergraph A = planted_instance(false);
    ReducedCliqueWitness w = planted_witness();
    REQUIRE(reduced_clique_holds(A, w));
    Fortress F = clique_to_fortress(A, w);
    ReducedCliqueWitness back = fortress_to_clique(A, F);
    CHECK(back.members == w.members);
    CHECK(back.pair_vertex == w.pair_vertex);
}

TEST_CASE("a single missing edge is reported as the exact leaf triple") {
    ReducedHypergraph ok = planted_instance(false);
    ReducedHypergraph mut = planted_instance(true);
    ReducedCliqueWitness w = planted_witness();
    // the noise (same seed in both instances) must not resupply the edge
    REQUIRE_FALSE(mut.has_edge_sorted(3, 5, 8, kPairVertex[2], kPairVertex[4], kPairVertex[5]));
    REQUIRE_FALSE(reduced_clique_holds(mut, w));

    Fortress F = clique_to_fortress(ok, w);
    FortressCheck check = verify_fortress(mut, F);
    CHECK_FALSE(check.pass);
    CHECK(check.checks == 4);
    REQUIRE(check.violations.size() == 1);
    const FortressViolation& v = check.violations[0];
    // leaves 1, 2, 3 carry members 3, 5, 8; the deep pair is (2, 3)
    CHECK(v.a == 1);
    CHECK(v.b == 2);
    CHECK(v.c == 3);
    CHECK(v.d == Seq{"1"});

    CHECK_THROWS_AS(fortress_to_clique(mut, F), PreconditionError);
}

TEST_CASE("height-1 hosts are vacuous") {
    ReducedHypergraph A = ReducedHypergraph::complete(numbered_indices(3), 2);
    Fortress F;
    F.tree = KMTree::uniform(1, 3);
    F.leaf_names = {"p1", "p2", "p3"};
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b) F.vertices[FortressKey{a, b, Seq{}}] = 1;
    FortressCheck check = verify_fortress(A, F);
    CHECK(check.pass);
    CHECK(check.vacuous);
    CHECK(check.checks == 0);

    CHECK(F.vertex_at(2, 0, Seq{}) == 1);  // pair order is normalized
}

TEST_CASE("structural defects are rejected before the closure check") {
    ReducedHypergraph A = ReducedHypergraph::complete(numbered_indices(5), 2);
    ReducedCliqueResult res = find_reduced_clique(A, 4);
    REQUIRE(res.status == SearchStatus::found);
    Fortress good = clique_to_fortress(A, res.witness);

    Fortress missing = good;
    missing.vertices.erase(missing.vertices.begin());
    CHECK_THROWS_AS(verify_fortress(A, missing), ArgumentError);

    Fortress range = good;
    range.vertices.begin()->second = 2;  // classes have size 2
    CHECK_THROWS_AS(verify_fortress(A, range), ArgumentError);

    Fortress unknown = good;
    unknown.leaf_names[0] = "zz";
    CHECK_THROWS_AS(verify_fortress(A, unknown), ArgumentError);

    Fortress dup = good;
    dup.leaf_names[0] = dup.leaf_names[1];
    CHECK_THROWS_AS(verify_fortress(A, dup), ArgumentError);

    Fortress extra = good;
    extra.vertices[FortressKey{0, 1, Seq{"bogus"}}] = 0;
    CHECK_THROWS_AS(verify_fortress(A, extra), ArgumentError);

    Fortress short_names = good;
    short_names.leaf_names.pop_back();
    CHECK_THROWS_AS(verify_fortress(A, short_names), ArgumentError);

    // non-binary hosts cannot be read as cliques
    ReducedHypergraph B = ReducedHypergraph::complete(numbered_indices(3), 2);
    Fortress tri;
    tri.tree = KMTree::uniform(1, 3);
    tri.leaf_names = {"p1", "p2", "p3"};
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b) tri.vertices[FortressKey{a, b, Seq{}}] = 0;
    CHECK_THROWS_AS(fortress_to_clique(B, tri), ArgumentError);

    // cliques must be valid and of power-of-two order
    CHECK_THROWS_AS(clique_to_fortress(planted_instance(true), planted_witness()),
                    ArgumentError);
    ReducedCliqueResult five = find_reduced_clique(A, 5);
    REQUIRE(five.status == SearchStatus::found);
    CHECK_THROWS_AS(clique_to_fortress(A, five.witness), ArgumentError);
}

TEST_CASE("base selection keeps exactly the compatible members") {
    ReducedHypergraph A = half_window_instance();

    BaseSelectionResult r = sample_base_selection(A, half_window_input(7, 64));
    REQUIRE(r.success);
    CHECK(r.draws >= 1);
    CHECK(r.draws <= 64);
    REQUIRE(r.pair_vertex.size() == 1);
    CHECK(r.pair_vertex[0] < 8);  // only low draws can succeed
    REQUIRE(r.yj.size() == 1);
    CHECK(r.yj[0] == std::vector<int>{2, 3, 4, 5, 6, 7, 8, 9});
    CHECK_FALSE(r.yj_degenerate[0]);

    // identical inputs reproduce the result exactly
    BaseSelectionResult again = sample_base_selection(A, half_window_input(7, 64));
    CHECK(again.draws == r.draws);
    CHECK(again.pair_vertex == r.pair_vertex);
    CHECK(again.yj == r.yj);
}

TEST_CASE("base selection success frequency tracks the window width") {
    ReducedHypergraph A = half_window_instance();
    int successes = 0;
    for (uint64_t seed = 0; seed < 100; ++seed) {
        BaseSelectionResult r = sample_base_selection(A, half_window_input(seed, 1));
        if (r.success) ++successes;
        CHECK(r.draws == 1);
    }
    // one fair-coin draw per seed; 3 sigma around 50 of 100
    CHECK(successes >= 35);
    CHECK(successes <= 65);
}

TEST_CASE("base selection hypothesis violations") {
    ReducedHypergraph A = half_window_instance();

    BaseSelectionInput overlap = half_window_input(1, 4);
    overlap.xj[0][0] = 0;  // base index repeated in the attached set
    overlap.cj[0].ys = overlap.xj[0];
    CHECK_THROWS_AS(sample_base_selection(A, overlap), PreconditionError);

    BaseSelectionInput tiny = half_window_input(1, 4);
    tiny.x0 = {0};
    tiny.cj[0].xs = tiny.x0;
    tiny.cj[0].vertex.assign(8, 0);
    CHECK_THROWS_AS(sample_base_selection(A, tiny), ArgumentError);

    BaseSelectionInput no_sets = half_window_input(1, 4);
    no_sets.xj.clear();
    no_sets.cj.clear();
    CHECK_THROWS_AS(sample_base_selection(A, no_sets), ArgumentError);

    BaseSelectionInput wide = half_window_input(1, 4);
    wide.eps = Rational(3, 2);  // above 1/(r-1) = 1
    CHECK_THROWS_AS(sample_base_selection(A, wide), ArgumentError);

    // an undeclared base-pair class breaks the sampler's hypothesis outright
    ReducedHypergraph gap(std::vector<std::string>{"X1", "X2", "y1"});
    gap.set_class_size(0, 2, 1);
    gap.set_class_size(1, 2, 1);
    BaseSelectionInput gin;
    gin.x0 = {0, 1};
    gin.xj = {{2}};
    Selection c;
    c.xs = gin.x0;
    c.ys = gin.xj[0];
    c.vertex = {0, 0};
    gin.cj = {c};
    gin.eps = Rational(1, 2);
    CHECK_THROWS_AS(sample_base_selection(gap, gin), PreconditionError);

    // a non-admissible attachment also does
    ReducedHypergraph sparse = half_window_instance();
    BaseSelectionInput full = half_window_input(1, 4);
    full.eps = Rational(1, 1);  // needs degree 16, instance provides 8
    CHECK_THROWS_AS(sample_base_selection(sparse, full), PreconditionError);

    // empty attached sets are flagged, not failed
    BaseSelectionInput degen = half_window_input(1, 4);
    Selection empty_sel;
    empty_sel.xs = degen.x0;
    degen.xj = {{}, {}};
    degen.cj = {empty_sel, empty_sel};
    degen.eps = Rational(1, 2);  // r = 3 caps eps at 1/(r-1) = 1/2
    BaseSelectionResult r = sample_base_selection(A, degen);
    REQUIRE(r.success);
    CHECK(r.draws == 1);
    CHECK(r.pair_vertex.size() == 1);
    CHECK(r.yj_degenerate[0]);
    CHECK(r.yj_degenerate[1]);
    CHECK(r.yj[0].empty());
    CHECK(r.yj[1].empty());
}

TEST_CASE("builder succeeds on a complete host") {
    ReducedHypergraph A = ReducedHypergraph::complete(numbered_indices(16), 2);
    FortressBuildInput in;
    in.x0 = KMTree::uniform(2, 4);
    in.x0_names = numbered_indices(16);
    in.r = 2;
    in.m = 2;
    in.eps = Rational(1, 2);
    in.seed = 11;

    FortressBuildResult out = build_fortress(A, in);
    REQUIRE(out.success);
    CHECK(out.failure_stage.empty());
    CHECK(out.draws >= 1);
    CHECK(out.fortress.tree.height() == 2);
    CHECK(out.fortress.tree.arity() == 2);
    CHECK(verify_fortress(A, out.fortress).pass);

    ReducedCliqueWitness w = fortress_to_clique(A, out.fortress);
    CHECK(reduced_clique_holds(A, w));
    CHECK(w.members.size() == 4);

    FortressBuildResult rerun = build_fortress(A, in);
    CHECK(rerun.success);
    CHECK(rerun.draws == out.draws);
    CHECK(rerun.fortress.vertices == out.fortress.vertices);
}

TEST_CASE("builder succeeds at height 1 and returns the survivors") {
    ReducedHypergraph A = half_window_instance();
    FortressBuildInput in;
    in.x0 = KMTree::uniform(1, 2);
    in.x0_names = {"X1", "X2"};
    in.xj = {{2, 3, 4, 5, 6, 7, 8, 9}};
    Selection c;
    c.xs = {0, 1};
    c.ys = in.xj[0];
    c.vertex.assign(16, 0);
    in.cj = {c};
    in.r = 2;
    in.m = 2;
    in.eps = Rational(1, 2);
    in.seed = 3;
    in.retries = 64;

    FortressBuildResult out = build_fortress(A, in);
    REQUIRE(out.success);
    CHECK(out.fortress.tree.height() == 1);
    CHECK(out.fortress.vertices.size() == 1);
    CHECK(out.fortress.vertices.begin()->second < 8);
    REQUIRE(out.yj.size() == 1);
    CHECK(out.yj[0] == std::vector<int>{2, 3, 4, 5, 6, 7, 8, 9});
    CHECK(verify_fortress(A, out.fortress).vacuous);
}

TEST_CASE("builder failure stages are named") {
    // Part II: host arity below the requested m.
    ReducedHypergraph A4 = ReducedHypergraph::complete(numbered_indices(4), 2);
    FortressBuildInput arity;
    arity.x0 = KMTree::uniform(2, 2);
    arity.x0_names = numbered_indices(4);
    arity.r = 2;
    arity.m = 3;
    arity.eps = Rational(1, 2);
    FortressBuildResult a = build_fortress(A4, arity);
    CHECK_FALSE(a.success);
    CHECK(a.failure_stage == "Part II arity");

    // Part III: a cross-child class was never declared.
    ReducedHypergraph gap(numbered_indices(16));
    for (int i = 0; i < 16; ++i)
        for (int j = i + 1; j < 16; ++j)
            if (!(i == 0 && j == 4)) gap.set_class_size(i, j, 2);
    for (int i = 0; i < 16; ++i)
        for (int j = i + 1; j < 16; ++j)
            for (int k = j + 1; k < 16; ++k) {
                if (i == 0 && (j == 4 || k == 4)) continue;
                for (int p = 0; p < 2; ++p)
                    for (int q = 0; q < 2; ++q)
                        for (int s = 0; s < 2; ++s) gap.add_edge(i, j, k, p, q, s);
            }
    FortressBuildInput hole;
    hole.x0 = KMTree::uniform(2, 4);
    hole.x0_names = numbered_indices(16);
    hole.r = 2;
    hole.m = 2;
    hole.eps = Rational(1, 2);
    FortressBuildResult h = build_fortress(gap, hole);
    CHECK_FALSE(h.success);
    CHECK(h.failure_stage == "Part III admissibility");
    CHECK(h.failure_detail.find("is empty") != std::string::npos);
    CHECK(h.failure_detail.find("p01") != std::string::npos);
    CHECK(h.failure_detail.find("p05") != std::string::npos);

    // base selection: an undeclared base class at height 1.
    ReducedHypergraph nobase(std::vector<std::string>{"X1", "X2", "y1"});
    nobase.set_class_size(0, 2, 1);
    nobase.set_class_size(1, 2, 1);
    FortressBuildInput bsel;
    bsel.x0 = KMTree::uniform(1, 2);
    bsel.x0_names = {"X1", "X2"};
    bsel.xj = {{2}};
    Selection c;
    c.xs = {0, 1};
    c.ys = {2};
    c.vertex = {0, 0};
    bsel.cj = {c};
    bsel.r = 2;
    bsel.m = 2;
    bsel.eps = Rational(1, 2);
    FortressBuildResult b = build_fortress(nobase, bsel);
    CHECK_FALSE(b.success);
    CHECK(b.failure_stage == "base selection");
    CHECK(b.failure_detail.find("is empty") != std::string::npos);
}

TEST_CASE("builder input validation") {
    ReducedHypergraph A = ReducedHypergraph::complete(numbered_indices(4), 2);
    FortressBuildInput in;
    in.x0 = KMTree::uniform(2, 2);
    in.x0_names = numbered_indices(4);
    in.r = 2;
    in.m = 2;
    in.eps = Rational(1, 2);

    FortressBuildInput bad = in;
    bad.r = 1;
    CHECK_THROWS_AS(build_fortress(A, bad), ArgumentError);

    bad = in;
    bad.m = 1;
    CHECK_THROWS_AS(build_fortress(A, bad), ArgumentError);

    bad = in;
    bad.r = 3;  // r - k = 1 attached set required, none given
    CHECK_THROWS_AS(build_fortress(A, bad), ArgumentError);

    bad = in;
    bad.eps = Rational(2, 1);  // admissibility level above 1
    CHECK_THROWS_AS(build_fortress(A, bad), ArgumentError);

    bad = in;
    bad.x0_names.pop_back();
    CHECK_THROWS_AS(build_fortress(A, bad), ArgumentError);

    bad = in;
    bad.x0_names[0] = bad.x0_names[1];
    CHECK_THROWS_AS(build_fortress(A, bad), ArgumentError);
}

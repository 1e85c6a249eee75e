// The palette construction: random colourings, the induced hypergraph, and
// the density audit over colour-class, random and product pair families.

#include <cstdint>
#include <vector>

#include "boxlab/audit.hpp"
#include "boxlab/clique.hpp"
#include "boxlab/colouring.hpp"
#include "boxlab/error.hpp"
#include "boxlab/palette.hpp"
#include "boxlab/rational.hpp"
#include "doctest.h"

using namespace boxlab;

TEST_CASE("edge colourings validate and report completeness") {
    EdgeColouring phi(4, 3);
    CHECK_FALSE(phi.complete());
    for (int x = 0; x < 4; ++x)
        for (int y = x + 1; y < 4; ++y) phi.set_colour(x, y, 1 + (x + y) % 3);
    CHECK(phi.complete());
    CHECK(phi.colour(0, 1) == phi.colour(1, 0));
    CHECK_THROWS_AS(phi.set_colour(0, 0, 1), ArgumentError);
    CHECK_THROWS_AS(phi.set_colour(0, 1, 4), ArgumentError);
    CHECK_THROWS_AS(phi.set_colour(0, 4, 1), ArgumentError);
}

TEST_CASE("random colourings are complete, in range and seed-deterministic") {
    EdgeColouring a = random_colouring(20, 3, 5);
    EdgeColouring b = random_colouring(20, 3, 5);
    EdgeColouring c = random_colouring(20, 3, 6);
    CHECK(a.complete());
    bool same = true, differs = false;
    for (int x = 0; x < 20; ++x)
        for (int y = x + 1; y < 20; ++y) {
            CHECK(a.colour(x, y) >= 1);
            CHECK(a.colour(x, y) <= 3);
            same = same && a.colour(x, y) == b.colour(x, y);
            differs = differs || a.colour(x, y) != c.colour(x, y);
        }
    CHECK(same);
    CHECK(differs);
}

TEST_CASE("constructed hypergraph equals the naive pattern filter") {
    Palette p = standard_palette("cyclic3");
    EdgeColouring phi = random_colouring(30, p.colours(), 11);
    Hypergraph3 h = build_hypergraph(phi, p);
    long long expect = 0;
    for (int x = 0; x < 30; ++x)
        for (int y = x + 1; y < 30; ++y)
            for (int z = y + 1; z < 30; ++z) {
                bool in = p.contains(phi.colour(x, y), phi.colour(x, z), phi.colour(y, z));
                CHECK(h.has_edge(x, y, z) == in);
                expect += in ? 1 : 0;
            }
    CHECK(h.edge_count() == expect);
}

TEST_CASE("colour classes partition the ordered pairs") {
    EdgeColouring phi = random_colouring(15, 3, 2);
    long long total = 0;
    for (int c = 1; c <= 3; ++c) {
        PairSet P = colour_class(phi, c);
        total += P.size();
        P.row(0).for_each_set([&](int y) { CHECK(phi.colour(0, y) == c); });
    }
    CHECK(total == 15LL * 14);  // every ordered non-loop pair exactly once
    CHECK(colour_class_pairs(3).size() == 9);
}

TEST_CASE("colour-class families sit near the palette co-degree") {
    struct Case {
        const char* palette;
        Rational target;
    };
    for (const Case& tc : {Case{"cyclic3", Rational(1, 3)},
                           Case{"exactly_two_of_three", Rational(2, 3)}}) {
        Palette p = standard_palette(tc.palette);
        EdgeColouring phi = random_colouring(120, p.colours(), 21);
        Hypergraph3 h = build_hypergraph(phi, p);
        AuditSpec spec;
        spec.random_trials = 0;
        spec.random_densities.clear();
        spec.product_trials = 0;
        spec.eta = Rational(1, 50);
        AuditReport rep = audit_density(h, phi, p, spec);
        CHECK(rep.d == tc.target);
        CHECK(rep.all_satisfied);
        REQUIRE(rep.min_ratio.has_value());
        double ratio = rep.min_ratio->to_double();
        CHECK(ratio > tc.target.to_double() - 0.04);
        CHECK(ratio < tc.target.to_double() + 0.04);
        CHECK(rep.entries.size() == static_cast<size_t>(p.colours()) * p.colours());
    }
}

TEST_CASE("audit covers random and product families when asked") {
    Palette p = standard_palette("cyclic3");
    EdgeColouring phi = random_colouring(60, p.colours(), 31);
    Hypergraph3 h = build_hypergraph(phi, p);
    AuditSpec spec;
    spec.seed = 9;
    AuditReport rep = audit_density(h, phi, p, spec);
    // 9 colour-class pairs + 3 densities x 2 trials + 2 products
    CHECK(rep.entries.size() == 9 + 6 + 2);
    CHECK(rep.all_satisfied);
    int randoms = 0, products = 0;
    for (const AuditEntry& e : rep.entries) {
        if (e.family.rfind("random ", 0) == 0) ++randoms;
        if (e.family.rfind("product ", 0) == 0) ++products;
        CHECK(e.satisfied);
    }
    CHECK(randoms == 6);
    CHECK(products == 2);
}

TEST_CASE("audit slack flags a doctored sparse instance") {
    // Empty hypergraph vs a positive density target: every nonempty family
    // must be flagged once eta is small enough.
    Palette p = standard_palette("cyclic3");
    EdgeColouring phi = random_colouring(40, p.colours(), 41);
    Hypergraph3 h(40);  // no edges at all
    AuditSpec spec;
    spec.random_trials = 0;
    spec.random_densities.clear();
    spec.product_trials = 0;
    spec.eta = Rational(1, 1000000);
    AuditReport rep = audit_density(h, phi, p, spec);
    CHECK_FALSE(rep.all_satisfied);
}

TEST_CASE("cyclic construction never produces a 5-clique") {
    Palette p = standard_palette("cyclic3");
    for (uint64_t seed = 1; seed <= 3; ++seed) {
        EdgeColouring phi = random_colouring(40, p.colours(), seed);
        Hypergraph3 h = build_hypergraph(phi, p);
        CliqueResult r = find_clique(h, 5);  // unbounded: exhaustive
        CHECK(r.status == SearchStatus::none);
    }
}

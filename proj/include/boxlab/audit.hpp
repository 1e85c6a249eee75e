#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "boxlab/colouring.hpp"
#include "boxlab/counting.hpp"
#include "boxlab/palette.hpp"

namespace boxlab {

// Which pair-set families the audit runs against a constructed hypergraph:
//  - colour_classes: every ordered colour-class pair (P_c, P_c')
//  - random_pairs:   independent random pair sets at each listed density
//  - products:       (X x Y, X x Z) for random vertex subsets X, Y, Z
struct AuditSpec {
    bool colour_classes = true;
    std::vector<Rational> random_densities = {Rational(1, 4), Rational(1, 2), Rational(3, 4)};
    int random_trials = 2;   // trials per density
    int product_trials = 2;  // trials of product families
    Rational eta = Rational(1, 50);
    uint64_t seed = 0;
};

struct AuditEntry {
    std::string family;  // e.g. "colour_class 2 3", "random 1/2 #0", "product #1"
    DensityReport report;
    bool satisfied = false;  // e >= d * total - eta * n^3, compared exactly
    Rational slack;          // e - (d * total - eta * n^3)
};

struct AuditReport {
    Rational d;    // palette min co-degree used as the density target
    Rational eta;
    bool all_satisfied = true;
    std::optional<Rational> min_ratio;  // over families with total > 0
    std::string worst_family;           // family attaining min_ratio
    std::vector<AuditEntry> entries;
};

// Audits e >= d |K(P,Q)| - eta n^3 over the requested families, with
// d = min_codegree(palette).  All comparisons are exact rational arithmetic.
AuditReport audit_density(const Hypergraph3& h, const EdgeColouring& phi, const Palette& p,
                          const AuditSpec& spec);

}  // namespace boxlab

#pragma once

#include <optional>

#include "boxlab/clique.hpp"
#include "boxlab/colouring.hpp"
#include "boxlab/palette.hpp"
#include "boxlab/rational.hpp"

namespace boxlab {

struct SearchBudget {
    long long node_limit = -1;    // assignments tried; < 0 unbounded
    double time_limit_sec = -1;   // wall clock; < 0 unbounded
};

struct ColouringSearchResult {
    SearchStatus status = SearchStatus::unknown;
    std::optional<EdgeColouring> witness;  // present when feasible
    long long nodes = 0;
    double seconds = 0;
};

struct ColouringSearchOptions {
    SearchBudget budget;
    // Budgeted searches always run serially (reproducible "unknown"
    // verdicts); unbudgeted searches may split the first frontier_depth
    // edge decisions across OpenMP workers.
    bool deterministic = false;
    int frontier_depth = 4;
};

// Decides whether the complete graph K_k admits an edge colouring whose every
// triangle pattern lies in the palette.  Backtracking over edges in
// triangle-closing order (vertex by vertex) with:
//   - per-edge colour masks propagated through completed triangles,
//   - colour symmetry broken only inside the palette's automorphism group,
//   - vertex symmetry broken by adjacent-transposition lex constraints
//     (always sound: relabelling vertices preserves triangle patterns).
// A feasible witness is re-verified before it is returned.
ColouringSearchResult search_palette_colouring(const Palette& p, int k,
                                               const ColouringSearchOptions& opts = {});

// true iff every triangle of the complete colouring lies in the palette.
bool colouring_respects_palette(const EdgeColouring& phi, const Palette& p);

// Density lower-bound certificate: if no palette colouring of K_k exists, the
// palette's construction pushes the Turán-type density of K_k^{(3)} up to the
// palette's min co-degree.
struct LowerBoundReport {
    int k = 0;
    Rational d;                   // min co-degree of the palette
    SearchStatus search = SearchStatus::unknown;
    bool bound_established = false;  // true iff search == none (infeasible)
    long long nodes = 0;
    double seconds = 0;
    std::optional<EdgeColouring> witness;  // present when feasible
};

LowerBoundReport lower_bound_report(const Palette& p, int k,
                                    const ColouringSearchOptions& opts = {});

}  // namespace boxlab

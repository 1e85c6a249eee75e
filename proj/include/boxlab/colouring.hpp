#pragma once

#include <cstdint>
#include <vector>

#include "boxlab/hypergraph.hpp"
#include "boxlab/palette.hpp"

namespace boxlab {

// Complete edge colouring of K_n with colours 1..colours, stored packed
// upper-triangular.  0 marks an unset pair (only possible mid-construction;
// the file reader and the generators always produce complete colourings).
class EdgeColouring {
public:
    EdgeColouring(int n, int colours);

    int vertex_count() const { return n_; }
    int colour_count() const { return colours_; }

    int colour(int x, int y) const;
    void set_colour(int x, int y, int c);

    bool complete() const;  // every pair coloured

private:
    int n_ = 0, colours_ = 0;
    std::vector<uint8_t> col_;

    size_t idx(int x, int y) const;  // validates x != y, range
};

// Uniform random colouring.  The colour of each pair depends only on
// (seed, x, y), so the result is independent of iteration order and thread
// count, and any sub-colouring is reproducible.
EdgeColouring random_colouring(int n, int colours, uint64_t seed);

// The hypergraph whose edges are the triples {x,y,z} whose three pair colours
// form a pattern in the palette.
Hypergraph3 build_hypergraph(const EdgeColouring& phi, const Palette& p);

// The pair set {(x,y) : x != y, colour{x,y} = c}.  Rows are symmetric since
// pair colours are unordered.
PairSet colour_class(const EdgeColouring& phi, int c);

// All ordered colour pairs (c, c'), repeats allowed, 1-based.
std::vector<std::pair<int, int>> colour_class_pairs(int colours);

}  // namespace boxlab

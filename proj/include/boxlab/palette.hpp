#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "boxlab/rational.hpp"

namespace boxlab {

// A pattern is a multiset of three colours out of 1..colours, stored sorted
// a <= b <= c.
struct Pattern {
    int a = 0, b = 0, c = 0;

    Pattern() = default;
    Pattern(int x, int y, int z);  // sorts; colours must be >= 1

    auto operator<=>(const Pattern&) const = default;
};

// A palette is a set of patterns over a fixed number of colours.  The measure
// of interest is the minimum co-degree: over all ordered colour pairs (c, c')
// (repeats allowed), the number of third colours c'' whose multiset
// {c, c', c''} lies in the palette, divided by the number of colours.
class Palette {
public:
    Palette(int colours, std::vector<Pattern> patterns);

    int colours() const { return colours_; }
    const std::vector<Pattern>& patterns() const { return patterns_; }

    // Membership; arguments in any order.
    bool contains(int a, int b, int c) const;

    // Bitmask of third colours c (as bit c-1) with {a, b, c} in the palette.
    uint32_t third_mask(int a, int b) const { return mask_[(a - 1) * colours_ + (b - 1)]; }

    bool operator==(const Palette&) const = default;

private:
    int colours_ = 0;
    std::vector<Pattern> patterns_;  // sorted, unique
    std::vector<uint32_t> mask_;     // colours x colours table of third-colour masks
};

// min over ordered colour pairs of |{c'' : {c,c',c''} in palette}| / colours,
// as an exact rational.
Rational min_codegree(const Palette& p);

// Named palettes:
//   cyclic3              {112, 223, 331}              min co-degree 1/3
//   two_colour_nonmono   {112, 122}                   min co-degree 1/2
//   exactly_two_of_three all two-colour patterns on 3 colours   min co-degree 2/3
//   nonmono(l)           all non-monochromatic patterns on l colours, 2<=l<=8
// The nonmono family is accepted as "nonmono(4)" or "nonmono4".
Palette standard_palette(const std::string& name);

// Colour permutations of 1..colours mapping the pattern set onto itself,
// as images perm[c-1] (1-based colours).  Always contains the identity.
// Symmetry breaking in the colouring search quotients only by this group;
// quotienting by arbitrary colour swaps would be unsound for palettes such as
// cyclic3 that are only invariant under the 3-cycle.
std::vector<std::vector<int>> palette_colour_automorphisms(const Palette& p);

}  // namespace boxlab

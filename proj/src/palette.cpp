#include "boxlab/palette.hpp"

#include <algorithm>
#include <numeric>

#include "boxlab/error.hpp"

namespace boxlab {

Pattern::Pattern(int x, int y, int z) : a(x), b(y), c(z) {
    if (a > b) std::swap(a, b);
    if (b > c) std::swap(b, c);
    if (a > b) std::swap(a, b);
    if (a < 1) throw ArgumentError("pattern colours must be >= 1");
}

Palette::Palette(int colours, std::vector<Pattern> patterns)
    : colours_(colours), patterns_(std::move(patterns)) {
    if (colours_ < 1 || colours_ > 31)
        throw ArgumentError("palette colour count out of range (1..31)");
    for (const Pattern& p : patterns_)
        if (p.c > colours_) throw ArgumentError("pattern colour exceeds palette colour count");
    std::sort(patterns_.begin(), patterns_.end());
    patterns_.erase(std::unique(patterns_.begin(), patterns_.end()), patterns_.end());
    mask_.assign(static_cast<size_t>(colours_) * colours_, 0);
    for (const Pattern& p : patterns_) {
        auto add = [&](int x, int y, int z) {
            mask_[(x - 1) * colours_ + (y - 1)] |= 1u << (z - 1);
            mask_[(y - 1) * colours_ + (x - 1)] |= 1u << (z - 1);
        };
        add(p.a, p.b, p.c);
        add(p.a, p.c, p.b);
        add(p.b, p.c, p.a);
    }
}

bool Palette::contains(int a, int b, int c) const {
    if (a < 1 || b < 1 || c < 1 || a > colours_ || b > colours_ || c > colours_) return false;
    return (third_mask(a, b) >> (c - 1)) & 1u;
}

Rational min_codegree(const Palette& p) {
    int l = p.colours();
    int best = l;
    for (int a = 1; a <= l; ++a)
        for (int b = a; b <= l; ++b)
            best = std::min(best, std::popcount(p.third_mask(a, b)));
    return Rational(best, l);
}

Palette standard_palette(const std::string& name) {
    if (name == "cyclic3")
        return Palette(3, {Pattern(1, 1, 2), Pattern(2, 2, 3), Pattern(3, 3, 1)});
    if (name == "two_colour_nonmono") return Palette(2, {Pattern(1, 1, 2), Pattern(1, 2, 2)});
    if (name == "exactly_two_of_three") {
        std::vector<Pattern> ps;
        for (int a = 1; a <= 3; ++a)
            for (int b = 1; b <= 3; ++b)
                if (a != b) ps.emplace_back(a, a, b);
        return Palette(3, std::move(ps));
    }
    // nonmono(l) / nonmonol
    std::string base = "nonmono";
    if (name.rfind(base, 0) == 0) {
        std::string arg = name.substr(base.size());
        if (arg.size() >= 3 && arg.front() == '(' && arg.back() == ')')
            arg = arg.substr(1, arg.size() - 2);
        if (arg.size() == 1 && arg[0] >= '2' && arg[0] <= '8') {
            int l = arg[0] - '0';
            std::vector<Pattern> ps;
            for (int a = 1; a <= l; ++a)
                for (int b = a; b <= l; ++b)
                    for (int c = b; c <= l; ++c)
                        if (!(a == b && b == c)) ps.emplace_back(a, b, c);
            return Palette(l, std::move(ps));
        }
    }
    throw ArgumentError("unknown palette name: " + name);
}

std::vector<std::vector<int>> palette_colour_automorphisms(const Palette& p) {
    int l = p.colours();
    std::vector<int> perm(l);
    std::iota(perm.begin(), perm.end(), 1);
    std::vector<std::vector<int>> autos;
    do {
        bool ok = true;
        for (const Pattern& pat : p.patterns()) {
            Pattern image(perm[pat.a - 1], perm[pat.b - 1], perm[pat.c - 1]);
            if (!p.contains(image.a, image.b, image.c)) {
                ok = false;
                break;
            }
        }
        if (ok) autos.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    // A permutation preserving the set forward preserves it backward too
    // (finite set); checking images suffices.
    return autos;
}

}  // namespace boxlab

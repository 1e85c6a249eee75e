#include "boxlab/colouring.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "boxlab/error.hpp"
#include "boxlab/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace boxlab {

EdgeColouring::EdgeColouring(int n, int colours) : n_(n), colours_(colours) {
    if (n < 0) throw ArgumentError("negative vertex count");
    if (colours < 1 || colours > 255) throw ArgumentError("colour count out of range (1..255)");
    col_.assign(static_cast<size_t>(n) * (n - 1) / 2, 0);
}

size_t EdgeColouring::idx(int x, int y) const {
    if (x == y) throw ArgumentError("colour of a loop");
    if (x < 0 || y < 0 || x >= n_ || y >= n_)
        throw ArgumentError("pair vertex out of range: {" + std::to_string(x) + "," +
                            std::to_string(y) + "}");
    if (x > y) std::swap(x, y);
    return static_cast<size_t>(y) * (y - 1) / 2 + x;
}

int EdgeColouring::colour(int x, int y) const { return col_[idx(x, y)]; }

void EdgeColouring::set_colour(int x, int y, int c) {
    if (c < 1 || c > colours_) throw ArgumentError("colour out of range: " + std::to_string(c));
    col_[idx(x, y)] = static_cast<uint8_t>(c);
}

bool EdgeColouring::complete() const {
    for (uint8_t c : col_)
        if (c == 0) return false;
    return true;
}

EdgeColouring random_colouring(int n, int colours, uint64_t seed) {
    EdgeColouring phi(n, colours);
    for (int y = 1; y < n; ++y)
        for (int x = 0; x < y; ++x) {
            SplitMix64 g(mix_seed(seed, static_cast<uint64_t>(x), static_cast<uint64_t>(y)));
            phi.set_colour(x, y, 1 + static_cast<int>(g.below(static_cast<uint64_t>(colours))));
        }
    return phi;
}

Hypergraph3 build_hypergraph(const EdgeColouring& phi, const Palette& p) {
    if (phi.colour_count() > p.colours())
        throw ArgumentError("colouring uses more colours than the palette");
    if (!phi.complete()) throw ArgumentError("colouring is incomplete");
    int n = phi.vertex_count();
    Hypergraph3 h(n);
    std::vector<std::vector<std::array<int, 3>>> parts;
#ifdef _OPENMP
#pragma omp parallel
    {
#pragma omp single
        parts.resize(static_cast<size_t>(std::max(1, omp_get_num_threads())));
#pragma omp for schedule(dynamic, 4)
        for (int z = 2; z < n; ++z) {
            auto& out = parts[static_cast<size_t>(omp_get_thread_num())];
            for (int y = 1; y < z; ++y) {
                int cyz = phi.colour(y, z);
                for (int x = 0; x < y; ++x)
                    if (p.contains(phi.colour(x, y), phi.colour(x, z), cyz))
                        out.push_back({x, y, z});
            }
        }
    }
    std::vector<std::array<int, 3>> edges;
    for (auto& part : parts)
        edges.insert(edges.end(), part.begin(), part.end());
    return Hypergraph3::from_edges(n, std::move(edges));
#else
    std::vector<std::array<int, 3>> edges;
    for (int z = 2; z < n; ++z)
        for (int y = 1; y < z; ++y) {
            int cyz = phi.colour(y, z);
            for (int x = 0; x < y; ++x)
                if (p.contains(phi.colour(x, y), phi.colour(x, z), cyz))
                    edges.push_back({x, y, z});
        }
    return Hypergraph3::from_edges(n, std::move(edges));
#endif
}

PairSet colour_class(const EdgeColouring& phi, int c) {
    if (c < 1 || c > phi.colour_count()) throw ArgumentError("colour out of range");
    int n = phi.vertex_count();
    PairSet ps(n);
    for (int y = 1; y < n; ++y)
        for (int x = 0; x < y; ++x)
            if (phi.colour(x, y) == c) {
                ps.add(x, y);
                ps.add(y, x);
            }
    return ps;
}

std::vector<std::pair<int, int>> colour_class_pairs(int colours) {
    std::vector<std::pair<int, int>> out;
    for (int c = 1; c <= colours; ++c)
        for (int d = 1; d <= colours; ++d) out.emplace_back(c, d);
    return out;
}

}  // namespace boxlab

#include "boxlab/reference.hpp"

#include <algorithm>
#include <cmath>

#include "boxlab/error.hpp"

namespace boxlab::reference {

DensityReport count_boxtimes(const Hypergraph3& h, const PairSet& P, const PairSet& Q) {
    int n = h.vertex_count();
    if (P.vertex_count() != n || Q.vertex_count() != n)
        throw ArgumentError("count_boxtimes: vertex count mismatch");
    long long e = 0, total = 0;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) {
                if (x == y || y == z || x == z) continue;
                if (!P.contains(x, y) || !Q.contains(x, z)) continue;
                ++total;
                if (h.has_edge(x, y, z)) ++e;
            }
    return DensityReport::of(e, total);
}

DensityReport count_ev(const Hypergraph3& h, const std::vector<int>& X, const PairSet& P) {
    int n = h.vertex_count();
    if (P.vertex_count() != n) throw ArgumentError("count_ev: vertex count mismatch");
    DynBitset xb = vertex_subset_bits(n, X);
    long long e = 0, total = 0;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) {
                if (x == y || y == z || x == z) continue;
                if (!xb.test(x) || !P.contains(y, z)) continue;
                ++total;
                if (h.has_edge(x, y, z)) ++e;
            }
    return DensityReport::of(e, total);
}

DensityReport count_vvv(const Hypergraph3& h, const std::vector<int>& X,
                        const std::vector<int>& Y, const std::vector<int>& Z) {
    int n = h.vertex_count();
    DynBitset xb = vertex_subset_bits(n, X);
    DynBitset yb = vertex_subset_bits(n, Y);
    DynBitset zb = vertex_subset_bits(n, Z);
    long long e = 0, total = 0;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) {
                if (x == y || y == z || x == z) continue;
                if (!xb.test(x) || !yb.test(y) || !zb.test(z)) continue;
                ++total;
                if (h.has_edge(x, y, z)) ++e;
            }
    return DensityReport::of(e, total);
}

long long count_triangles_tripartite(const TripartiteGraph& g) {
    long long count = 0;
    for (int xi = 0; xi < g.x_size(); ++xi)
        for (int yi = 0; yi < g.y_size(); ++yi) {
            if (!g.xy(xi, yi)) continue;
            for (int zi = 0; zi < g.z_size(); ++zi)
                if (g.xz(xi, zi) && g.yz(yi, zi)) ++count;
        }
    return count;
}

std::optional<std::vector<int>> find_clique(const Hypergraph3& h, int k) {
    int n = h.vertex_count();
    if (k < 0) throw ArgumentError("negative clique order");
    if (k > n) return std::nullopt;
    std::vector<int> pick(k);
    for (int i = 0; i < k; ++i) pick[i] = i;
    auto is_clique = [&](const std::vector<int>& s) {
        for (size_t a = 0; a < s.size(); ++a)
            for (size_t b = a + 1; b < s.size(); ++b)
                for (size_t c = b + 1; c < s.size(); ++c)
                    if (!h.has_edge(s[a], s[b], s[c])) return false;
        return true;
    };
    if (k == 0) return std::vector<int>{};
    for (;;) {
        if (is_clique(pick)) return pick;
        // next k-combination
        int i = k - 1;
        while (i >= 0 && pick[i] == n - k + i) --i;
        if (i < 0) return std::nullopt;
        ++pick[i];
        for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
}

std::optional<std::vector<int>> enumerate_palette_colouring(const Palette& p, int k) {
    int m = k * (k - 1) / 2;
    int l = p.colours();
    if (m == 0) return std::vector<int>{};
    double space = std::pow(static_cast<double>(l), m);
    if (space > 5e8) throw ArgumentError("enumeration space too large");
    // edge (u,v), u<v, at index u + v(v-1)/2
    std::vector<int> col(m, 1);
    auto valid = [&]() {
        for (int a = 0; a < k; ++a)
            for (int b = a + 1; b < k; ++b)
                for (int c = b + 1; c < k; ++c) {
                    int ab = a + b * (b - 1) / 2;
                    int ac = a + c * (c - 1) / 2;
                    int bc = b + c * (c - 1) / 2;
                    if (!p.contains(col[ab], col[ac], col[bc])) return false;
                }
        return true;
    };
    for (;;) {
        if (valid()) return col;
        int i = m - 1;
        while (i >= 0 && col[i] == l) {
            col[i] = 1;
            --i;
        }
        if (i < 0) return std::nullopt;
        ++col[i];
    }
}

}  // namespace boxlab::reference

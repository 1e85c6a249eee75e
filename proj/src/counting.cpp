#include "boxlab/counting.hpp"

#include <algorithm>
#include <string>

#include "boxlab/error.hpp"
#include "boxlab/rng.hpp"

namespace boxlab {

namespace {

void check_same_n(int a, int b, const char* what) {
    if (a != b)
        throw ArgumentError(std::string(what) + ": vertex count mismatch (" + std::to_string(a) +
                            " vs " + std::to_string(b) + ")");
}

}  // namespace

DensityReport DensityReport::of(long long e, long long total) {
    DensityReport r;
    r.e = e;
    r.total = total;
    if (total > 0) r.ratio = Rational(e, total);
    return r;
}

DensityReport count_boxtimes(const Hypergraph3& h, const PairSet& P, const PairSet& Q) {
    int n = h.vertex_count();
    check_same_n(n, P.vertex_count(), "count_boxtimes");
    check_same_n(n, Q.vertex_count(), "count_boxtimes");

    // total: sum over apex x of |P_x||Q_x| - |P_x ∩ Q_x| (pairs rule out
    // y = x, z = x already; the intersection removes y = z).
    long long total = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(+ : total)
#endif
    for (int x = 0; x < n; ++x) {
        const DynBitset& px = P.row(x);
        const DynBitset& qx = Q.row(x);
        total += static_cast<long long>(px.count()) * qx.count() - px.count_and(qx);
    }

    // e: edge-driven.  Each edge {a,b,c} supports ((x,y),(x,z)) for each apex
    // choice and each ordering of the remaining two vertices.
    const auto& edges = h.edges();
    long long e = 0;
    long long m = h.edge_count();
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(+ : e)
#endif
    for (long long i = 0; i < m; ++i) {
        const auto& t = edges[i];
        for (int apex = 0; apex < 3; ++apex) {
            int x = t[apex], u = t[(apex + 1) % 3], v = t[(apex + 2) % 3];
            e += (P.contains(x, u) && Q.contains(x, v)) ? 1 : 0;
            e += (P.contains(x, v) && Q.contains(x, u)) ? 1 : 0;
        }
    }
    return DensityReport::of(e, total);
}

DensityReport count_ev(const Hypergraph3& h, const std::vector<int>& X, const PairSet& P) {
    int n = h.vertex_count();
    check_same_n(n, P.vertex_count(), "count_ev");
    DynBitset xb = vertex_subset_bits(n, X);
    long long xs = xb.count();

    // total = sum over (y,z) in P of |X \ {y,z}|
    //       = |P||X| - sum_y outdeg(y)[y in X] - sum_y |row(y) ∩ X|.
    long long correction = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(+ : correction)
#endif
    for (int y = 0; y < n; ++y) {
        long long row = P.row(y).count();
        correction += (xb.test(y) ? row : 0) + P.row(y).count_and(xb);
    }
    long long total = static_cast<long long>(P.size()) * xs - correction;

    const auto& edges = h.edges();
    long long e = 0;
    long long m = h.edge_count();
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(+ : e)
#endif
    for (long long i = 0; i < m; ++i) {
        const auto& t = edges[i];
        for (int apex = 0; apex < 3; ++apex) {
            int x = t[apex], u = t[(apex + 1) % 3], v = t[(apex + 2) % 3];
            if (!xb.test(x)) continue;
            e += P.contains(u, v) ? 1 : 0;
            e += P.contains(v, u) ? 1 : 0;
        }
    }
    return DensityReport::of(e, total);
}

DensityReport count_vvv(const Hypergraph3& h, const std::vector<int>& X,
                        const std::vector<int>& Y, const std::vector<int>& Z) {
    int n = h.vertex_count();
    DynBitset xb = vertex_subset_bits(n, X);
    DynBitset yb = vertex_subset_bits(n, Y);
    DynBitset zb = vertex_subset_bits(n, Z);
    long long nx = xb.count(), ny = yb.count(), nz = zb.count();
    long long nxy = xb.count_and(yb), nyz = yb.count_and(zb), nxz = xb.count_and(zb);
    DynBitset xyb = xb;
    xyb &= yb;
    long long nxyz = xyb.count_and(zb);
    // inclusion-exclusion over the three equalities x=y, y=z, x=z
    long long total = nx * ny * nz - nxy * nz - nyz * nx - nxz * ny + 2 * nxyz;

    const auto& edges = h.edges();
    long long e = 0;
    long long m = h.edge_count();
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(+ : e)
#endif
    for (long long i = 0; i < m; ++i) {
        const auto& t = edges[i];
        // all 6 orderings of the edge's vertices against (X, Y, Z)
        static constexpr int ord[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                          {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
        for (const auto& o : ord)
            if (xb.test(t[o[0]]) && yb.test(t[o[1]]) && zb.test(t[o[2]])) ++e;
    }
    return DensityReport::of(e, total);
}

TripartiteGraph::TripartiteGraph(std::vector<int> X, std::vector<int> Y, std::vector<int> Z)
    : X_(std::move(X)), Y_(std::move(Y)), Z_(std::move(Z)) {
    int top = 0;
    for (const auto* part : {&X_, &Y_, &Z_})
        for (int v : *part) top = std::max(top, v + 1);
    DynBitset seen(top);
    for (const auto* part : {&X_, &Y_, &Z_})
        for (int v : *part) {
            if (v < 0) throw ArgumentError("negative vertex in tripartite part");
            if (seen.test(v))
                throw ArgumentError("tripartite parts overlap at vertex " + std::to_string(v));
            seen.set(v);
        }
    xy_.assign(X_.size(), DynBitset(static_cast<int>(Y_.size())));
    xz_.assign(X_.size(), DynBitset(static_cast<int>(Z_.size())));
    yz_.assign(Y_.size(), DynBitset(static_cast<int>(Z_.size())));
}

TripartiteGraph TripartiteGraph::random(std::vector<int> X, std::vector<int> Y,
                                        std::vector<int> Z, const Rational& p, uint64_t seed) {
    if (p < Rational(0) || p > Rational(1)) throw ArgumentError("density outside [0,1]");
    TripartiteGraph g(std::move(X), std::move(Y), std::move(Z));
    auto keep = [&](uint64_t tag, int a, int b) {
        SplitMix64 r(mix_seed(seed, tag, static_cast<uint64_t>(a), static_cast<uint64_t>(b)));
        return static_cast<long long>(r.below(static_cast<uint64_t>(p.den))) < p.num;
    };
    for (int xi = 0; xi < g.x_size(); ++xi)
        for (int yi = 0; yi < g.y_size(); ++yi)
            if (keep(1, xi, yi)) g.add_xy(xi, yi);
    for (int xi = 0; xi < g.x_size(); ++xi)
        for (int zi = 0; zi < g.z_size(); ++zi)
            if (keep(2, xi, zi)) g.add_xz(xi, zi);
    for (int yi = 0; yi < g.y_size(); ++yi)
        for (int zi = 0; zi < g.z_size(); ++zi)
            if (keep(3, yi, zi)) g.add_yz(yi, zi);
    return g;
}

void TripartiteGraph::add_xy(int xi, int yi) { xy_[xi].set(yi); }
void TripartiteGraph::add_xz(int xi, int zi) { xz_[xi].set(zi); }
void TripartiteGraph::add_yz(int yi, int zi) { yz_[yi].set(zi); }

long long count_triangles_tripartite(const TripartiteGraph& g) {
    long long count = 0;
    int nx = g.x_size();
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) reduction(+ : count)
#endif
    for (int xi = 0; xi < nx; ++xi) {
        const DynBitset& xz = g.xz_row(xi);
        g.xy_row(xi).for_each_set(
            [&](int yi) { count += xz.count_and(g.yz_row(yi)); });
    }
    return count;
}

double triangle_count_upper_bound(const RegularityParams& rp, long long nx, long long ny,
                                  long long nz) {
    double sizes = static_cast<double>(nx) * static_cast<double>(ny) * static_cast<double>(nz);
    double d2 = rp.d2.to_double(), delta2 = rp.delta2.to_double();
    return (d2 * d2 * d2 + 3.0 * delta2) * sizes;
}

}  // namespace boxlab

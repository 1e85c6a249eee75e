#include "boxlab/audit.hpp"

#include "boxlab/error.hpp"
#include "boxlab/rng.hpp"

namespace boxlab {

namespace {

std::vector<int> random_subset(int n, uint64_t seed) {
    // Each vertex kept with probability 1/2, per-vertex streams.
    std::vector<int> out;
    for (int v = 0; v < n; ++v) {
        SplitMix64 g(mix_seed(seed, static_cast<uint64_t>(v)));
        if (g.next() & 1u) out.push_back(v);
    }
    return out;
}

}  // namespace

AuditReport audit_density(const Hypergraph3& h, const EdgeColouring& phi, const Palette& p,
                          const AuditSpec& spec) {
    int n = h.vertex_count();
    if (phi.vertex_count() != n) throw ArgumentError("audit: vertex count mismatch");

    AuditReport rep;
    rep.d = min_codegree(p);
    rep.eta = spec.eta;

    Rational n3(static_cast<long long>(n) * n * n);
    Rational bound_term = spec.eta * n3;  // eta * n^3

    auto add_entry = [&](std::string family, DensityReport dr) {
        AuditEntry ent;
        ent.family = std::move(family);
        ent.report = dr;
        // e >= d * total - eta * n^3  <=>  e + eta n^3 - d total >= 0
        ent.slack = Rational(dr.e) + bound_term - rep.d * Rational(dr.total);
        ent.satisfied = ent.slack >= Rational(0);
        if (!ent.satisfied) rep.all_satisfied = false;
        if (dr.ratio) {
            if (!rep.min_ratio || *dr.ratio < *rep.min_ratio) {
                rep.min_ratio = *dr.ratio;
                rep.worst_family = ent.family;
            }
        }
        rep.entries.push_back(std::move(ent));
    };

    if (spec.colour_classes) {
        std::vector<PairSet> classes;
        for (int c = 1; c <= phi.colour_count(); ++c) classes.push_back(colour_class(phi, c));
        for (auto [c, cp] : colour_class_pairs(phi.colour_count()))
            add_entry("colour_class " + std::to_string(c) + " " + std::to_string(cp),
                      count_boxtimes(h, classes[c - 1], classes[cp - 1]));
    }

    for (size_t di = 0; di < spec.random_densities.size(); ++di) {
        const Rational& rho = spec.random_densities[di];
        for (int t = 0; t < spec.random_trials; ++t) {
            PairSet P = PairSet::random(n, rho, mix_seed(spec.seed, 1, di, 2 * t));
            PairSet Q = PairSet::random(n, rho, mix_seed(spec.seed, 1, di, 2 * t + 1));
            add_entry("random " + rho.str() + " #" + std::to_string(t),
                      count_boxtimes(h, P, Q));
        }
    }

    for (int t = 0; t < spec.product_trials; ++t) {
        std::vector<int> X = random_subset(n, mix_seed(spec.seed, 2, t, 0));
        std::vector<int> Y = random_subset(n, mix_seed(spec.seed, 2, t, 1));
        std::vector<int> Z = random_subset(n, mix_seed(spec.seed, 2, t, 2));
        PairSet P = PairSet::product(n, X, Y);
        PairSet Q = PairSet::product(n, X, Z);
        add_entry("product #" + std::to_string(t), count_boxtimes(h, P, Q));
    }

    return rep;
}

}  // namespace boxlab

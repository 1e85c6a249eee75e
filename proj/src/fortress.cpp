#include "boxlab/fortress.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "boxlab/error.hpp"
#include "boxlab/rng.hpp"

namespace boxlab {

namespace {

using BigUint = boost::multiprecision::cpp_int;

long long pair_index(int a, int b) {
    if (a > b) std::swap(a, b);
    return static_cast<long long>(b) * (b - 1) / 2 + a;
}

std::string describe_pair(const ReducedHypergraph& A, int u, int v) {
    return "{" + A.index_name(u) + ", " + A.index_name(v) + "}";
}

// Resolves leaf names to index positions and validates the bijection.
std::vector<int> resolve_leaf_positions(const ReducedHypergraph& A,
                                        const KMTree& tree,
                                        const std::vector<std::string>& names) {
    if (static_cast<long long>(names.size()) != tree.leaf_count())
        throw ArgumentError("leaf name count " + std::to_string(names.size()) +
                            " does not match leaf count " + std::to_string(tree.leaf_count()));
    std::vector<int> pos(names.size());
    for (std::size_t i = 0; i < names.size(); ++i) pos[i] = A.position(names[i]);
    std::vector<int> sorted = pos;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw ArgumentError("leaf names are not distinct");
    return pos;
}

}  // namespace

int Fortress::vertex_at(int a, int b, const Seq& d) const {
    FortressKey key{std::min(a, b), std::max(a, b), d};
    auto it = vertices.find(key);
    if (it == vertices.end())
        throw ArgumentError("no vertex stored for leaf pair (" + std::to_string(key.a) + ", " +
                            std::to_string(key.b) + ") with deviation " + seq_to_string(d));
    return it->second;
}

FortressCheck verify_fortress(const ReducedHypergraph& A, const Fortress& F) {
    const KMTree& T = F.tree;
    const int n = static_cast<int>(T.leaf_count());
    if (n < 2) throw ArgumentError("fortress host needs at least two leaves");
    std::vector<int> pos = resolve_leaf_positions(A, T, F.leaf_names);
    const auto& leaves = T.leaves();

    // Domain completeness and vertex ranges.
    std::size_t expected = 0;
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            const Seq meet = wedge(leaves[a], leaves[b]);
            const int size = A.class_size(pos[a], pos[b]);
            for (const Seq& d : q_set(T, meet)) {
                ++expected;
                auto it = F.vertices.find(FortressKey{a, b, d});
                if (it == F.vertices.end())
                    throw ArgumentError("missing vertex for leaf pair (" + std::to_string(a) +
                                        ", " + std::to_string(b) + ") with deviation " +
                                        seq_to_string(d));
                if (it->second < 0 || it->second >= size)
                    throw ArgumentError("vertex " + std::to_string(it->second) +
                                        " out of range for the class on " +
                                        describe_pair(A, pos[a], pos[b]) + " of size " +
                                        std::to_string(size));
            }
        }
    }
    if (F.vertices.size() != expected)
        throw ArgumentError("vertex map has " + std::to_string(F.vertices.size()) +
                            " entries but the leaf pairs need exactly " +
                            std::to_string(expected));

    FortressCheck out;
    out.vacuous = (T.height() == 1);

    // Closure axiom: for every deep pair (b, c) and shallow leaf a, every
    // deviation of the deep meet whose entry at the split depth matches a
    // must close a triple with the two prefix-restricted pair vertices.
    for (int b = 0; b < n; ++b) {
        for (int c = b + 1; c < n; ++c) {
            const int w = wedge_length(leaves[b], leaves[c]);
            if (w == 0) continue;
            const std::vector<Seq> devs = q_set(T, wedge(leaves[b], leaves[c]));
            for (int a = 0; a < n; ++a) {
                if (a == b || a == c) continue;
                const int s = wedge_length(leaves[a], leaves[b]);
                if (s >= w) continue;
                for (const Seq& d : devs) {
                    if (d[s] != leaves[a][s]) continue;
                    const Seq ds = restrict_seq(d, s);
                    const int v_ab = F.vertex_at(a, b, ds);
                    const int v_ac = F.vertex_at(a, c, ds);
                    const int v_bc = F.vertex_at(b, c, d);
                    ++out.checks;
                    if (!A.has_edge(pos[a], pos[b], pos[c], v_ab, v_ac, v_bc))
                        out.violations.push_back(FortressViolation{a, b, c, d});
                }
            }
        }
    }
    out.pass = out.violations.empty();
    return out;
}

ReducedCliqueWitness fortress_to_clique(const ReducedHypergraph& A, const Fortress& F) {
    if (F.tree.arity() != 2)
        throw ArgumentError("clique extraction needs a binary host, got arity " +
                            std::to_string(F.tree.arity()));
    FortressCheck check = verify_fortress(A, F);
    if (!check.pass)
        throw PreconditionError("fortress fails its closure check (" +
                                std::to_string(check.violations.size()) + " violations)");

    const int n = static_cast<int>(F.tree.leaf_count());
    std::vector<int> pos = resolve_leaf_positions(A, F.tree, F.leaf_names);
    std::vector<std::pair<int, int>> order(n);  // (index position, leaf index)
    for (int i = 0; i < n; ++i) order[i] = {pos[i], i};
    std::sort(order.begin(), order.end());

    ReducedCliqueWitness w;
    w.members.resize(n);
    for (int i = 0; i < n; ++i) w.members[i] = order[i].first;
    w.pair_vertex.resize(static_cast<std::size_t>(n) * (n - 1) / 2);
    const auto& leaves = F.tree.leaves();
    for (int b = 1; b < n; ++b) {
        for (int a = 0; a < b; ++a) {
            const int la = order[a].second, lb = order[b].second;
            // A binary host has exactly one deviation sequence per meet.
            const Seq d = q_set(F.tree, wedge(leaves[la], leaves[lb]))[0];
            w.pair_vertex[pair_index(a, b)] = F.vertex_at(la, lb, d);
        }
    }
    if (!reduced_clique_holds(A, w))
        throw PreconditionError("extracted clique failed re-validation");
    return w;
}

Fortress clique_to_fortress(const ReducedHypergraph& A, const ReducedCliqueWitness& w) {
    if (!reduced_clique_holds(A, w)) throw ArgumentError("witness is not a valid clique");
    const int t = static_cast<int>(w.members.size());
    int r = 0;
    while ((1 << r) < t) ++r;
    if ((1 << r) != t)
        throw ArgumentError("clique order " + std::to_string(t) + " is not a power of two");

    Fortress F;
    F.tree = KMTree::uniform(r, 2);
    F.leaf_names.resize(t);
    for (int i = 0; i < t; ++i) F.leaf_names[i] = A.index_name(w.members[i]);
    const auto& leaves = F.tree.leaves();
    for (int b = 1; b < t; ++b) {
        for (int a = 0; a < b; ++a) {
            const Seq d = q_set(F.tree, wedge(leaves[a], leaves[b]))[0];
            F.vertices[FortressKey{a, b, d}] = w.pair_vertex[pair_index(a, b)];
        }
    }
    FortressCheck check = verify_fortress(A, F);
    if (!check.pass) throw PreconditionError("relabeled clique failed the closure check");
    return F;
}

// ---- randomized base selection ---------------------------------------------

namespace {

// Shared hypothesis validation for the sampler and the builder: position
// ranges, pairwise disjointness, selection shapes, and attachment
// admissibility at the given level.  Base-pair classes are only required to
// be nonempty when `require_base_classes` is set: the sampler treats an
// empty class as a broken hypothesis, while the builder reports it as a
// stage failure at the point where a draw from that class is needed.
void validate_attachments(const ReducedHypergraph& A, const std::vector<int>& base,
                          const std::vector<std::vector<int>>& xj,
                          const std::vector<Selection>& cj, const Rational& level,
                          bool require_base_classes) {
    std::vector<int> all = base;
    for (const auto& set : xj) all.insert(all.end(), set.begin(), set.end());
    for (int p : all)
        if (p < 0 || p >= A.index_count())
            throw ArgumentError("index position " + std::to_string(p) + " out of range");
    std::sort(all.begin(), all.end());
    auto dup = std::adjacent_find(all.begin(), all.end());
    if (dup != all.end())
        throw PreconditionError("the base and attached sets must be pairwise disjoint; " +
                                A.index_name(*dup) + " repeats");

    if (cj.size() != xj.size())
        throw ArgumentError("need one selection per attached set, got " +
                            std::to_string(cj.size()) + " for " + std::to_string(xj.size()));
    for (std::size_t j = 0; j < xj.size(); ++j) {
        if (cj[j].xs != base || cj[j].ys != xj[j])
            throw ArgumentError("selection " + std::to_string(j + 1) +
                                " is not over (base set, attached set " + std::to_string(j + 1) +
                                ")");
    }

    if (require_base_classes) {
        for (std::size_t a = 0; a < base.size(); ++a)
            for (std::size_t b = a + 1; b < base.size(); ++b)
                if (A.class_size(base[a], base[b]) == 0)
                    throw PreconditionError("class on " + describe_pair(A, base[a], base[b]) +
                                            " is undeclared");
    }

    for (std::size_t j = 0; j < xj.size(); ++j) {
        AdmissibleReport rep = check_admissible(A, cj[j], level);
        if (!rep.pass) {
            const AdmissibleViolation& v = rep.violations.front();
            throw PreconditionError(
                "selection " + std::to_string(j + 1) + " is not admissible at level " +
                level.str() + ": pair " + describe_pair(A, v.x, v.xp) + " with " +
                A.index_name(v.y) + " has degree " + std::to_string(v.degree) + " of " +
                std::to_string(v.class_size));
        }
    }
}

Rational admissibility_level(int r, const Rational& eps) {
    if (!(Rational(0) < eps)) throw ArgumentError("eps must be positive");
    Rational level = Rational(r - 2, r - 1) + eps;
    if (Rational(1) < level)
        throw ArgumentError("eps " + eps.str() + " pushes the admissibility level " +
                            level.str() + " above 1 (needs eps <= 1/(r-1))");
    return level;
}

}  // namespace

BaseSelectionResult sample_base_selection(const ReducedHypergraph& A,
                                          const BaseSelectionInput& in) {
    const int m = static_cast<int>(in.x0.size());
    if (m < 2) throw ArgumentError("the base set needs at least two indices");
    if (in.xj.empty()) throw ArgumentError("at least one attached set is required");
    if (in.retries < 1) throw ArgumentError("retries must be positive");
    const int r = static_cast<int>(in.xj.size()) + 1;
    const Rational level = admissibility_level(r, in.eps);
    validate_attachments(A, in.x0, in.xj, in.cj, level, /*require_base_classes=*/true);

    const int pairs = m * (m - 1) / 2;
    const Rational half = in.eps / Rational(2);
    const BigUint num_pow = boost::multiprecision::pow(BigUint(half.num), pairs);
    const BigUint den_pow = boost::multiprecision::pow(BigUint(half.den), pairs);

    BaseSelectionResult out;
    for (int attempt = 0; attempt < in.retries; ++attempt) {
        out.draws = attempt + 1;
        std::vector<int> drawn(pairs);
        for (int b = 1; b < m; ++b) {
            for (int a = 0; a < b; ++a) {
                const long long pr = pair_index(a, b);
                SplitMix64 g(mix_seed(in.seed, 0xba5e5e1ull, static_cast<uint64_t>(attempt),
                                      static_cast<uint64_t>(pr)));
                drawn[pr] = static_cast<int>(
                    g.below(static_cast<uint64_t>(A.class_size(in.x0[a], in.x0[b]))));
            }
        }

        std::vector<std::vector<int>> yj(in.xj.size());
        std::vector<bool> degenerate(in.xj.size(), false);
        bool all_pass = true;
        for (std::size_t j = 0; j < in.xj.size(); ++j) {
            if (in.xj[j].empty()) {
                degenerate[j] = true;
                continue;
            }
            for (std::size_t yi = 0; yi < in.xj[j].size(); ++yi) {
                bool keep = true;
                for (int b = 1; b < m && keep; ++b)
                    for (int a = 0; a < b && keep; ++a)
                        keep = A.has_edge(in.x0[a], in.x0[b], in.xj[j][yi],
                                          drawn[pair_index(a, b)],
                                          in.cj[j].at(a, static_cast<int>(yi)),
                                          in.cj[j].at(b, static_cast<int>(yi)));
                if (keep) yj[j].push_back(in.xj[j][yi]);
            }
            // |Y_j| / |X_j| >= (eps/2)^pairs, compared exactly.
            const BigUint lhs = BigUint(yj[j].size()) * den_pow;
            const BigUint rhs = num_pow * BigUint(in.xj[j].size());
            if (lhs < rhs) {
                all_pass = false;
                break;
            }
        }
        if (!all_pass) continue;

        // Independent membership re-check through the position-keyed lookup.
        for (std::size_t j = 0; j < in.xj.size(); ++j) {
            for (int y : yj[j]) {
                for (int b = 1; b < m; ++b) {
                    for (int a = 0; a < b; ++a) {
                        if (!A.has_edge(in.x0[a], in.x0[b], y, drawn[pair_index(a, b)],
                                        in.cj[j].vertex_for(in.x0[a], y),
                                        in.cj[j].vertex_for(in.x0[b], y)))
                            throw PreconditionError("survivor re-check failed (internal)");
                    }
                }
            }
        }

        out.success = true;
        out.pair_vertex = std::move(drawn);
        out.yj = std::move(yj);
        out.yj_degenerate = std::move(degenerate);
        return out;
    }
    out.success = false;
    return out;
}

// ---- recursive fortress builder ---------------------------------------------

namespace {

struct StageRecord {
    int ai = 0, bi = 0;  // child indices into the fixed root children
    Fortress f;          // sub-fortress on the (final) subtree of child ai
};

FortressBuildResult stage_failure(std::string stage, std::string detail, long long draws) {
    FortressBuildResult out;
    out.success = false;
    out.failure_stage = std::move(stage);
    out.failure_detail = std::move(detail);
    out.draws = draws;
    return out;
}

}  // namespace

FortressBuildResult build_fortress(const ReducedHypergraph& A, const FortressBuildInput& in) {
    if (in.r < 2) throw ArgumentError("r must be at least 2");
    if (in.m < 2) throw ArgumentError("m must be at least 2");
    if (in.retries < 1) throw ArgumentError("retries must be positive");
    const int k = in.x0.height();
    if (k > in.r)
        throw ArgumentError("host height " + std::to_string(k) + " exceeds r = " +
                            std::to_string(in.r));
    if (static_cast<int>(in.xj.size()) != in.r - k)
        throw ArgumentError("need r - k = " + std::to_string(in.r - k) +
                            " attached sets, got " + std::to_string(in.xj.size()));
    const Rational level = admissibility_level(in.r, in.eps);
    const std::vector<int> leaf_pos = resolve_leaf_positions(A, in.x0, in.x0_names);
    validate_attachments(A, leaf_pos, in.xj, in.cj, level, /*require_base_classes=*/false);

    const int Mp = in.x0.arity();
    long long draws = 0;

    if (Mp < in.m)
        return stage_failure("Part II arity",
                             "host arity " + std::to_string(Mp) + " is below m = " +
                                 std::to_string(in.m),
                             draws);

    // ---- height 1: trim and sample directly --------------------------------
    if (k == 1) {
        KMTree Z = in.x0.trim_to_arity(in.m);
        std::vector<int> kept(in.m);
        std::vector<std::string> kept_names(in.m);
        for (int i = 0; i < in.m; ++i) {
            const int orig = in.x0.leaf_position(Z.leaves()[i]);
            kept[i] = leaf_pos[orig];
            kept_names[i] = in.x0_names[orig];
        }
        for (int b = 1; b < in.m; ++b)
            for (int a = 0; a < b; ++a)
                if (A.class_size(kept[a], kept[b]) == 0)
                    return stage_failure("base selection",
                                         "class on " + describe_pair(A, kept[a], kept[b]) +
                                             " is empty",
                                         draws);
        BaseSelectionInput bin;
        bin.x0 = kept;
        bin.xj = in.xj;
        bin.cj.reserve(in.cj.size());
        for (std::size_t j = 0; j < in.cj.size(); ++j)
            bin.cj.push_back(in.cj[j].restricted(kept, in.xj[j]));
        bin.eps = in.eps;
        bin.retries = in.retries;
        bin.seed = mix_seed(in.seed, 0xbace5e1ull);
        BaseSelectionResult base = sample_base_selection(A, bin);
        draws += base.draws;
        if (!base.success)
            return stage_failure("base selection",
                                 "no draw met the survivor bound within " +
                                     std::to_string(in.retries) + " retries",
                                 draws);

        FortressBuildResult out;
        out.success = true;
        out.draws = draws;
        out.fortress.tree = Z;
        out.fortress.leaf_names = kept_names;
        for (int b = 1; b < in.m; ++b)
            for (int a = 0; a < b; ++a)
                out.fortress.vertices[FortressKey{a, b, Seq{}}] =
                    base.pair_vertex[pair_index(a, b)];
        out.yj = base.yj;
        FortressCheck check = verify_fortress(A, out.fortress);
        if (!check.pass) throw PreconditionError("height-1 fortress failed verification");
        return out;
    }

    // ---- Part II: fix the first m children ----------------------------------
    const std::vector<Label> root_labels = in.x0.successors(Seq{});
    std::vector<Label> child_label(in.m);
    std::vector<KMTree> sub;
    sub.reserve(in.m);
    // Index-position / name lookups per child, in original subtree leaf order.
    std::vector<std::vector<int>> sub_pos(in.m);
    std::vector<std::vector<std::string>> sub_names(in.m);
    for (int ai = 0; ai < in.m; ++ai) {
        child_label[ai] = root_labels[ai];
        sub.push_back(in.x0.subtree(Seq{child_label[ai]}));
        const auto& zs = sub[ai].leaves();
        sub_pos[ai].resize(zs.size());
        sub_names[ai].resize(zs.size());
        for (std::size_t zi = 0; zi < zs.size(); ++zi) {
            const int orig = in.x0.leaf_position(concat(Seq{child_label[ai]}, zs[zi]));
            sub_pos[ai][zi] = leaf_pos[orig];
            sub_names[ai][zi] = in.x0_names[orig];
        }
    }

    // ---- Part III: sample cross-child vertices ------------------------------
    // Stable enumeration of cross pairs for per-pair random streams.
    std::vector<std::pair<int, int>> cross;  // (position u, position v)
    for (int ai = 0; ai < in.m; ++ai)
        for (int aj = ai + 1; aj < in.m; ++aj)
            for (int u : sub_pos[ai])
                for (int v : sub_pos[aj]) cross.emplace_back(u, v);
    for (const auto& [u, v] : cross)
        if (A.class_size(u, v) == 0)
            return stage_failure("Part III admissibility",
                                 "class on " + describe_pair(A, u, v) + " is empty", draws);

    const double log2_half = std::log2(in.eps.to_double() / 2.0);
    const double eta0_exponent = static_cast<double>(in.m) * in.m *
                                 std::pow(static_cast<double>(Mp), 2.0 * (k - 1));
    const double log2_eta0 = eta0_exponent * log2_half;

    std::map<std::pair<int, int>, int> p0;  // key: (min, max) index positions
    std::vector<std::vector<int>> y0(in.xj.size());
    std::string fail_stage, fail_detail;
    bool sampled = false;
    for (int attempt = 0; attempt < in.retries && !sampled; ++attempt) {
        ++draws;
        p0.clear();
        for (std::size_t ci = 0; ci < cross.size(); ++ci) {
            const auto [u, v] = cross[ci];
            SplitMix64 g(mix_seed(in.seed, 0x0ca70ull, static_cast<uint64_t>(attempt),
                                  static_cast<uint64_t>(ci)));
            p0[{std::min(u, v), std::max(u, v)}] =
                static_cast<int>(g.below(static_cast<uint64_t>(A.class_size(u, v))));
        }

        // (i) every ordered child pair must give an admissible family.
        bool ok = true;
        for (int ai = 0; ai < in.m && ok; ++ai) {
            for (int aj = 0; aj < in.m && ok; ++aj) {
                if (ai == aj) continue;
                Selection S;
                S.xs = sub_pos[ai];
                S.ys = sub_pos[aj];
                S.vertex.resize(S.xs.size() * S.ys.size());
                for (std::size_t x = 0; x < S.xs.size(); ++x)
                    for (std::size_t y = 0; y < S.ys.size(); ++y)
                        S.vertex[x * S.ys.size() + y] =
                            p0.at({std::min(S.xs[x], S.ys[y]), std::max(S.xs[x], S.ys[y])});
                AdmissibleReport rep = check_admissible(A, S, level);
                if (!rep.pass) {
                    const AdmissibleViolation& v = rep.violations.front();
                    fail_stage = "Part III admissibility";
                    fail_detail = "children (" + std::to_string(ai + 1) + ", " +
                                  std::to_string(aj + 1) + "): sampled family not admissible at " +
                                  level.str() + "; pair " + describe_pair(A, v.x, v.xp) +
                                  " with " + A.index_name(v.y) + " has degree " +
                                  std::to_string(v.degree) + " of " +
                                  std::to_string(v.class_size);
                    ok = false;
                }
            }
        }
        if (!ok) continue;

        // (ii) attached members surviving against every cross pair.
        for (std::size_t j = 0; j < in.xj.size() && ok; ++j) {
            y0[j].clear();
            for (int y : in.xj[j]) {
                bool keep = true;
                for (const auto& [u, v] : cross) {
                    if (!A.has_edge(u, v, y, p0.at({std::min(u, v), std::max(u, v)}),
                                    in.cj[j].vertex_for(u, y), in.cj[j].vertex_for(v, y))) {
                        keep = false;
                        break;
                    }
                }
                if (keep) y0[j].push_back(y);
            }
            if (in.xj[j].empty()) continue;  // degenerate: nothing to bound
            const bool big_enough =
                !y0[j].empty() &&
                std::log2(static_cast<double>(y0[j].size())) >=
                    log2_eta0 + std::log2(static_cast<double>(in.xj[j].size()));
            if (!big_enough) {
                fail_stage = "Part III Y0 size";
                fail_detail = "attached set " + std::to_string(j + 1) + ": " +
                              std::to_string(y0[j].size()) + " of " +
                              std::to_string(in.xj[j].size()) +
                              " survivors, below the 2^" + std::to_string(log2_eta0) +
                              " share";
                ok = false;
            }
        }
        sampled = ok;
    }
    if (!sampled) return stage_failure(fail_stage, fail_detail, draws);

    // ---- Part IV: one recursion per ordered child pair -----------------------
    std::vector<KMTree> Z = sub;              // current subtrees, shrunk as we go
    std::vector<std::vector<int>> Y = y0;     // current attached survivors
    std::vector<StageRecord> stages;
    stages.reserve(static_cast<std::size_t>(in.m) * (in.m - 1));
    int h = 0;
    for (int ai = 0; ai < in.m; ++ai) {
        for (int bi = 0; bi < in.m; ++bi) {
            if (bi == ai) continue;
            ++h;
            // Child leaf lookups in the current (possibly shrunk) subtrees.
            auto positions_of = [&](int ci) {
                const auto& zs = Z[ci].leaves();
                std::vector<int> ps(zs.size());
                for (std::size_t zi = 0; zi < zs.size(); ++zi)
                    ps[zi] = sub_pos[ci][sub[ci].leaf_position(zs[zi])];
                return ps;
            };
            const std::vector<int> a_pos = positions_of(ai);
            const std::vector<int> b_pos = positions_of(bi);

            FortressBuildInput child;
            child.x0 = Z[ai];
            child.x0_names.resize(a_pos.size());
            for (std::size_t i = 0; i < a_pos.size(); ++i)
                child.x0_names[i] = A.index_name(a_pos[i]);
            child.xj.push_back(b_pos);
            Selection S0;
            S0.xs = a_pos;
            S0.ys = b_pos;
            S0.vertex.resize(a_pos.size() * b_pos.size());
            for (std::size_t x = 0; x < a_pos.size(); ++x)
                for (std::size_t y = 0; y < b_pos.size(); ++y)
                    S0.vertex[x * b_pos.size() + y] =
                        p0.at({std::min(a_pos[x], b_pos[y]), std::max(a_pos[x], b_pos[y])});
            child.cj.push_back(std::move(S0));
            for (std::size_t j = 0; j < in.xj.size(); ++j) {
                child.xj.push_back(Y[j]);
                child.cj.push_back(in.cj[j].restricted(a_pos, Y[j]));
            }
            child.r = in.r;
            child.m = in.m;
            child.eps = in.eps;
            child.retries = in.retries;
            child.seed = mix_seed(in.seed, 0x4ec50ull, static_cast<uint64_t>(h));

            FortressBuildResult cres = build_fortress(A, child);
            draws += cres.draws;
            if (!cres.success)
                return stage_failure("Part IV recursion",
                                     "stage " + std::to_string(h) + " (children " +
                                         std::to_string(ai + 1) + " -> " +
                                         std::to_string(bi + 1) + "): " + cres.failure_stage +
                                         ": " + cres.failure_detail,
                                     draws);

            Z[ai] = cres.fortress.tree;
            stages.push_back(StageRecord{ai, bi, std::move(cres.fortress)});

            // Re-extract the partner subtree from the survivors of this stage.
            const std::vector<int>& Wp = cres.yj[0];
            if (Wp.empty())
                return stage_failure("Part IV W extraction",
                                     "stage " + std::to_string(h) +
                                         ": no partner leaves survived",
                                     draws);
            std::vector<Seq> w_leaves;
            w_leaves.reserve(Wp.size());
            {
                std::map<int, Seq> back;
                const auto& zs = Z[bi].leaves();
                for (std::size_t zi = 0; zi < zs.size(); ++zi) back[b_pos[zi]] = zs[zi];
                for (int p : Wp) w_leaves.push_back(back.at(p));
            }
            const Rational eps_w(static_cast<long long>(Wp.size()), Z[bi].leaf_count());
            ExtractResult ex = extract_subsystem(Z[bi], w_leaves, eps_w, /*best_effort=*/true);
            if (ex.m < in.m)
                return stage_failure("Part IV W extraction",
                                     "stage " + std::to_string(h) + ": best uniform arity " +
                                         std::to_string(ex.m) + " is below m = " +
                                         std::to_string(in.m),
                                     draws);
            Z[bi] = ex.tree.trim_to_arity(in.m);

            for (std::size_t j = 0; j < in.xj.size(); ++j) Y[j] = cres.yj[1 + j];
        }
    }

    // ---- Part V: assemble -----------------------------------------------------
    std::vector<Seq> all_leaves;
    for (int ai = 0; ai < in.m; ++ai)
        for (const Seq& z : Z[ai].leaves()) all_leaves.push_back(concat(Seq{child_label[ai]}, z));
    FortressBuildResult out;
    out.fortress.tree = KMTree::from_leaves(all_leaves);
    const KMTree& Z0 = out.fortress.tree;
    const int n0 = static_cast<int>(Z0.leaf_count());
    out.fortress.leaf_names.resize(n0);
    std::vector<int> final_pos(n0);
    for (int i = 0; i < n0; ++i) {
        const int orig = in.x0.leaf_position(Z0.leaves()[i]);
        out.fortress.leaf_names[i] = in.x0_names[orig];
        final_pos[i] = leaf_pos[orig];
    }

    // Cross-child pairs keep their sampled vertices (empty deviation).
    for (int ai = 0; ai < in.m; ++ai) {
        for (int aj = ai + 1; aj < in.m; ++aj) {
            for (const Seq& z : Z[ai].leaves()) {
                for (const Seq& zp : Z[aj].leaves()) {
                    const Seq u = concat(Seq{child_label[ai]}, z);
                    const Seq v = concat(Seq{child_label[aj]}, zp);
                    const int pu = leaf_pos[in.x0.leaf_position(u)];
                    const int pv = leaf_pos[in.x0.leaf_position(v)];
                    int iu = Z0.leaf_position(u), iv = Z0.leaf_position(v);
                    if (iu > iv) std::swap(iu, iv);
                    out.fortress.vertices[FortressKey{iu, iv, Seq{}}] =
                        p0.at({std::min(pu, pv), std::max(pu, pv)});
                }
            }
        }
    }
    // Same-child pairs take each stage fortress, with the partner child label
    // prefixed onto every deviation.
    for (const StageRecord& st : stages) {
        if (!(st.f.tree == Z[st.ai]))
            throw PreconditionError("stage fortress drifted from its final subtree (internal)");
        for (const auto& [key, vert] : st.f.vertices) {
            const Seq u = concat(Seq{child_label[st.ai]}, st.f.tree.leaves()[key.a]);
            const Seq v = concat(Seq{child_label[st.ai]}, st.f.tree.leaves()[key.b]);
            const Seq d = concat(Seq{child_label[st.bi]}, key.d);
            out.fortress.vertices[FortressKey{Z0.leaf_position(u), Z0.leaf_position(v), d}] =
                vert;
        }
    }

    out.yj = Y;
    out.draws = draws;
    FortressCheck check = verify_fortress(A, out.fortress);
    if (!check.pass)
        throw PreconditionError("assembled fortress failed the closure check (internal)");

    // Every stored pair vertex must still close a triple with every surviving
    // attached member through the input selections.
    for (const auto& [key, vert] : out.fortress.vertices) {
        const int pu = final_pos[key.a], pv = final_pos[key.b];
        for (std::size_t j = 0; j < in.xj.size(); ++j) {
            for (int y : Y[j]) {
                if (!A.has_edge(pu, pv, y, vert, in.cj[j].vertex_for(pu, y),
                                in.cj[j].vertex_for(pv, y)))
                    throw PreconditionError("attached survivor lost an edge (internal)");
            }
        }
    }
    out.success = true;
    return out;
}

}  // namespace boxlab

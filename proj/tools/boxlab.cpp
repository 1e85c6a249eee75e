// boxlab: command-line front end for the density counters, palette
// constructions, colouring searches, tree systems and fortress machinery.
//
// Output contract: reports go to stdout as `key: value` lines (stable,
// diff-friendly); timing goes to stderr.  Exit codes: searches and checks
// report their verdict (0 found/pass, 1 none/fail, 2 unknown); 64 usage
// error, 65 malformed input, 70 internal error.

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "boxlab/audit.hpp"
#include "boxlab/clique.hpp"
#include "boxlab/colouring.hpp"
#include "boxlab/constants.hpp"
#include "boxlab/counting.hpp"
#include "boxlab/error.hpp"
#include "boxlab/fortress.hpp"
#include "boxlab/hypergraph.hpp"
#include "boxlab/io.hpp"
#include "boxlab/palette.hpp"
#include "boxlab/ramsey.hpp"
#include "boxlab/rational.hpp"
#include "boxlab/reduced.hpp"
#include "boxlab/report.hpp"
#include "boxlab/systems.hpp"

namespace {

using namespace boxlab;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const char* kUsage = R"(usage: boxlab <command> [options]

commands:
  palette min-codegree <palette>      exact minimum co-degree
  palette show <palette>              colours, patterns, minimum co-degree
  construct --n <n> --palette <p> [--seed <s>] [--out <file>]
            [--out-colouring <file>]
  audit --hypergraph <f> --colouring <f> --palette <p> [--eta <q>]
        [--families colour,random,product] [--seed <s>]
  ramsey --palette <p> --k <k> [--node-limit <n>] [--time-limit <sec>]
         [--out-witness <file>]
  clique --hypergraph <f> --k <k> [--node-limit <n>]
  systems q-set --tree <f> --node <seq>
  systems extract --tree <f> --chosen <f> --eps <q> [--best-effort]
          [--out <file>]
  systems validate --tree <f>
  reduced check-dense --reduced <f> --d <q> --delta <q>
  reduced clique --reduced <f> --t <t> [--node-limit <n>]
  reduced verify-fortress --reduced <f> --fortress <f>
  reduced build-fortress --reduced <f> --tree <f> --r <r> --m <m> --eps <q>
          [--leaf-names <f>] [--xj <f,...>] [--cj <f,...>] [--retries <n>]
          [--seed <s>] [--out <file>]
  reduced constants --r <r> --eps <q> --k <k> --m <m>
          [--max-bits <n>] [--max-stages <n>]
  constants ...                       alias for `reduced constants`
  reproduce eq-results [--include-slow | --skip-slow] [--node-limit <n>]
            [--time-limit <sec>]

global options:
  --seed <s>        randomness seed (default: BOXLAB_SEED, then 0)
  --threads <t>     worker threads for the parallel kernels
  --deterministic   serial searches, one thread, timing rows omitted

a <palette> argument is a standard name (cyclic3, two_colour_nonmono,
exactly_two_of_three, nonmono(L)) or a palette file; <seq> arguments are
comma-joined labels with `-` for the empty sequence.

exit codes: 0 found / pass, 1 none / fail, 2 unknown,
            64 usage error, 65 malformed input, 70 internal error
)";

// ---- argument handling -------------------------------------------------------

// Flags that take no value.
const std::set<std::string> kBoolFlags = {"deterministic", "best-effort", "skip-slow",
                                          "include-slow", "help"};

struct Args {
    std::vector<std::string> positional;
    std::map<std::string, std::string> named;
    std::set<std::string> present;

    bool flag(const std::string& name) const { return present.count(name) > 0; }
    bool has(const std::string& name) const { return named.count(name) > 0; }

    std::string require(const std::string& name) const {
        auto it = named.find(name);
        if (it == named.end()) throw UsageError("missing required option --" + name);
        return it->second;
    }

    std::string get(const std::string& name, const std::string& fallback) const {
        auto it = named.find(name);
        return it == named.end() ? fallback : it->second;
    }

    long long parse_int(const std::string& name, const std::string& text) const {
        try {
            std::size_t used = 0;
            long long v = std::stoll(text, &used);
            if (used != text.size()) throw std::invalid_argument("trailing characters");
            return v;
        } catch (const std::exception&) {
            throw UsageError("option --" + name + " expects an integer, got '" + text + "'");
        }
    }

    long long get_int(const std::string& name, long long fallback) const {
        auto it = named.find(name);
        return it == named.end() ? fallback : parse_int(name, it->second);
    }

    long long require_int(const std::string& name) const {
        return parse_int(name, require(name));
    }

    double get_double(const std::string& name, double fallback) const {
        auto it = named.find(name);
        if (it == named.end()) return fallback;
        const std::string& text = it->second;
        char* end = nullptr;
        double v = std::strtod(text.c_str(), &end);
        if (end == nullptr || *end != '\0' || text.empty())
            throw UsageError("option --" + name + " expects a number, got '" + text + "'");
        return v;
    }

    Rational parse_rational(const std::string& name, const std::string& text) const {
        try {
            return Rational::parse(text);
        } catch (const std::exception&) {
            throw UsageError("option --" + name + " expects a rational like 1/3, got '" + text +
                             "'");
        }
    }

    Rational get_rational(const std::string& name, const Rational& fallback) const {
        auto it = named.find(name);
        return it == named.end() ? fallback : parse_rational(name, it->second);
    }

    Rational require_rational(const std::string& name) const {
        return parse_rational(name, require(name));
    }

    std::uint64_t seed() const {
        auto it = named.find("seed");
        std::string text;
        if (it != named.end()) {
            text = it->second;
        } else if (const char* env = std::getenv("BOXLAB_SEED")) {
            text = env;
        } else {
            return 0;
        }
        try {
            std::size_t used = 0;
            unsigned long long v = std::stoull(text, &used);
            if (used != text.size()) throw std::invalid_argument("trailing characters");
            return v;
        } catch (const std::exception&) {
            throw UsageError("seed expects an unsigned integer, got '" + text + "'");
        }
    }
};

Args parse_args(int argc, char** argv) {
    Args out;
    for (int i = 1; i < argc; ++i) {
        std::string token = argv[i];
        if (token.rfind("--", 0) != 0) {
            out.positional.push_back(token);
            continue;
        }
        std::string name = token.substr(2);
        std::string value;
        bool has_value = false;
        if (auto eq = name.find('='); eq != std::string::npos) {
            value = name.substr(eq + 1);
            name = name.substr(0, eq);
            has_value = true;
        }
        if (name.empty()) throw UsageError("stray '--'");
        if (kBoolFlags.count(name)) {
            if (has_value) throw UsageError("option --" + name + " takes no value");
            out.present.insert(name);
            continue;
        }
        if (!has_value) {
            if (i + 1 >= argc) throw UsageError("option --" + name + " needs a value");
            value = argv[++i];
        }
        if (out.named.count(name)) throw UsageError("duplicate option --" + name);
        out.named[name] = value;
    }
    return out;
}

// ---- small helpers -----------------------------------------------------------

Palette resolve_palette(const std::string& arg) {
    try {
        return standard_palette(arg);
    } catch (const ArgumentError&) {
        // not a standard name; fall through to the file route
    }
    return load_palette(read_file(arg));
}

std::vector<std::string> split_csv(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : text) {
        if (ch == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

// Lines of whitespace-separated tokens, '#' comments and blank lines skipped.
std::vector<std::pair<int, std::vector<std::string>>> token_lines(const std::string& text) {
    std::vector<std::pair<int, std::vector<std::string>>> out;
    std::istringstream stream(text);
    std::string line;
    int line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::vector<std::string> tokens;
        std::string tok;
        while (ls >> tok) tokens.push_back(tok);
        if (!tokens.empty()) out.emplace_back(line_no, std::move(tokens));
    }
    return out;
}

// One comma-joined sequence per line.
std::vector<Seq> load_seq_lines(const std::string& text) {
    std::vector<Seq> out;
    for (const auto& [line_no, tokens] : token_lines(text)) {
        if (tokens.size() != 1)
            throw FormatError("expected one comma-joined sequence per line", line_no);
        try {
            out.push_back(seq_from_string(tokens[0]));
        } catch (const ArgumentError& e) {
            throw FormatError(e.what(), line_no);
        }
    }
    return out;
}

// Lines `<leaf-token> <index-name>`.
std::map<std::string, std::string> load_name_map(const std::string& text) {
    std::map<std::string, std::string> out;
    for (const auto& [line_no, tokens] : token_lines(text)) {
        if (tokens.size() != 2)
            throw FormatError("expected `<leaf> <name>` per line", line_no);
        if (!out.emplace(tokens[0], tokens[1]).second)
            throw FormatError("duplicate leaf '" + tokens[0] + "'", line_no);
    }
    return out;
}

std::string status_word(SearchStatus s) {
    switch (s) {
        case SearchStatus::found: return "found";
        case SearchStatus::none: return "none";
        default: return "unknown";
    }
}

int status_exit(SearchStatus s) {
    switch (s) {
        case SearchStatus::found: return 0;
        case SearchStatus::none: return 1;
        default: return 2;
    }
}

std::string double_str(double v) {
    std::ostringstream s;
    s << v;
    return s.str();
}

// Decimal for moderate integers, order-of-magnitude rendering beyond that.
std::string render_big(const BigInt& v) {
    if (v == 0) return "0";
    BigInt a = v < 0 ? BigInt(-v) : v;
    unsigned long long bits = boost::multiprecision::msb(a) + 1;
    if (bits <= 256) return v.str();
    // log2 approximation from the top 53 bits
    unsigned long long shift = bits - 53;
    double top = static_cast<double>(static_cast<std::uint64_t>(a >> shift));
    double log2v = std::log2(top) + static_cast<double>(shift);
    std::ostringstream s;
    s << (v < 0 ? "-" : "") << "~2^" << log2v << " (" << bits << " bits)";
    return s.str();
}

std::string render_log2(const Log2Value& v) {
    if (v.exact) return render_big(v.exact_log2);
    return double_str(v.approx);
}

std::string ratio_str(const std::optional<Rational>& r) {
    return r ? r->str() : "-";
}

// ---- commands ----------------------------------------------------------------

int cmd_palette(const Args& args, RunReport& report) {
    if (args.positional.size() != 3)
        throw UsageError("palette expects an action and a palette: "
                         "`boxlab palette min-codegree cyclic3`");
    const std::string& action = args.positional[1];
    Palette p = resolve_palette(args.positional[2]);
    if (action == "min-codegree") {
        // Bare value by contract: scripts consume this directly.
        std::cout << min_codegree(p).str() << "\n";
        return 0;
    }
    if (action == "show") {
        report.add("command", std::string("palette show"));
        report.add("palette", args.positional[2]);
        report.add("colours", p.colours());
        report.add("pattern_count", static_cast<long long>(p.patterns().size()));
        int i = 0;
        for (const auto& pat : p.patterns()) {
            std::ostringstream s;
            s << pat.a << " " << pat.b << " " << pat.c;
            report.add("pattern." + std::to_string(i++), s.str());
        }
        report.add("min_codegree", min_codegree(p).str());
        report.add("colour_automorphisms",
                   static_cast<long long>(palette_colour_automorphisms(p).size()));
        return 0;
    }
    throw UsageError("unknown palette action '" + action + "'");
}

int cmd_construct(const Args& args, RunReport& report) {
    long long n = args.require_int("n");
    if (n < 2 || n > 1200) throw UsageError("--n must be in [2, 1200]");
    Palette p = resolve_palette(args.require("palette"));
    std::uint64_t seed = args.seed();

    EdgeColouring phi = random_colouring(static_cast<int>(n), p.colours(), seed);
    Hypergraph3 H = build_hypergraph(phi, p);

    report.add("command", std::string("construct"));
    report.add("n", n);
    report.add("palette", args.require("palette"));
    report.add("colours", p.colours());
    report.add("seed", static_cast<long long>(seed));
    report.add("edges", H.edge_count());
    long long triples = n * (n - 1) * (n - 2) / 6;
    report.add("triples", triples);
    if (triples > 0) report.add("edge_density", Rational(H.edge_count(), triples).str());
    if (args.has("out")) {
        write_file(args.require("out"), save_hypergraph(H));
        report.add("out", args.require("out"));
    }
    if (args.has("out-colouring")) {
        write_file(args.require("out-colouring"), save_colouring(phi));
        report.add("out_colouring", args.require("out-colouring"));
    }
    return 0;
}

int cmd_audit(const Args& args, RunReport& report) {
    Hypergraph3 H = load_hypergraph(read_file(args.require("hypergraph")));
    EdgeColouring phi = load_colouring(read_file(args.require("colouring")));
    Palette p = resolve_palette(args.require("palette"));

    AuditSpec spec;
    spec.eta = args.get_rational("eta", spec.eta);
    spec.seed = args.seed();
    std::string families = args.get("families", "colour,random,product");
    spec.colour_classes = false;
    bool random_pairs = false, products = false;
    for (const std::string& f : split_csv(families)) {
        if (f == "colour") spec.colour_classes = true;
        else if (f == "random") random_pairs = true;
        else if (f == "product") products = true;
        else throw UsageError("unknown family '" + f + "' (expected colour, random, product)");
    }
    if (!random_pairs) {
        spec.random_densities.clear();
        spec.random_trials = 0;
    }
    if (!products) spec.product_trials = 0;

    AuditReport audit = audit_density(H, phi, p, spec);

    report.add("command", std::string("audit"));
    report.add("vertices", H.vertex_count());
    report.add("edges", H.edge_count());
    report.add("families", families);
    report.add("d", audit.d.str());
    report.add("eta", audit.eta.str());
    report.add("seed", static_cast<long long>(spec.seed));
    report.add("family_count", static_cast<long long>(audit.entries.size()));
    int i = 0;
    for (const AuditEntry& entry : audit.entries) {
        std::string key = "family." + std::to_string(i++);
        report.add(key + ".name", entry.family);
        report.add(key + ".ratio", ratio_str(entry.report.ratio));
        report.add(key + ".satisfied", entry.satisfied);
        report.add(key + ".slack", entry.slack.str());
    }
    report.add("min_ratio", ratio_str(audit.min_ratio));
    if (audit.min_ratio) report.add("min_ratio_approx", audit.min_ratio->to_double());
    report.add("worst_family", audit.worst_family.empty() ? "-" : audit.worst_family);
    report.add("all_satisfied", audit.all_satisfied);
    return audit.all_satisfied ? 0 : 1;
}

int cmd_ramsey(const Args& args, RunReport& report, bool deterministic) {
    Palette p = resolve_palette(args.require("palette"));
    long long k = args.require_int("k");
    if (k < 1 || k > 1000) throw UsageError("--k must be in [1, 1000]");

    ColouringSearchOptions opts;
    opts.budget.node_limit = args.get_int("node-limit", -1);
    opts.budget.time_limit_sec = args.get_double("time-limit", -1);
    opts.deterministic = deterministic;

    ColouringSearchResult res = search_palette_colouring(p, static_cast<int>(k), opts);

    report.add("command", std::string("ramsey"));
    report.add("palette", args.require("palette"));
    report.add("k", k);
    std::string verdict = res.status == SearchStatus::found      ? "feasible"
                          : res.status == SearchStatus::none     ? "infeasible"
                                                                 : "unknown";
    report.add("verdict", verdict);
    report.add("nodes", res.nodes);
    if (!deterministic) report.add("search_seconds", res.seconds);
    if (res.witness) {
        report.add("witness_respects_palette", colouring_respects_palette(*res.witness, p));
        if (args.has("out-witness")) {
            write_file(args.require("out-witness"), save_colouring(*res.witness));
            report.add("out_witness", args.require("out-witness"));
        }
    }
    return status_exit(res.status);
}

int cmd_clique(const Args& args, RunReport& report, bool deterministic) {
    Hypergraph3 H = load_hypergraph(read_file(args.require("hypergraph")));
    long long k = args.require_int("k");
    if (k < 3 || k > 1000) throw UsageError("--k must be in [3, 1000]");

    CliqueOptions opts;
    opts.node_limit = args.get_int("node-limit", -1);
    opts.deterministic = deterministic;

    CliqueResult res = find_clique(H, static_cast<int>(k), opts);

    report.add("command", std::string("clique"));
    report.add("vertices", H.vertex_count());
    report.add("edges", H.edge_count());
    report.add("k", k);
    report.add("verdict", status_word(res.status));
    report.add("nodes", res.nodes);
    if (res.status == SearchStatus::found) {
        std::ostringstream s;
        for (std::size_t i = 0; i < res.witness.size(); ++i)
            s << (i ? " " : "") << res.witness[i];
        report.add("witness", s.str());
    }
    return status_exit(res.status);
}

int cmd_systems(const Args& args, RunReport& report) {
    if (args.positional.size() != 2)
        throw UsageError("systems expects an action: q-set, extract or validate");
    const std::string& action = args.positional[1];
    KMTree tree = load_tree(read_file(args.require("tree")));

    if (action == "validate") {
        report.add("command", std::string("systems validate"));
        report.add("height", tree.height());
        report.add("arity", tree.arity());
        report.add("leaves", tree.leaf_count());
        report.add("valid", true);
        return 0;
    }

    if (action == "q-set") {
        Seq node = seq_from_string(args.require("node"));
        std::vector<Seq> devs = q_set(tree, node);
        report.add("command", std::string("systems q-set"));
        report.add("height", tree.height());
        report.add("arity", tree.arity());
        report.add("node", seq_to_string(node));
        report.add("count", static_cast<long long>(devs.size()));
        int i = 0;
        for (const Seq& d : devs) report.add("deviation." + std::to_string(i++), seq_to_string(d));
        return 0;
    }

    if (action == "extract") {
        std::vector<Seq> chosen = load_seq_lines(read_file(args.require("chosen")));
        Rational eps = args.require_rational("eps");
        if (!(Rational(0) < eps) || Rational(1) < eps)
            throw UsageError("--eps must lie in (0, 1]");
        report.add("command", std::string("systems extract"));
        report.add("height", tree.height());
        report.add("arity", tree.arity());
        report.add("chosen", static_cast<long long>(chosen.size()));
        report.add("eps", eps.str());
        report.add("best_effort", args.flag("best-effort"));
        // The extraction contract needs |chosen| >= eps * (leaf count); report
        // a clean failure instead of tripping the library precondition.
        __int128 lhs = static_cast<__int128>(chosen.size()) * eps.den;
        __int128 rhs = static_cast<__int128>(eps.num) * tree.leaf_count();
        if (lhs < rhs) {
            report.add("extractable", false);
            report.add("reason", std::string("chosen set smaller than eps * leaf count"));
            return 1;
        }
        ExtractResult ex = extract_subsystem(tree, chosen, eps, args.flag("best-effort"));
        report.add("extractable", true);
        report.add("m", ex.m);
        report.add("extracted_leaves", ex.tree.leaf_count());
        int i = 0;
        for (const Seq& leaf : ex.tree.leaves())
            report.add("leaf." + std::to_string(i++), seq_to_string(leaf));
        if (args.has("out")) {
            write_file(args.require("out"), save_tree(ex.tree));
            report.add("out", args.require("out"));
        }
        return 0;
    }

    throw UsageError("unknown systems action '" + action + "'");
}

int cmd_reduced_check_dense(const Args& args, RunReport& report) {
    ReducedHypergraph A = load_reduced(read_file(args.require("reduced")));
    Rational d = args.require_rational("d");
    Rational delta = args.require_rational("delta");

    BoxDenseReport res = check_box_dense(A, d, delta);

    report.add("command", std::string("reduced check-dense"));
    report.add("indices", A.index_count());
    report.add("edges", A.edge_count());
    report.add("d", d.str());
    report.add("delta", delta.str());
    report.add("vacuous", res.vacuous);
    report.add("orientations_checked", res.orientations_checked);
    report.add("violations", static_cast<long long>(res.violations.size()));
    int shown = 0;
    for (const BoxDenseViolation& v : res.violations) {
        if (shown >= 20) {
            report.add("violations_omitted",
                       static_cast<long long>(res.violations.size()) - shown);
            break;
        }
        std::ostringstream s;
        s << "apex " << A.index_name(v.roles[0]) << " left " << A.index_name(v.roles[1])
          << " right " << A.index_name(v.roles[2]) << " bad_pairs " << v.bad_pairs << " of "
          << v.pair_total;
        report.add("violation." + std::to_string(shown++), s.str());
    }
    report.add("dense", res.dense);
    return res.dense ? 0 : 1;
}

int cmd_reduced_clique(const Args& args, RunReport& report) {
    ReducedHypergraph A = load_reduced(read_file(args.require("reduced")));
    long long t = args.require_int("t");
    if (t < 3 || t > 1000) throw UsageError("--t must be in [3, 1000]");

    ReducedCliqueOptions opts;
    opts.node_limit = args.get_int("node-limit", -1);

    ReducedCliqueResult res = find_reduced_clique(A, static_cast<int>(t), opts);

    report.add("command", std::string("reduced clique"));
    report.add("indices", A.index_count());
    report.add("t", t);
    report.add("verdict", status_word(res.status));
    report.add("nodes", res.nodes);
    if (res.status == SearchStatus::found) {
        const ReducedCliqueWitness& w = res.witness;
        std::ostringstream names;
        for (std::size_t i = 0; i < w.members.size(); ++i)
            names << (i ? " " : "") << A.index_name(w.members[i]);
        report.add("members", names.str());
        for (std::size_t b = 1; b < w.members.size(); ++b)
            for (std::size_t a = 0; a < b; ++a) {
                std::string key = "pair." + std::to_string(a) + "." + std::to_string(b);
                report.add(key, w.pair_vertex[b * (b - 1) / 2 + a]);
            }
    }
    return status_exit(res.status);
}

int cmd_reduced_verify_fortress(const Args& args, RunReport& report) {
    ReducedHypergraph A = load_reduced(read_file(args.require("reduced")));
    Fortress F = load_fortress(read_file(args.require("fortress")));

    FortressCheck res = verify_fortress(A, F);

    report.add("command", std::string("reduced verify-fortress"));
    report.add("height", F.tree.height());
    report.add("arity", F.tree.arity());
    report.add("leaves", F.tree.leaf_count());
    report.add("vertices", static_cast<long long>(F.vertices.size()));
    report.add("vacuous", res.vacuous);
    report.add("checks", res.checks);
    report.add("violations", static_cast<long long>(res.violations.size()));
    int shown = 0;
    for (const FortressViolation& v : res.violations) {
        if (shown >= 20) {
            report.add("violations_omitted",
                       static_cast<long long>(res.violations.size()) - shown);
            break;
        }
        std::ostringstream s;
        s << "a " << seq_to_string(F.tree.leaves()[v.a]) << " b "
          << seq_to_string(F.tree.leaves()[v.b]) << " c " << seq_to_string(F.tree.leaves()[v.c])
          << " d " << seq_to_string(v.d);
        report.add("violation." + std::to_string(shown++), s.str());
    }
    report.add("pass", res.pass);
    return res.pass ? 0 : 1;
}

int cmd_reduced_build_fortress(const Args& args, RunReport& report) {
    ReducedHypergraph A = load_reduced(read_file(args.require("reduced")));

    FortressBuildInput in;
    in.x0 = load_tree(read_file(args.require("tree")));
    in.r = static_cast<int>(args.get_int("r", 2));
    in.m = static_cast<int>(args.get_int("m", 2));
    if (in.r < 2 || in.r > 64) throw UsageError("--r must be in [2, 64]");
    if (in.m < 2 || in.m > 64) throw UsageError("--m must be in [2, 64]");
    in.eps = args.require_rational("eps");
    in.seed = args.seed();
    in.retries = static_cast<int>(args.get_int("retries", 64));
    if (in.retries < 1) throw UsageError("--retries must be positive");

    in.x0_names.reserve(in.x0.leaves().size());
    for (const Seq& leaf : in.x0.leaves()) in.x0_names.push_back(seq_to_string(leaf));
    if (args.has("leaf-names")) {
        auto map = load_name_map(read_file(args.require("leaf-names")));
        for (std::size_t i = 0; i < in.x0_names.size(); ++i)
            if (auto it = map.find(in.x0_names[i]); it != map.end()) in.x0_names[i] = it->second;
    }
    if (args.has("xj"))
        for (const std::string& f : split_csv(args.require("xj")))
            in.xj.push_back(load_vertex_subset(read_file(f)));
    if (args.has("cj"))
        for (const std::string& f : split_csv(args.require("cj")))
            in.cj.push_back(load_selection(A, read_file(f)));

    FortressBuildResult res = build_fortress(A, in);

    report.add("command", std::string("reduced build-fortress"));
    report.add("r", in.r);
    report.add("k", in.x0.height());
    report.add("m", in.m);
    report.add("eps", in.eps.str());
    report.add("seed", static_cast<long long>(in.seed));
    report.add("retries", in.retries);
    report.add("draws", res.draws);
    report.add("success", res.success);
    if (!res.success) {
        report.add("failure_stage", res.failure_stage);
        report.add("failure_detail", res.failure_detail);
        return 1;
    }
    report.add("height", res.fortress.tree.height());
    report.add("arity", res.fortress.tree.arity());
    report.add("leaves", res.fortress.tree.leaf_count());
    report.add("vertices", static_cast<long long>(res.fortress.vertices.size()));
    for (std::size_t j = 0; j < res.yj.size(); ++j) {
        std::ostringstream s;
        for (std::size_t i = 0; i < res.yj[j].size(); ++i) s << (i ? " " : "") << res.yj[j][i];
        std::string key = "survivors." + std::to_string(j);
        report.add(key + ".size", static_cast<long long>(res.yj[j].size()));
        report.add(key + ".members", res.yj[j].empty() ? "-" : s.str());
    }
    if (args.has("out")) {
        write_file(args.require("out"), save_fortress(res.fortress));
        report.add("out", args.require("out"));
    }
    return 0;
}

int cmd_constants(const Args& args, RunReport& report) {
    long long r = args.require_int("r");
    long long k = args.require_int("k");
    long long m = args.require_int("m");
    Rational eps = args.require_rational("eps");
    if (r < 2 || r > 1000) throw UsageError("--r must be in [2, 1000]");
    if (k < 1 || k > r) throw UsageError("--k must be in [1, r]");
    if (m < 2 || m > 100000) throw UsageError("--m must be in [2, 100000]");

    ConstantsOptions opts;
    opts.max_bits = args.get_int("max-bits", opts.max_bits);
    opts.max_stages = args.get_int("max-stages", opts.max_stages);

    ConstantsTable table =
        compute_constants(static_cast<int>(r), eps, static_cast<int>(k), static_cast<int>(m), opts);

    report.add("command", std::string("constants"));
    report.add("r", r);
    report.add("k", k);
    report.add("m", m);
    report.add("eps", eps.str());
    report.add("astronomical", table.astronomical);
    if (!table.note.empty()) report.add("note", table.note);
    for (const auto& [h, value] : table.M_h)
        report.add("M.stage." + std::to_string(h), render_big(value));
    if (!table.astronomical) {
        report.add("M", render_big(table.M));
        if (k >= 2) {
            report.add("eta0.log2", render_log2(table.eta0));
            report.add("eta0.log2_exact", table.eta0.exact);
        }
        for (const auto& [h, value] : table.eta_h)
            report.add("eta.stage." + std::to_string(h) + ".log2", render_log2(value));
        report.add("eta.log2", render_log2(table.eta));
        report.add("eta.log2_exact", table.eta.exact);
        report.add("delta.log2",
                   table.delta.exact ? render_big(table.delta.exact_log2)
                                     : double_str(table.delta.approx));
    }
    return 0;
}

int cmd_reduced(const Args& args, RunReport& report) {
    if (args.positional.size() < 2)
        throw UsageError("reduced expects an action: check-dense, clique, verify-fortress, "
                         "build-fortress or constants");
    const std::string& action = args.positional[1];
    if (action == "check-dense") return cmd_reduced_check_dense(args, report);
    if (action == "clique") return cmd_reduced_clique(args, report);
    if (action == "verify-fortress") return cmd_reduced_verify_fortress(args, report);
    if (action == "build-fortress") return cmd_reduced_build_fortress(args, report);
    if (action == "constants") return cmd_constants(args, report);
    throw UsageError("unknown reduced action '" + action + "'");
}

int cmd_reproduce(const Args& args, RunReport& report, bool deterministic) {
    if (args.positional.size() != 2 || args.positional[1] != "eq-results")
        throw UsageError("reproduce expects the table name `eq-results`");
    if (args.flag("include-slow") && args.flag("skip-slow"))
        throw UsageError("--include-slow and --skip-slow are mutually exclusive");
    bool include_slow = args.flag("include-slow");

    ColouringSearchOptions opts;
    opts.budget.node_limit = args.get_int("node-limit", -1);
    opts.budget.time_limit_sec = args.get_double("time-limit", -1);
    opts.deterministic = deterministic;

    struct Row {
        const char* target;
        const char* palette;
        int k;
        bool slow;
    };
    const Row rows[] = {
        {"K5", "cyclic3", 5, false},
        {"K6", "two_colour_nonmono", 6, false},
        {"K11", "exactly_two_of_three", 11, true},
    };

    report.add("command", std::string("reproduce eq-results"));
    bool all_certified = true;
    int skipped = 0;
    for (std::size_t i = 0; i < std::size(rows); ++i) {
        const Row& row = rows[i];
        std::string key = "row." + std::to_string(i);
        Palette p = standard_palette(row.palette);
        Rational d = min_codegree(p);
        report.add(key + ".target", std::string(row.target));
        report.add(key + ".palette", std::string(row.palette));
        report.add(key + ".min_codegree", d.str());
        report.add(key + ".bound", "turan_density(" + std::string(row.target) +
                                       ") >= " + d.str());
        if (row.slow && !include_slow) {
            report.add(key + ".search", std::string("skipped (rerun with --include-slow)"));
            report.add(key + ".certified", false);
            all_certified = false;
            ++skipped;
            continue;
        }
        LowerBoundReport bound = lower_bound_report(p, row.k, opts);
        std::string verdict = bound.search == SearchStatus::found      ? "feasible"
                              : bound.search == SearchStatus::none     ? "infeasible"
                                                                       : "unknown";
        report.add(key + ".search", verdict);
        report.add(key + ".nodes", bound.nodes);
        report.add(key + ".certified", bound.bound_established);
        all_certified = all_certified && bound.bound_established;
    }
    report.add("rows_skipped", skipped);
    report.add("all_certified", all_certified);
    return all_certified ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    using Clock = std::chrono::steady_clock;
    auto start = Clock::now();
    RunReport report;
    int code = 0;
    try {
        Args args = parse_args(argc, argv);
        if (args.positional.empty()) {
            if (args.flag("help")) {
                std::cout << kUsage;
                return 0;
            }
            std::cerr << kUsage;
            return 64;
        }
        const std::string& command = args.positional[0];
        if (command == "help" || args.flag("help")) {
            std::cout << kUsage;
            return 0;
        }

        bool deterministic = args.flag("deterministic");
        long long threads = args.get_int("threads", 0);
        if (threads < 0) throw UsageError("--threads must be positive");
#ifdef _OPENMP
        if (deterministic)
            omp_set_num_threads(1);
        else if (threads > 0)
            omp_set_num_threads(static_cast<int>(threads));
#else
        (void)threads;
#endif

        if (command == "palette") code = cmd_palette(args, report);
        else if (command == "construct") code = cmd_construct(args, report);
        else if (command == "audit") code = cmd_audit(args, report);
        else if (command == "ramsey") code = cmd_ramsey(args, report, deterministic);
        else if (command == "clique") code = cmd_clique(args, report, deterministic);
        else if (command == "systems") code = cmd_systems(args, report);
        else if (command == "reduced") code = cmd_reduced(args, report);
        else if (command == "constants") code = cmd_constants(args, report);
        else if (command == "reproduce") code = cmd_reproduce(args, report, deterministic);
        else throw UsageError("unknown command '" + command + "'");

        double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
        report.print(std::cout);
        std::fprintf(stderr, "# elapsed_seconds: %.3f\n", elapsed);
        return code;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        std::cerr << "run `boxlab help` for the command list\n";
        return 64;
    } catch (const FormatError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 65;
    } catch (const ArgumentError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 65;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 70;
    }
}

#include "boxlab/io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <string_view>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "boxlab/error.hpp"

namespace boxlab {

namespace {

// Iterates the lines of a text buffer, stripping '#' comments and skipping
// blank lines, and keeps the 1-based number of the line last returned.
class LineReader {
public:
    explicit LineReader(const std::string& text) : text_(text) {}

    bool next(std::vector<std::string>& tokens) {
        tokens.clear();
        while (pos_ < text_.size()) {
            std::size_t end = text_.find('\n', pos_);
            if (end == std::string::npos) end = text_.size();
            std::string_view line(text_.data() + pos_, end - pos_);
            pos_ = end + 1;
            ++line_;
            if (std::size_t hash = line.find('#'); hash != std::string_view::npos)
                line = line.substr(0, hash);
            std::size_t i = 0;
            while (i < line.size()) {
                while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
                std::size_t start = i;
                while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
                if (i > start) tokens.emplace_back(line.substr(start, i - start));
            }
            if (!tokens.empty()) return true;
        }
        return false;
    }

    int line() const { return line_; }

private:
    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 0;
};

long long parse_int(const std::string& tok, int line) {
    long long value = 0;
    const char* begin = tok.data();
    const char* end = begin + tok.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end)
        throw FormatError("expected an integer, got '" + tok + "'", line);
    return value;
}

int parse_int32(const std::string& tok, int line) {
    long long v = parse_int(tok, line);
    if (v < -2000000000LL || v > 2000000000LL)
        throw FormatError("integer out of range: '" + tok + "'", line);
    return static_cast<int>(v);
}

void expect_tokens(const std::vector<std::string>& tokens, std::size_t n, int line,
                   const std::string& what) {
    if (tokens.size() != n)
        throw FormatError("expected " + what + " (" + std::to_string(n) + " tokens), got " +
                              std::to_string(tokens.size()),
                          line);
}

[[noreturn]] void rethrow_as_format(const std::exception& e, int line) {
    throw FormatError(e.what(), line);
}

}  // namespace

// ---- hypergraphs -------------------------------------------------------------

Hypergraph3 load_hypergraph(const std::string& text) {
    LineReader in(text);
    std::vector<std::string> tok;
    if (!in.next(tok)) throw FormatError("empty input, expected 'vertices <n>'");
    expect_tokens(tok, 2, in.line(), "'vertices <n>'");
    if (tok[0] != "vertices")
        throw FormatError("expected 'vertices', got '" + tok[0] + "'", in.line());
    const int n = parse_int32(tok[1], in.line());
    if (n < 0 || n > 1200)
        throw FormatError("vertex count out of range [0, 1200]: " + tok[1], in.line());
    std::vector<std::array<int, 3>> edges;
    while (in.next(tok)) {
        expect_tokens(tok, 3, in.line(), "an edge 'x y z'");
        const int x = parse_int32(tok[0], in.line());
        const int y = parse_int32(tok[1], in.line());
        const int z = parse_int32(tok[2], in.line());
        if (!(0 <= x && x < y && y < z && z < n))
            throw FormatError("edge must satisfy 0 <= x < y < z < n", in.line());
        edges.push_back({x, y, z});
    }
    return Hypergraph3::from_edges(n, std::move(edges));
}

std::string save_hypergraph(const Hypergraph3& H) {
    std::ostringstream out;
    out << "vertices " << H.vertex_count() << "\n";
    for (const auto& e : H.edges()) out << e[0] << " " << e[1] << " " << e[2] << "\n";
    return out.str();
}

PairSet load_pair_set(const std::string& text) {
    LineReader in(text);
    std::vector<std::string> tok;
    if (!in.next(tok)) throw FormatError("empty input, expected 'vertices <n>'");
    expect_tokens(tok, 2, in.line(), "'vertices <n>'");
    if (tok[0] != "vertices")
        throw FormatError("expected 'vertices', got '" + tok[0] + "'", in.line());
    const int n = parse_int32(tok[1], in.line());
    if (n < 0 || n > 20000)
        throw FormatError("vertex count out of range [0, 20000]: " + tok[1], in.line());
    PairSet P(n);
    while (in.next(tok)) {
        expect_tokens(tok, 2, in.line(), "a pair 'x y'");
        const int x = parse_int32(tok[0], in.line());
        const int y = parse_int32(tok[1], in.line());
        if (x < 0 || x >= n || y < 0 || y >= n || x == y)
            throw FormatError("pair must have two distinct vertices in range", in.line());
        P.add(x, y);
    }
    return P;
}

std::string save_pair_set(const PairSet& P) {
    std::ostringstream out;
    out << "vertices " << P.vertex_count() << "\n";
    for (int x = 0; x < P.vertex_count(); ++x)
        for (int y = 0; y < P.vertex_count(); ++y)
            if (x != y && P.contains(x, y)) out << x << " " << y << "\n";
    return out.str();
}

std::vector<int> load_vertex_subset(const std::string& text) {
    LineReader in(text);
    std::vector<std::string> tok;
    std::vector<int> xs;
    if (!in.next(tok)) return xs;
    for (const auto& t : tok) {
        const int v = parse_int32(t, in.line());
        if (v < 0) throw FormatError("vertex ids must be non-negative", in.line());
        xs.push_back(v);
    }
    if (in.next(tok)) throw FormatError("vertex subsets are a single line", in.line());
    return xs;
}

std::string save_vertex_subset(const std::vector<int>& xs) {
    std::ostringstream out;
    for (std::size_t i = 0; i < xs.size(); ++i) out << (i ? " " : "") << xs[i];
    out << "\n";
    return out.str();
}

// ---- palettes and colourings ---------------------------------------------------

Palette load_palette(const std::string& text) {
    LineReader in(text);
    std::vector<std::string> tok;
    if (!in.next(tok)) throw FormatError("empty input, expected 'colors <l>'");
    expect_tokens(tok, 2, in.line(), "'colors <l>'");
    if (tok[0] != "colors")
        throw FormatError("expected 'colors', got '" + tok[0] + "'", in.line());
    const int l = parse_int32(tok[1], in.line());
    if (l < 1 || l > 32)
        throw FormatError("colour count out of range [1, 32]: " + tok[1], in.line());
    std::vector<Pattern> pats;
    while (in.next(tok)) {
        expect_tokens(tok, 3, in.line(), "a pattern 'a b c'");
        const int a = parse_int32(tok[0], in.line());
        const int b = parse_int32(tok[1], in.line());
        const int c = parse_int32(tok[2], in.line());
        if (!(1 <= a && a <= b && b <= c && c <= l))
            throw FormatError("pattern must satisfy 1 <= a <= b <= c <= colours", in.line());
        pats.emplace_back(a, b, c);
    }
    try {
        return Palette(l, std::move(pats));
    } catch (const ArgumentError& e) {
        rethrow_as_format(e, in.line());
    }
}

std::string save_palette(const Palette& p) {
    std::ostringstream out;
    out << "colors " << p.colours() << "\n";
    for (const Pattern& q : p.patterns()) out << q.a << " " << q.b << " " << q.c << "\n";
    return out.str();
}

EdgeColouring load_colouring(const std::string& text) {
    LineReader in(text);
    std::vector<std::string> tok;
    if (!in.next(tok)) throw FormatError("empty input, expected 'vertices <n> colors <l>'");
    expect_tokens(tok, 4, in.line(), "'vertices <n> colors <l>'");
    if (tok[0] != "vertices" || tok[2] != "colors")
        throw FormatError("expected 'vertices <n> colors <l>'", in.line());
    const int n = parse_int32(tok[1], in.line());
    const int l = parse_int32(tok[3], in.line());
    if (n < 2 || n > 5000)
        throw FormatError("vertex count out of range [2, 5000]: " + tok[1], in.line());
    if (l < 1 || l > 200)
        throw FormatError("colour count out of range [1, 200]: " + tok[3], in.line());
    EdgeColouring phi(n, l);
    long long coloured = 0;
    while (in.next(tok)) {
        expect_tokens(tok, 3, in.line(), "a coloured pair 'x y c'");
        const int x = parse_int32(tok[0], in.line());
        const int y = parse_int32(tok[1], in.line());
        const int c = parse_int32(tok[2], in.line());
        if (!(0 <= x && x < y && y < n))
            throw FormatError("pair must satisfy 0 <= x < y < n", in.line());
        if (c < 1 || c > l) throw FormatError("colour out of range", in.line());
        if (phi.colour(x, y) != 0) throw FormatError("pair coloured twice", in.line());
        phi.set_colour(x, y, c);
        ++coloured;
    }
    if (coloured != static_cast<long long>(n) * (n - 1) / 2)
        throw FormatError("incomplete colouring: " + std::to_string(coloured) + " of " +
                          std::to_string(static_cast<long long>(n) * (n - 1) / 2) +
                          " pairs coloured");
    return phi;
}

std::string save_colouring(const EdgeColouring& phi) {
    std::ostringstream out;
    out << "vertices " << phi.vertex_count() << " colors " << phi.colour_count() << "\n";
    for (int x = 0; x < phi.vertex_count(); ++x)
        for (int y = x + 1; y < phi.vertex_count(); ++y)
            if (phi.colour(x, y) != 0) out << x << " " << y << " " << phi.colour(x, y) << "\n";
    return out.str();
}

// ---- trees ---------------------------------------------------------------------

namespace {

// Reads `height <k> arity <M>` plus exactly M^k leaf lines.
std::vector<Seq> read_tree_leaves(LineReader& in, int& k_out, int& M_out) {
    std::vector<std::string> tok;
    if (!in.next(tok)) throw FormatError("empty input, expected 'height <k> arity <M>'");
    expect_tokens(tok, 4, in.line(), "'height <k> arity <M>'");
    if (tok[0] != "height" || tok[2] != "arity")
        throw FormatError("expected 'height <k> arity <M>'", in.line());
    const int k = parse_int32(tok[1], in.line());
    const int M = parse_int32(tok[3], in.line());
    if (k < 1 || k > 64) throw FormatError("height out of range [1, 64]", in.line());
    if (M < 1) throw FormatError("arity must be positive", in.line());
    long long leaves = 1;
    for (int i = 0; i < k; ++i) {
        leaves *= M;
        if (leaves > (1LL << 20))
            throw FormatError("leaf count M^k exceeds the size guard 2^20", in.line());
    }
    std::vector<Seq> ls;
    ls.reserve(static_cast<std::size_t>(leaves));
    for (long long i = 0; i < leaves; ++i) {
        if (!in.next(tok))
            throw FormatError("expected " + std::to_string(leaves) + " leaf lines, got " +
                              std::to_string(i));
        expect_tokens(tok, static_cast<std::size_t>(k), in.line(), "a leaf of k labels");
        ls.emplace_back(tok.begin(), tok.end());
    }
    k_out = k;
    M_out = M;
    return ls;
}

}  // namespace

KMTree load_tree(const std::string& text) {
    LineReader in(text);
    int k = 0, M = 0;
    std::vector<Seq> leaves = read_tree_leaves(in, k, M);
    std::vector<std::string> tok;
    if (in.next(tok)) throw FormatError("unexpected content after the leaf lines", in.line());
    try {
        KMTree t = KMTree::from_leaves(std::move(leaves));
        if (t.height() != k || t.arity() != M)
            throw FormatError("leaves describe a [" + std::to_string(t.height()) + "," +
                              std::to_string(t.arity()) + "]-tree, not the declared [" +
                              std::to_string(k) + "," + std::to_string(M) + "]");
        return t;
    } catch (const ArgumentError& e) {
        rethrow_as_format(e, in.line());
    }
}

std::string save_tree(const KMTree& tree) {
    std::ostringstream out;
    out << "height " << tree.height() << " arity " << tree.arity() << "\n";
    for (const Seq& leaf : tree.leaves()) {
        for (std::size_t i = 0; i < leaf.size(); ++i) out << (i ? " " : "") << leaf[i];
        out << "\n";
    }
    return out.str();
}

// ---- reduced hypergraphs --------------------------------------------------------

ReducedHypergraph load_reduced(const std::string& text) {
    LineReader in(text);
    std::vector<std::string> tok;
    if (!in.next(tok)) throw FormatError("empty input, expected 'indices <i1> <i2> ...'");
    if (tok[0] != "indices" || tok.size() < 3)
        throw FormatError("expected 'indices' with at least two names", in.line());
    std::vector<std::string> names(tok.begin() + 1, tok.end());
    try {
        ReducedHypergraph A(names);
        while (in.next(tok)) {
            if (tok[0] == "class") {
                expect_tokens(tok, 4, in.line(), "'class <i> <j> <size>'");
                const int i = A.position(tok[1]);
                const int j = A.position(tok[2]);
                const int size = parse_int32(tok[3], in.line());
                A.set_class_size(i, j, size);
            } else if (tok[0] == "edge") {
                expect_tokens(tok, 7, in.line(), "'edge <i> <j> <k> <p> <q> <s>'");
                const int i = A.position(tok[1]);
                const int j = A.position(tok[2]);
                const int k = A.position(tok[3]);
                if (!(i < j && j < k))
                    throw FormatError("edge indices must be in the declared order i < j < k",
                                      in.line());
                A.add_edge(i, j, k, parse_int32(tok[4], in.line()),
                           parse_int32(tok[5], in.line()), parse_int32(tok[6], in.line()));
            } else {
                throw FormatError("expected 'class' or 'edge', got '" + tok[0] + "'", in.line());
            }
        }
        return A;
    } catch (const ArgumentError& e) {
        rethrow_as_format(e, in.line());
    }
}

std::string save_reduced(const ReducedHypergraph& A) {
    std::ostringstream out;
    out << "indices";
    for (const auto& name : A.indices()) out << " " << name;
    out << "\n";
    const int n = A.index_count();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (A.class_size(i, j) > 0)
                out << "class " << A.index_name(i) << " " << A.index_name(j) << " "
                    << A.class_size(i, j) << "\n";
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k)
                for (const auto& e : A.triple_edges(i, j, k))
                    out << "edge " << A.index_name(i) << " " << A.index_name(j) << " "
                        << A.index_name(k) << " " << e[0] << " " << e[1] << " " << e[2] << "\n";
    return out.str();
}

// ---- fortresses ------------------------------------------------------------------

Fortress load_fortress(const std::string& text) {
    LineReader in(text);
    int k = 0, M = 0;
    std::vector<Seq> leaves = read_tree_leaves(in, k, M);
    Fortress F;
    try {
        F.tree = KMTree::from_leaves(std::move(leaves));
    } catch (const ArgumentError& e) {
        rethrow_as_format(e, in.line());
    }
    if (F.tree.height() != k || F.tree.arity() != M)
        throw FormatError("leaves do not match the declared height/arity", in.line());
    const int n = static_cast<int>(F.tree.leaf_count());
    F.leaf_names.resize(n);
    for (int i = 0; i < n; ++i) F.leaf_names[i] = seq_to_string(F.tree.leaves()[i]);

    std::vector<std::string> tok;
    while (in.next(tok)) {
        try {
            if (tok[0] == "index") {
                expect_tokens(tok, 3, in.line(), "'index <leaf> <name>'");
                F.leaf_names[F.tree.leaf_position(seq_from_string(tok[1]))] = tok[2];
            } else if (tok[0] == "vertex") {
                expect_tokens(tok, 5, in.line(), "'vertex <a-leaf> <b-leaf> <d|-> <id>'");
                int a = F.tree.leaf_position(seq_from_string(tok[1]));
                int b = F.tree.leaf_position(seq_from_string(tok[2]));
                if (a == b) throw FormatError("vertex line repeats a leaf", in.line());
                if (a > b) std::swap(a, b);
                const Seq d = tok[3] == "-" ? Seq{} : seq_from_string(tok[3]);
                const FortressKey key{a, b, d};
                if (F.vertices.count(key))
                    throw FormatError("duplicate vertex line for this pair and deviation",
                                      in.line());
                F.vertices[key] = parse_int32(tok[4], in.line());
            } else {
                throw FormatError("expected 'index' or 'vertex', got '" + tok[0] + "'",
                                  in.line());
            }
        } catch (const ArgumentError& e) {
            rethrow_as_format(e, in.line());
        }
    }
    return F;
}

std::string save_fortress(const Fortress& F) {
    std::ostringstream out;
    out << save_tree(F.tree);
    const auto& leaves = F.tree.leaves();
    for (std::size_t i = 0; i < leaves.size(); ++i) {
        const std::string token = seq_to_string(leaves[i]);
        if (i < F.leaf_names.size() && F.leaf_names[i] != token)
            out << "index " << token << " " << F.leaf_names[i] << "\n";
    }
    for (const auto& [key, vert] : F.vertices)
        out << "vertex " << seq_to_string(leaves[key.a]) << " " << seq_to_string(leaves[key.b])
            << " " << seq_to_string(key.d) << " " << vert << "\n";
    return out.str();
}

// ---- selections -------------------------------------------------------------------

Selection load_selection(const ReducedHypergraph& A, const std::string& text) {
    LineReader in(text);
    std::vector<std::string> tok;
    Selection sel;
    try {
        if (!in.next(tok) || tok[0] != "xs" || tok.size() < 2)
            throw FormatError("expected 'xs <name>...'", in.line());
        for (std::size_t i = 1; i < tok.size(); ++i) sel.xs.push_back(A.position(tok[i]));
        if (!in.next(tok) || tok[0] != "ys" || tok.size() < 2)
            throw FormatError("expected 'ys <name>...'", in.line());
        for (std::size_t i = 1; i < tok.size(); ++i) sel.ys.push_back(A.position(tok[i]));
        sel.vertex.assign(sel.xs.size() * sel.ys.size(), -1);
        while (in.next(tok)) {
            expect_tokens(tok, 3, in.line(), "'<x> <y> <vertex>'");
            const int x = A.position(tok[0]);
            const int y = A.position(tok[1]);
            const auto xi = std::find(sel.xs.begin(), sel.xs.end(), x) - sel.xs.begin();
            const auto yi = std::find(sel.ys.begin(), sel.ys.end(), y) - sel.ys.begin();
            if (xi == static_cast<long>(sel.xs.size()))
                throw FormatError("'" + tok[0] + "' is not in xs", in.line());
            if (yi == static_cast<long>(sel.ys.size()))
                throw FormatError("'" + tok[1] + "' is not in ys", in.line());
            int& slot = sel.vertex[xi * sel.ys.size() + yi];
            if (slot != -1) throw FormatError("pair assigned twice", in.line());
            slot = parse_int32(tok[2], in.line());
        }
    } catch (const ArgumentError& e) {
        rethrow_as_format(e, in.line());
    }
    for (int v : sel.vertex)
        if (v == -1) throw FormatError("selection leaves some (x, y) pair unassigned");
    return sel;
}

std::string save_selection(const ReducedHypergraph& A, const Selection& sel) {
    std::ostringstream out;
    out << "xs";
    for (int x : sel.xs) out << " " << A.index_name(x);
    out << "\nys";
    for (int y : sel.ys) out << " " << A.index_name(y);
    out << "\n";
    for (std::size_t a = 0; a < sel.xs.size(); ++a)
        for (std::size_t b = 0; b < sel.ys.size(); ++b)
            out << A.index_name(sel.xs[a]) << " " << A.index_name(sel.ys[b]) << " "
                << sel.vertex[a * sel.ys.size() + b] << "\n";
    return out.str();
}

// ---- files ---------------------------------------------------------------------

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot write file: " + path);
    out << content;
    if (!out) throw FormatError("write failed: " + path);
}

std::vector<std::string> split_tokens(const std::string& text) {
    std::vector<std::string> tokens;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) tokens.push_back(tok);
    return tokens;
}

}  // namespace boxlab

#pragma once

#include <string>
#include <vector>

#include "boxlab/colouring.hpp"
#include "boxlab/fortress.hpp"
#include "boxlab/hypergraph.hpp"
#include "boxlab/palette.hpp"
#include "boxlab/reduced.hpp"
#include "boxlab/systems.hpp"

namespace boxlab {

// Text formats.  Every parser accepts '#' line comments and blank lines,
// reports malformed input as FormatError with a 1-based line number, and
// never crashes on arbitrary bytes.  Loaders enforce size guards so that a
// corrupt header cannot trigger an absurd allocation.
//
//   hypergraph     line 1 `vertices <n>`; lines `x y z` with 0 <= x < y < z < n
//   pair set       line 1 `vertices <n>`; lines `x y` (ordered, x != y)
//   vertex subset  a single line of space-separated vertex ids
//   palette        line 1 `colors <l>`; lines `a b c` with 1 <= a <= b <= c <= l
//   colouring      line 1 `vertices <n> colors <l>`; lines `x y c` with
//                  x < y, 1 <= c <= l; every pair exactly once
//   tree           line 1 `height <k> arity <M>`; then exactly M^k leaf lines
//                  of k space-separated labels
//   reduced        line `indices <i1> <i2> ...`; lines `class <i> <j> <size>`;
//                  lines `edge <i> <j> <k> <p> <q> <s>` with i < j < k in the
//                  declared order, p in the (i,j) class, q in (i,k), s in (j,k)
//   fortress       tree format, then optional lines `index <leaf> <name>`
//                  (leaf tokens are comma-joined label sequences; the name
//                  defaults to the leaf token itself), then lines
//                  `vertex <a-leaf> <b-leaf> <d|-> <id>` where `-` is the
//                  empty deviation sequence
//   selection      lines `xs <name>...` and `ys <name>...`, then one line
//                  `<x-name> <y-name> <vertex>` for every (x, y) pair

Hypergraph3 load_hypergraph(const std::string& text);
std::string save_hypergraph(const Hypergraph3& H);

PairSet load_pair_set(const std::string& text);
std::string save_pair_set(const PairSet& P);

std::vector<int> load_vertex_subset(const std::string& text);
std::string save_vertex_subset(const std::vector<int>& xs);

Palette load_palette(const std::string& text);
std::string save_palette(const Palette& p);

EdgeColouring load_colouring(const std::string& text);
std::string save_colouring(const EdgeColouring& phi);

KMTree load_tree(const std::string& text);
std::string save_tree(const KMTree& tree);

ReducedHypergraph load_reduced(const std::string& text);
std::string save_reduced(const ReducedHypergraph& A);

Fortress load_fortress(const std::string& text);
std::string save_fortress(const Fortress& F);

// Selections name indices of A, so loading needs the hypergraph.
Selection load_selection(const ReducedHypergraph& A, const std::string& text);
std::string save_selection(const ReducedHypergraph& A, const Selection& sel);

// Whole-file helpers; FormatError on unreadable paths.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// Whitespace tokenization (no comment handling) for small CLI arguments.
std::vector<std::string> split_tokens(const std::string& text);

}  // namespace boxlab

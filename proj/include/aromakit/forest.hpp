#pragma once

#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

#include "aromakit/rational.hpp"

namespace aromakit {

// Aromatic forest: a directed graph where every node has at most one
// successor.  Rootless components carry exactly one cycle (aromas), rooted
// components are trees.  Roots are numbered by their position in `roots`,
// covertices carry the labels 1..p.
//
// The same struct doubles as a marked forest: `marked` is the node holding
// the diamond symbol (or -1), and the last `detached` entries of `roots` are
// the detached roots produced by detach_at.  Plain forests have marked == -1
// and detached == 0.
struct Forest {
    std::vector<int> label; // 0 = vertex, k >= 1 = covertex with label k
    std::vector<int> succ;  // successor node index, -1 on roots
    std::vector<int> roots; // root indices, in root order
    int marked = -1;
    int detached = 0;
    std::string enc; // canonical encoding, set once canonicalized

    int order() const { return static_cast<int>(label.size()); }
    int num_roots() const { return static_cast<int>(roots.size()); }
    int num_covertices() const;
    bool is_plain() const { return marked < 0 && detached == 0; }
    bool is_canonical() const { return !enc.empty(); }

    bool has_one_loop() const;
    std::vector<int> predecessors(int v) const;

    friend bool operator==(const Forest& a, const Forest& b) { return a.enc == b.enc; }
    friend std::strong_ordering operator<=>(const Forest& a, const Forest& b) {
        return a.enc <=> b.enc;
    }
};

struct ParseError : std::runtime_error {
    size_t pos;
    ParseError(const std::string& msg, size_t at)
        : std::runtime_error(msg + " at position " + std::to_string(at)), pos(at) {}
};

// Grammar:
//   forest   := "1" | component { " " component } [ "|" INT ]
//   component:= aroma | tree
//   aroma    := "<" node { "," node } ">"     (cycle, each node's successor is
//                                              the next listed one, last -> first)
//   node     := ("b" | "o" INT) [ "*" ] [ "[" node { "," node } "]" ]
// The bracketed list holds the predecessors of a node.  "*" marks a node
// (internal use); "|k" declares the last k roots detached (internal use).
Forest parse(const std::string& text);

// Unique representative of the isomorphism class (root order and covertex
// labels preserved): subtrees sorted recursively, aroma cycles rotated to the
// minimal sequence, aromas sorted as a multiset, trees kept in root order.
Forest canonical(Forest f);

// Canonical textual form; parse(print(f)) == canonical(f).
const std::string& print(const Forest& f);

// Number of node bijections fixing the forest (kinds, edges, root numbering
// and covertex labels respected).
Integer symmetry_order(const Forest& f);

// All of F_{n,p}^N (or its 1-loop-free subset), canonically sorted.
std::vector<Forest> generate(int N, int n, int p, bool divfree);

// Empty forest "1", the unit of juxtaposition.
Forest empty_forest();

// Chain tree b[b[...]] with N nodes.
Forest bamboo(int N);

// Disjoint union; root lists concatenate in argument order.
Forest juxtapose(const Forest& a, const Forest& b);

// Copy of f with the edge r -> u added; r must be a root (possibly r == u).
// If r was detached the detached count drops by one.
Forest graft(const Forest& f, int r, int u);

// Several grafts applied at once; all node indices refer to f.  Targets may
// themselves be grafted roots (cycles can form).
Forest graft_many(const Forest& f, const std::vector<std::pair<int, int>>& edges);

// Cut all edges pointing to v.  The former predecessors of v become detached
// roots, appended after the existing roots in canonical-encoding order, and v
// is marked.  If v had a self-loop, v itself is among the detached roots.
Forest detach_at(const Forest& f, int v);

// Drop the mark, keep the detached bookkeeping.
Forest unmark(const Forest& f);

// Forget mark and detached-root status altogether.
Forest to_plain(const Forest& f);

// Kind swaps.  replace_vertex turns vertex v into covertex k (k must be
// fresh); replace_covertex turns the covertex labelled k into a vertex.
Forest replace_vertex(const Forest& f, int v, int k);
Forest replace_covertex(const Forest& f, int k);

// Flags per node: true when the node lies on a cycle.  Exposed for tests.
std::vector<bool> cycle_nodes(const Forest& f);

} // namespace aromakit

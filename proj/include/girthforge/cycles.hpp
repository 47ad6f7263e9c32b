#ifndef GIRTHFORGE_CYCLES_HPP
#define GIRTHFORGE_CYCLES_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "girthforge/digraph.hpp"

namespace girthforge {

// A directed cycle as a vertex sequence, rotated so the smallest id
// comes first. Directed cycles have one orientation, so this is a
// canonical form.
using CycleList = std::vector<std::vector<int>>;

// True iff the subdigraph induced by s has no directed cycle.
// Throws std::out_of_range on bad vertex ids; duplicates are ignored.
bool is_induced_acyclic(const Digraph& d, std::span<const int> s);

// Length of a shortest directed cycle; nullopt when d is acyclic
// (infinite girth). Digons give 2.
std::optional<int> girth(const Digraph& d);

inline bool girth_at_least(std::optional<int> g, int ell) {
    return !g.has_value() || *g >= ell;
}

// All directed cycles of length < ell, each reported once. Bounded-depth
// DFS; starts are restricted to the cycle's minimum id, which yields the
// canonical rotation directly and rules out duplicates.
CycleList short_cycles(const Digraph& d, int ell);

// Unordered pairs of distinct cycles from short_cycles(d, ell) that
// share at least one vertex.
std::int64_t intersecting_short_cycle_pairs(const Digraph& d, int ell);

// Digraph on |s| vertices preserving all arcs inside s; relabelling is
// order-preserving on original ids.
Digraph induced_subdigraph(const Digraph& d, std::span<const int> s);

// Verifies a vertex sequence is a directed cycle of d (consecutive and
// closing arcs present, vertices distinct). Used by witness re-checks.
bool is_directed_cycle(const Digraph& d, std::span<const int> cycle);

} // namespace girthforge

#endif

#ifndef GIRTHFORGE_DIGRAPH_HPP
#define GIRTHFORGE_DIGRAPH_HPP

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace girthforge {

struct Arc {
    int from = 0;
    int to = 0;
    auto operator<=>(const Arc&) const = default;
};

// Finite simple digraph: loopless, no parallel arcs, digons allowed.
// Vertices are dense ids 0..order-1; arcs are kept in ascending
// (from, to) order so serialized digraphs are byte-stable.
// Immutable after construction and safe to share across threads.
class Digraph {
public:
    Digraph() = default;

    // Sorts the arc list; throws std::invalid_argument on loops,
    // duplicates, or out-of-range endpoints.
    Digraph(int order, std::vector<Arc> arcs);

    int order() const { return order_; }
    int arc_count() const { return static_cast<int>(arcs_.size()); }
    const std::vector<Arc>& arcs() const { return arcs_; }

    bool has_arc(int u, int v) const;

    std::span<const int> out_neighbours(int v) const;
    std::span<const int> in_neighbours(int v) const;
    int degree(int v) const; // in + out

    bool operator==(const Digraph& other) const {
        return order_ == other.order_ && arcs_ == other.arcs_;
    }

private:
    int order_ = 0;
    std::vector<Arc> arcs_;
    std::vector<int> out_flat_, in_flat_;
    std::vector<int> out_off_, in_off_;
};

// All labeled loopless digraphs of the given order, in ascending
// arc-subset-mask order. 2^(m(m-1)) of them; keep the order small.
std::vector<Digraph> all_labeled_digraphs(int order);

// Orders 1..max_order concatenated (1, 4, 64, ... digraphs).
std::vector<Digraph> all_labeled_digraphs_up_to(int max_order);

} // namespace girthforge

#endif

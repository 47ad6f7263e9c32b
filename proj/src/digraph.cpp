#include "girthforge/digraph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace girthforge {

Digraph::Digraph(int order, std::vector<Arc> arcs)
    : order_(order), arcs_(std::move(arcs)) {
    if (order_ < 0)
        throw std::invalid_argument("digraph order must be non-negative");
    std::sort(arcs_.begin(), arcs_.end());
    for (std::size_t i = 0; i < arcs_.size(); ++i) {
        const Arc& a = arcs_[i];
        if (a.from < 0 || a.from >= order_ || a.to < 0 || a.to >= order_)
            throw std::invalid_argument("arc endpoint out of range: " +
                                        std::to_string(a.from) + " " +
                                        std::to_string(a.to));
        if (a.from == a.to)
            throw std::invalid_argument("loop arc not allowed at vertex " +
                                        std::to_string(a.from));
        if (i > 0 && arcs_[i - 1] == a)
            throw std::invalid_argument("duplicate arc: " +
                                        std::to_string(a.from) + " " +
                                        std::to_string(a.to));
    }

    out_off_.assign(order_ + 1, 0);
    in_off_.assign(order_ + 1, 0);
    for (const Arc& a : arcs_) {
        ++out_off_[a.from + 1];
        ++in_off_[a.to + 1];
    }
    for (int v = 0; v < order_; ++v) {
        out_off_[v + 1] += out_off_[v];
        in_off_[v + 1] += in_off_[v];
    }
    out_flat_.resize(arcs_.size());
    in_flat_.resize(arcs_.size());
    std::vector<int> ocur(out_off_.begin(), out_off_.end() - 1);
    std::vector<int> icur(in_off_.begin(), in_off_.end() - 1);
    for (const Arc& a : arcs_) {
        out_flat_[ocur[a.from]++] = a.to;
        in_flat_[icur[a.to]++] = a.from;
    }
    // arcs_ is sorted, so each out list is ascending; sort the in lists.
    for (int v = 0; v < order_; ++v)
        std::sort(in_flat_.begin() + in_off_[v], in_flat_.begin() + in_off_[v + 1]);
}

bool Digraph::has_arc(int u, int v) const {
    if (u < 0 || u >= order_ || v < 0 || v >= order_) return false;
    auto sp = out_neighbours(u);
    return std::binary_search(sp.begin(), sp.end(), v);
}

std::span<const int> Digraph::out_neighbours(int v) const {
    return {out_flat_.data() + out_off_[v],
            static_cast<std::size_t>(out_off_[v + 1] - out_off_[v])};
}

std::span<const int> Digraph::in_neighbours(int v) const {
    return {in_flat_.data() + in_off_[v],
            static_cast<std::size_t>(in_off_[v + 1] - in_off_[v])};
}

int Digraph::degree(int v) const {
    return (out_off_[v + 1] - out_off_[v]) + (in_off_[v + 1] - in_off_[v]);
}

std::vector<Digraph> all_labeled_digraphs(int order) {
    if (order < 0 || order > 4)
        throw std::invalid_argument("labeled enumeration supported for order 0..4");
    std::vector<Arc> slots;
    for (int u = 0; u < order; ++u)
        for (int v = 0; v < order; ++v)
            if (u != v) slots.push_back({u, v});
    std::vector<Digraph> out;
    const std::uint64_t total = 1ULL << slots.size();
    out.reserve(total);
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        std::vector<Arc> arcs;
        for (std::size_t b = 0; b < slots.size(); ++b)
            if (mask & (1ULL << b)) arcs.push_back(slots[b]);
        out.emplace_back(order, std::move(arcs));
    }
    return out;
}

std::vector<Digraph> all_labeled_digraphs_up_to(int max_order) {
    std::vector<Digraph> out;
    for (int m = 1; m <= max_order; ++m) {
        auto part = all_labeled_digraphs(m);
        out.insert(out.end(), std::make_move_iterator(part.begin()),
                   std::make_move_iterator(part.end()));
    }
    return out;
}

} // namespace girthforge

#include "girthforge/cycles.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace girthforge {

namespace {

std::vector<int> checked_sorted_unique(const Digraph& d, std::span<const int> s) {
    std::vector<int> ids(s.begin(), s.end());
    for (int v : ids)
        if (v < 0 || v >= d.order())
            throw std::out_of_range("vertex id out of range: " + std::to_string(v));
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
}

} // namespace

bool is_induced_acyclic(const Digraph& d, std::span<const int> s) {
    std::vector<int> ids = checked_sorted_unique(d, s);
    // Kahn's algorithm restricted to the induced subdigraph.
    std::vector<int> pos(d.order(), -1);
    for (std::size_t i = 0; i < ids.size(); ++i) pos[ids[i]] = static_cast<int>(i);
    std::vector<int> indeg(ids.size(), 0);
    for (std::size_t i = 0; i < ids.size(); ++i)
        for (int w : d.out_neighbours(ids[i]))
            if (pos[w] >= 0) ++indeg[pos[w]];
    std::vector<int> stack;
    for (std::size_t i = 0; i < ids.size(); ++i)
        if (indeg[i] == 0) stack.push_back(static_cast<int>(i));
    std::size_t removed = 0;
    while (!stack.empty()) {
        int i = stack.back();
        stack.pop_back();
        ++removed;
        for (int w : d.out_neighbours(ids[i])) {
            int j = pos[w];
            if (j >= 0 && --indeg[j] == 0) stack.push_back(j);
        }
    }
    return removed == ids.size();
}

std::optional<int> girth(const Digraph& d) {
    // BFS from each vertex; the shortest cycle through s closes with an
    // arc u->s at distance dist(s,u)+1.
    const int n = d.order();
    int best = std::numeric_limits<int>::max();
    std::vector<int> dist(n);
    std::vector<int> queue;
    queue.reserve(n);
    for (int s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        dist[s] = 0;
        queue.clear();
        queue.push_back(s);
        for (std::size_t head = 0; head < queue.size(); ++head) {
            int u = queue[head];
            if (dist[u] + 1 >= best) break;
            for (int w : d.out_neighbours(u)) {
                if (dist[w] < 0) {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        for (int u : d.in_neighbours(s))
            if (dist[u] >= 0 && dist[u] + 1 < best) best = dist[u] + 1;
    }
    if (best == std::numeric_limits<int>::max()) return std::nullopt;
    return best;
}

CycleList short_cycles(const Digraph& d, int ell) {
    if (ell < 2) throw std::invalid_argument("cycle length bound must be >= 2");
    CycleList cycles;
    const int max_len = ell - 1; // cycles strictly shorter than ell
    if (max_len < 2) return cycles;
    std::vector<int> path;
    std::vector<char> on_path(d.order(), 0);

    // Iterative DFS from each start s, visiting only ids > s except for
    // the closing arc back to s.
    struct Frame {
        int vertex;
        std::size_t next; // index into out_neighbours(vertex)
    };
    std::vector<Frame> stack;
    for (int s = 0; s < d.order(); ++s) {
        path.assign(1, s);
        on_path[s] = 1;
        stack.assign(1, {s, 0});
        while (!stack.empty()) {
            Frame& f = stack.back();
            auto nbrs = d.out_neighbours(f.vertex);
            if (f.next >= nbrs.size()) {
                on_path[f.vertex] = 0;
                path.pop_back();
                stack.pop_back();
                continue;
            }
            int w = nbrs[f.next++];
            if (w == s) {
                if (path.size() >= 2) cycles.push_back(path);
                continue;
            }
            if (w < s || on_path[w]) continue;
            if (static_cast<int>(path.size()) + 1 > max_len) continue;
            path.push_back(w);
            on_path[w] = 1;
            stack.push_back({w, 0});
        }
        on_path[s] = 0;
    }
    return cycles;
}

std::int64_t intersecting_short_cycle_pairs(const Digraph& d, int ell) {
    CycleList cycles = short_cycles(d, ell);
    const std::size_t words = (static_cast<std::size_t>(d.order()) + 63) / 64;
    std::vector<std::uint64_t> masks(cycles.size() * words, 0);
    for (std::size_t c = 0; c < cycles.size(); ++c)
        for (int v : cycles[c])
            masks[c * words + v / 64] |= 1ULL << (v % 64);
    std::int64_t count = 0;
    for (std::size_t i = 0; i < cycles.size(); ++i)
        for (std::size_t j = i + 1; j < cycles.size(); ++j) {
            for (std::size_t w = 0; w < words; ++w)
                if (masks[i * words + w] & masks[j * words + w]) {
                    ++count;
                    break;
                }
        }
    return count;
}

Digraph induced_subdigraph(const Digraph& d, std::span<const int> s) {
    std::vector<int> ids = checked_sorted_unique(d, s);
    std::vector<int> pos(d.order(), -1);
    for (std::size_t i = 0; i < ids.size(); ++i) pos[ids[i]] = static_cast<int>(i);
    std::vector<Arc> arcs;
    for (std::size_t i = 0; i < ids.size(); ++i)
        for (int w : d.out_neighbours(ids[i]))
            if (pos[w] >= 0) arcs.push_back({static_cast<int>(i), pos[w]});
    return Digraph(static_cast<int>(ids.size()), std::move(arcs));
}

bool is_directed_cycle(const Digraph& d, std::span<const int> cycle) {
    if (cycle.size() < 2) return false;
    std::vector<int> seen(cycle.begin(), cycle.end());
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) return false;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        int u = cycle[i];
        int v = cycle[(i + 1) % cycle.size()];
        if (u < 0 || u >= d.order() || !d.has_arc(u, v)) return false;
    }
    return true;
}

} // namespace girthforge

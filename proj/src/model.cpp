#include "girthforge/model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "girthforge/cycles.hpp"
#include "girthforge/rng.hpp"

namespace girthforge {

double ModelParams::p() const {
    if (forced_p) return *forced_p;
    return std::pow(static_cast<double>(n), eps - 1.0);
}

ModelParams ModelParams::checked(int n, int ell, int k, double eps, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("block size n must be >= 2");
    if (ell < 2) throw std::invalid_argument("girth target ell must be >= 2");
    if (k < 1) throw std::invalid_argument("codomain bound k must be >= 1");
    if (!(eps > 0.0) || !(eps < 1.0 / (4.0 * ell)))
        throw std::invalid_argument("eps must satisfy 0 < eps < 1/(4*ell) = " +
                                    std::to_string(1.0 / (4.0 * ell)));
    ModelParams mp;
    mp.n = n;
    mp.ell = ell;
    mp.k = k;
    mp.eps = eps;
    mp.seed = seed;
    return mp;
}

ModelParams ModelParams::unsafe_checked(int n, int ell, int k, double eps,
                                        std::uint64_t seed,
                                        std::optional<double> forced_p) {
    if (n < 1) throw std::invalid_argument("block size n must be >= 1");
    if (ell < 2) throw std::invalid_argument("girth target ell must be >= 2");
    if (k < 1) throw std::invalid_argument("codomain bound k must be >= 1");
    if (forced_p && (!(*forced_p >= 0.0) || !(*forced_p <= 1.0)))
        throw std::invalid_argument("forced p must lie in [0,1]");
    ModelParams mp;
    mp.n = n;
    mp.ell = ell;
    mp.k = k;
    mp.eps = eps;
    mp.seed = seed;
    mp.forced_p = forced_p;
    mp.unsafe = true;
    return mp;
}

BlockDigraph::BlockDigraph(Digraph base, int n) : base_(std::move(base)), n_(n) {
    if (n_ < 1) throw std::invalid_argument("block size must be >= 1");
    if (base_.order() < 1) throw std::invalid_argument("pattern must be nonempty");
}

std::int64_t BlockDigraph::arc_count() const {
    const std::int64_t a = base_.order();
    const std::int64_t q = base_.arc_count();
    const std::int64_t n = n_;
    return a * n * (n - 1) / 2 + q * n * n;
}

namespace {

// Index of the ordered pair (s,t), s < t, in lexicographic order over
// an n-set: pairs starting at 0 first, then 1, ...
inline std::int64_t within_pair_index(int s, int t, int n) {
    return static_cast<std::int64_t>(s) * n - static_cast<std::int64_t>(s) * (s + 1) / 2 +
           (t - s - 1);
}

} // namespace

std::int64_t BlockDigraph::arc_index(int u, int v) const {
    if (u < 0 || v < 0 || u >= vertex_count() || v >= vertex_count() || u == v) return -1;
    const std::int64_t per_block = static_cast<std::int64_t>(n_) * (n_ - 1) / 2;
    int bi = block_of(u), bj = block_of(v);
    int s = pos_of(u), t = pos_of(v);
    if (bi == bj) {
        if (s >= t) return -1; // within-block arcs only go up in position
        return bi * per_block + within_pair_index(s, t, n_);
    }
    const auto& arcs = base_.arcs();
    auto it = std::lower_bound(arcs.begin(), arcs.end(), Arc{bi, bj});
    if (it == arcs.end() || !(*it == Arc{bi, bj})) return -1;
    std::int64_t eidx = it - arcs.begin();
    return block_count() * per_block +
           eidx * static_cast<std::int64_t>(n_) * n_ + static_cast<std::int64_t>(s) * n_ + t;
}

Arc BlockDigraph::arc_at(std::int64_t index) const {
    const std::int64_t per_block = static_cast<std::int64_t>(n_) * (n_ - 1) / 2;
    const std::int64_t within_total = block_count() * per_block;
    if (index < 0 || index >= arc_count()) throw std::out_of_range("arc index out of range");
    if (index < within_total) {
        int b = static_cast<int>(index / per_block);
        std::int64_t r = index % per_block;
        int s = 0;
        while (r >= n_ - 1 - s) {
            r -= n_ - 1 - s;
            ++s;
        }
        int t = s + 1 + static_cast<int>(r);
        return {vertex(b, s), vertex(b, t)};
    }
    std::int64_t rest = index - within_total;
    const std::int64_t nn = static_cast<std::int64_t>(n_) * n_;
    std::int64_t eidx = rest / nn;
    std::int64_t off = rest % nn;
    const Arc& e = base_.arcs()[static_cast<std::size_t>(eidx)];
    return {vertex(e.from, static_cast<int>(off / n_)), vertex(e.to, static_cast<int>(off % n_))};
}

Digraph BlockDigraph::materialize() const {
    std::vector<Arc> arcs;
    arcs.reserve(static_cast<std::size_t>(arc_count()));
    for (std::int64_t i = 0, m = arc_count(); i < m; ++i) arcs.push_back(arc_at(i));
    return Digraph(vertex_count(), std::move(arcs));
}

SampledDigraph sample(const BlockDigraph& d0, const ModelParams& params) {
    return sample_with_seed(d0, params.p(), params.seed);
}

SampledDigraph sample_with_seed(const BlockDigraph& d0, double p, std::uint64_t seed) {
    std::vector<Arc> kept;
    const std::int64_t m = d0.arc_count();
    for (std::int64_t i = 0; i < m; ++i)
        if (rng::unit(seed, static_cast<std::uint64_t>(i)) < p) kept.push_back(d0.arc_at(i));
    return {d0, Digraph(d0.vertex_count(), std::move(kept)), seed};
}

std::vector<Arc> sample_induced_arcs(const BlockDigraph& d0, double p,
                                     std::uint64_t seed, std::span<const int> vertices) {
    std::vector<Arc> kept;
    for (int u : vertices)
        for (int v : vertices) {
            std::int64_t idx = d0.arc_index(u, v);
            if (idx >= 0 && rng::unit(seed, static_cast<std::uint64_t>(idx)) < p)
                kept.push_back({u, v});
        }
    std::sort(kept.begin(), kept.end());
    return kept;
}

std::optional<LargeSetCertificate> classify_large(std::span<const int> set,
                                                  const BlockDigraph& d0, int k) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    LargeSetCertificate cert;
    cert.set.assign(set.begin(), set.end());
    for (int v : cert.set)
        if (v < 0 || v >= d0.vertex_count())
            throw std::out_of_range("set vertex out of range: " + std::to_string(v));
    std::sort(cert.set.begin(), cert.set.end());
    cert.set.erase(std::unique(cert.set.begin(), cert.set.end()), cert.set.end());
    cert.block_counts.assign(d0.block_count(), 0);
    for (int v : cert.set) ++cert.block_counts[d0.block_of(v)];
    const std::int64_t n = d0.block_size();
    for (const Arc& e : d0.base().arcs()) {
        // integer threshold test: k * |set ∩ V_i| >= n
        if (static_cast<std::int64_t>(k) * cert.block_counts[e.from] >= n &&
            static_cast<std::int64_t>(k) * cert.block_counts[e.to] >= n)
            cert.good_arcs.push_back(e);
    }
    if (cert.good_arcs.empty()) return std::nullopt;
    return cert;
}

std::int64_t cross_arc_count(const SampledDigraph& dhat,
                             const LargeSetCertificate& cert, const Arc& good_arc) {
    const BlockDigraph& d0 = dhat.model;
    std::vector<char> in_set(d0.vertex_count(), 0);
    for (int v : cert.set) in_set[v] = 1;
    std::int64_t count = 0;
    for (int v : cert.set) {
        if (d0.block_of(v) != good_arc.from) continue;
        for (int w : dhat.arcs.out_neighbours(v))
            if (in_set[w] && d0.block_of(w) == good_arc.to) ++count;
    }
    return count;
}

std::int64_t good_arc_load(const SampledDigraph& dhat, const LargeSetCertificate& cert) {
    if (cert.good_arcs.empty())
        throw std::invalid_argument("certificate has no good arcs");
    std::int64_t best = -1;
    for (const Arc& e : cert.good_arcs) {
        std::int64_t c = cross_arc_count(dhat, cert, e);
        if (best < 0 || c < best) best = c;
    }
    return best;
}

namespace {

// Arcs from A to B in the sampled digraph, as position bitmasks.
// n <= 12, so block positions fit in 16-bit masks.
struct CrossPattern {
    // adj[s] = bitmask of positions t in the target block with an arc
    // from source position s.
    std::vector<std::uint16_t> adj;
};

CrossPattern cross_pattern(const SampledDigraph& dhat, int from_block, int to_block) {
    const BlockDigraph& d0 = dhat.model;
    const int n = d0.block_size();
    CrossPattern pat;
    pat.adj.assign(n, 0);
    for (int s = 0; s < n; ++s) {
        int u = d0.vertex(from_block, s);
        for (int w : dhat.arcs.out_neighbours(u))
            if (d0.block_of(w) == to_block)
                pat.adj[s] |= static_cast<std::uint16_t>(1u << d0.pos_of(w));
    }
    return pat;
}

// Enumerate size-r subsets of {0..n-1} as bitmasks, ascending.
template <typename Fn>
bool for_each_subset(int n, int r, Fn&& fn) {
    if (r > n) return true;
    std::uint32_t mask = (r == 0) ? 0u : ((1u << r) - 1u);
    while (true) {
        if (!fn(static_cast<std::uint16_t>(mask))) return false;
        if (r == 0) return true;
        // Gosper's hack: next subset of the same popcount.
        std::uint32_t c = mask & -mask;
        std::uint32_t rr = mask + c;
        std::uint32_t next = (((rr ^ mask) >> 2) / c) | rr;
        if (next >= (1u << n)) return true;
        mask = next;
    }
}

// Arcs from mask_a positions to mask_b positions; nullopt when the count
// exceeds cap (early exit) — otherwise the arc list as position pairs.
std::optional<std::vector<std::pair<int, int>>> arcs_between_capped(
    const CrossPattern& pat, std::uint16_t mask_a, std::uint16_t mask_b, int cap) {
    std::vector<std::pair<int, int>> arcs;
    for (int s = 0; s < 16; ++s) {
        if (!(mask_a & (1u << s))) continue;
        std::uint16_t hits = pat.adj[s] & mask_b;
        while (hits) {
            int t = std::countr_zero(static_cast<unsigned>(hits));
            hits = static_cast<std::uint16_t>(hits & (hits - 1));
            arcs.emplace_back(s, t);
            if (static_cast<int>(arcs.size()) > cap) return std::nullopt;
        }
    }
    return arcs;
}

bool is_position_matching(const std::vector<std::pair<int, int>>& arcs) {
    std::uint32_t used_a = 0, used_b = 0;
    for (auto [s, t] : arcs) {
        if ((used_a & (1u << s)) || (used_b & (1u << t))) return false;
        used_a |= 1u << s;
        used_b |= 1u << t;
    }
    return true;
}

} // namespace

std::optional<BadPair> find_bad_pair(const SampledDigraph& dhat, const ModelParams& params,
                                     bool require_matching) {
    const BlockDigraph& d0 = dhat.model;
    const int n = d0.block_size();
    const int k = params.k;
    if (n > 12)
        throw std::invalid_argument("bad-pair search is exhaustive; limited to n <= 12");
    if (n != params.n) throw std::invalid_argument("params.n does not match model");

    const int ceil_neps = static_cast<int>(
        std::ceil(std::pow(static_cast<double>(n), params.eps * params.ell)));

    std::optional<BadPair> found;
    auto consider = [&](int block_a, int block_b, bool forward) {
        // A in block_a with |A| = n-(k-1)b, B in block_b with |B| = b;
        // arcs counted from A to B when forward (pattern arc a->b),
        // from B to A otherwise (pattern arc b->a).
        const CrossPattern pat = forward ? cross_pattern(dhat, block_a, block_b)
                                         : cross_pattern(dhat, block_b, block_a);
        for (int b = 1; k * b <= n; ++b) {
            const int size_a = n - (k - 1) * b;
            if (size_a < 1 || size_a > n) continue;
            const int cap = std::min(b, ceil_neps);
            bool exhausted = for_each_subset(n, b, [&](std::uint16_t mask_b) {
                return for_each_subset(n, size_a, [&](std::uint16_t mask_a) {
                    auto arcs = forward ? arcs_between_capped(pat, mask_a, mask_b, cap)
                                        : arcs_between_capped(pat, mask_b, mask_a, cap);
                    if (!arcs) return true; // too many arcs, keep looking
                    if (require_matching && !is_position_matching(*arcs)) return true;
                    BadPair bp;
                    bp.block_a = block_a;
                    bp.block_b = block_b;
                    bp.forward = forward;
                    for (int s = 0; s < n; ++s) {
                        if (mask_a & (1u << s)) bp.set_a.push_back(d0.vertex(block_a, s));
                        if (mask_b & (1u << s)) bp.set_b.push_back(d0.vertex(block_b, s));
                    }
                    for (auto [s, t] : *arcs) {
                        if (forward)
                            bp.arcs_between.push_back(
                                {d0.vertex(block_a, s), d0.vertex(block_b, t)});
                        else
                            bp.arcs_between.push_back(
                                {d0.vertex(block_b, s), d0.vertex(block_a, t)});
                    }
                    found = std::move(bp);
                    return false;
                });
            });
            if (!exhausted) return false;
        }
        return true;
    };

    for (const Arc& e : d0.base().arcs()) {
        if (!consider(e.from, e.to, true)) break;   // A in tail block, arcs A->B
        if (!consider(e.to, e.from, false)) break;  // A in head block, arcs B->A
    }
    return found;
}

CycleMatching extract_cycle_matching(const SampledDigraph& dprime, int ell) {
    CycleMatching result;
    CycleList cycles = short_cycles(dprime.arcs, ell);
    std::vector<char> used(dprime.arcs.order(), 0);
    for (const auto& cyc : cycles)
        for (int v : cyc) {
            if (used[v]) {
                // find the earlier cycle sharing v for the witness
                for (const auto& other : cycles) {
                    if (&other == &cyc) break;
                    if (std::find(other.begin(), other.end(), v) != other.end()) {
                        result.clash = {other, cyc};
                        return result;
                    }
                }
            }
            used[v] = 1;
        }
    result.disjoint = true;
    for (const auto& cyc : cycles) {
        Arc best{cyc[0], cyc[1]};
        for (std::size_t i = 0; i < cyc.size(); ++i) {
            Arc a{cyc[i], cyc[(i + 1) % cyc.size()]};
            if (a < best) best = a;
        }
        result.matching.push_back(best);
    }
    std::sort(result.matching.begin(), result.matching.end());
    return result;
}

Digraph remove_arcs(const Digraph& d, std::span<const Arc> arcs) {
    std::vector<Arc> removed(arcs.begin(), arcs.end());
    std::sort(removed.begin(), removed.end());
    std::vector<Arc> kept;
    kept.reserve(d.arcs().size());
    for (const Arc& a : d.arcs())
        if (!std::binary_search(removed.begin(), removed.end(), a)) kept.push_back(a);
    return Digraph(d.order(), std::move(kept));
}

} // namespace girthforge

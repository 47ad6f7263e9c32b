#ifndef GIRTHFORGE_MODEL_HPP
#define GIRTHFORGE_MODEL_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "girthforge/digraph.hpp"

namespace girthforge {

// Parameters of the random model: block size n, girth target ell,
// codomain order bound k, exponent eps with 0 < eps < 1/(4*ell), and a
// reproducibility seed. The arc-keep probability is p = n^(eps-1).
struct ModelParams {
    int n = 2;
    int ell = 3;
    int k = 2;
    double eps = 0.05;
    std::uint64_t seed = 0;
    // Experiment-only escape hatches; only the unsafe factory sets them.
    std::optional<double> forced_p;
    bool unsafe = false;

    double p() const;

    // Validates 0 < eps < 1/(4*ell), n >= 2, ell >= 2, k >= 1 (so that
    // the derived p lies in (0,1)). Throws std::invalid_argument.
    static ModelParams checked(int n, int ell, int k, double eps, std::uint64_t seed);

    // Skips the eps range check and optionally forces p; still requires
    // n >= 1, ell >= 2, k >= 1 and forced_p in [0,1].
    static ModelParams unsafe_checked(int n, int ell, int k, double eps,
                                      std::uint64_t seed,
                                      std::optional<double> forced_p = std::nullopt);
};

// The blow-up of a pattern digraph: blocks V_0..V_{a-1} of size n, all
// cross arcs x->y with x in V_i, y in V_j for every pattern arc ij, and
// within-block arcs in increasing position order. Block i position t is
// vertex i*n + t.
class BlockDigraph {
public:
    BlockDigraph(Digraph base, int n);

    const Digraph& base() const { return base_; }
    int block_count() const { return base_.order(); }
    int block_size() const { return n_; }
    int vertex_count() const { return base_.order() * n_; }
    std::int64_t arc_count() const; // a*n*(n-1)/2 + q*n^2

    int vertex(int block, int pos) const { return block * n_ + pos; }
    int block_of(int v) const { return v / n_; }
    int pos_of(int v) const { return v % n_; }

    // Canonical index of an arc of the blow-up in [0, arc_count()), or
    // -1 when uv is not a blow-up arc. Within-block arcs come first,
    // then cross arcs grouped by pattern arc. This indexing is what the
    // counter-based sampler hashes, so it is part of the sampling
    // contract.
    std::int64_t arc_index(int u, int v) const;
    Arc arc_at(std::int64_t index) const;

    Digraph materialize() const;

    bool operator==(const BlockDigraph& other) const {
        return n_ == other.n_ && base_ == other.base_;
    }

private:
    Digraph base_;
    int n_;
};

// A spanning subdigraph of the blow-up drawn from the model: every
// blow-up arc kept independently with probability p, decided by
// hash(seed, arc index). Regenerating from (model, seed_used)
// reproduces the arc set exactly.
struct SampledDigraph {
    BlockDigraph model;
    Digraph arcs;
    std::uint64_t seed_used = 0;
};

SampledDigraph sample(const BlockDigraph& d0, const ModelParams& params);
SampledDigraph sample_with_seed(const BlockDigraph& d0, double p, std::uint64_t seed);

// Restriction of sample_with_seed to the subdigraph induced by the
// given vertices; identical keep-decisions, evaluated only for arcs
// inside the set. Vertex ids keep blow-up numbering.
std::vector<Arc> sample_induced_arcs(const BlockDigraph& d0, double p,
                                     std::uint64_t seed, std::span<const int> vertices);

// A set is large when some pattern arc ij has at least n/k of the set
// in both V_i and V_j; such ij are its good arcs. Thresholds use the
// exact integer test k*|set ∩ V_i| >= n.
struct LargeSetCertificate {
    std::vector<int> set;            // sorted vertex ids
    std::vector<int> block_counts;   // |set ∩ V_i| per block
    std::vector<Arc> good_arcs;      // pattern arcs meeting the threshold
};

std::optional<LargeSetCertificate> classify_large(std::span<const int> set,
                                                  const BlockDigraph& d0, int k);

// Sampled arcs lying inside the set along one good arc ij.
std::int64_t cross_arc_count(const SampledDigraph& dhat,
                             const LargeSetCertificate& cert, const Arc& good_arc);

// min over good arcs of cross_arc_count. Throws std::invalid_argument
// when the certificate has no good arcs.
std::int64_t good_arc_load(const SampledDigraph& dhat, const LargeSetCertificate& cert);

// A pair of sets A ⊂ V_i0, B ⊂ V_j0 along a pattern arc, with
// |A| = n - (k-1)|B|, 1 <= |B| <= n/k, joined (in the arc direction) by
// at most min{|B|, ceil(n^(eps*ell))} arcs that form a matching.
struct BadPair {
    int block_a = 0, block_b = 0;    // A lives in block_a, B in block_b
    bool forward = true;             // true: pattern arc a->b, arcs counted A->B
    std::vector<int> set_a, set_b;   // blow-up vertex ids
    std::vector<Arc> arcs_between;   // the sampled arcs in the counted direction
};

// Exhaustive search over subsets; guarded to n <= 12. require_matching
// toggles the matching restriction on the connecting arcs.
std::optional<BadPair> find_bad_pair(const SampledDigraph& dhat, const ModelParams& params,
                                     bool require_matching = true);

struct CycleMatching {
    bool disjoint = false;
    std::vector<Arc> matching;                  // one arc per short cycle
    std::vector<std::vector<int>> clash;        // two intersecting cycles when !disjoint
};

// When all cycles of length < ell are pairwise vertex-disjoint, picks
// the lexicographically smallest arc of each; disjointness makes the
// chosen arcs an independent set, and removing them leaves girth >= ell.
CycleMatching extract_cycle_matching(const SampledDigraph& dprime, int ell);

Digraph remove_arcs(const Digraph& d, std::span<const Arc> arcs);

} // namespace girthforge

#endif

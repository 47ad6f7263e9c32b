#ifndef GIRTHFORGE_CONSTRUCT_HPP
#define GIRTHFORGE_CONSTRUCT_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "girthforge/hom.hpp"
#include "girthforge/model.hpp"

namespace girthforge {

// Output of the pipeline: a sample D' whose short cycles are pairwise
// vertex-disjoint, the matching M removing one arc per short cycle,
// Dstar = D' - M with girth >= ell, and the block projection psi (the
// canonical pattern-colouring of Dstar).
struct ConstructionArtifact {
    Digraph pattern;
    ModelParams params;
    SampledDigraph dprime;
    std::vector<Arc> matching;
    Digraph dstar;
    VertexMapping psi;
    int attempts = 0;
};

struct RetriesExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Samples with seed, seed+1, ... until the short cycles are pairwise
// vertex-disjoint; at most max_retries resamples. The emitted artifact
// satisfies girth(dstar) >= ell, psi surjective, and psi an acyclic
// homomorphism dstar -> pattern, all re-verified here.
ConstructionArtifact construct(const Digraph& pattern, const ModelParams& params,
                               int max_retries = 64);

struct NoMajorityColour : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvalidColouring : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The factor map induced by a colouring phi of dstar: f(i) is the
// smallest colour covering at least n/k of block i (integer threshold
// test k*count >= n). Throws NoMajorityColour when some block has no
// such colour (possible only when |V(C)| > k), InvalidColouring when
// phi is not an acyclic homomorphism dstar -> c.
VertexMapping derive_f(const VertexMapping& phi, const ConstructionArtifact& artifact,
                       const Digraph& c);

enum class EntryStatus { Verified, FailedWithWitness, Truncated };

const char* to_string(EntryStatus s);

// One codomain row of the existence table: a homomorphism from the
// pattern exists iff one from dstar exists.
struct ExistenceEntry {
    Digraph codomain;
    bool hom_from_pattern = false;
    bool hom_from_dstar = false;
    bool agree = false;
    EntryStatus status = EntryStatus::Verified;
    std::optional<VertexMapping> witness; // the one-sided homomorphism on failure
};

// One pattern-pointed codomain row of the factorization table: every
// colouring phi of dstar factors as f o psi for exactly one acyclic
// homomorphism f from the pattern.
struct FactorizationEntry {
    Digraph codomain;
    std::uint64_t colourings_checked = 0;
    EntryStatus status = EntryStatus::Verified;
    std::optional<VertexMapping> witness_phi;  // colouring that fails to factor
    std::optional<VertexMapping> witness_f;    // offending factor when applicable
    std::string detail;
};

struct VerificationReport {
    bool girth_ok = false;
    bool psi_ok = false;
    std::vector<ExistenceEntry> part_ii;
    std::vector<FactorizationEntry> part_iii;

    bool all_verified() const;
    bool any_truncated() const;
};

// Re-checks the artifact invariants and builds both tables. Codomains
// come from the explicit list when given, otherwise all labeled
// loopless digraphs of order 1..k (k <= 3 for that enumeration).
// max_homs caps each colouring enumeration; hitting it marks the entry
// Truncated rather than dropping it.
VerificationReport verify_theorem1(const ConstructionArtifact& artifact, int k,
                                   std::optional<std::vector<Digraph>> codomains =
                                       std::nullopt,
                                   std::optional<std::uint64_t> max_homs = std::nullopt);

struct ArtifactUniqueness {
    UniqueColourabilityCheck check;
    bool pattern_is_core = true; // advisory; warn when false
};

ArtifactUniqueness check_unique_colourability_of_artifact(
    const ConstructionArtifact& artifact,
    std::optional<std::uint64_t> max_homs = std::nullopt);

// Artifact directory layout: pattern.dg, dprime.dg, matching.txt,
// dstar.dg, psi.txt, meta.
void write_artifact(const ConstructionArtifact& artifact, const std::string& dir);
ConstructionArtifact read_artifact(const std::string& dir);

} // namespace girthforge

#endif

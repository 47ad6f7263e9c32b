#ifndef GIRTHFORGE_HOM_HPP
#define GIRTHFORGE_HOM_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "girthforge/digraph.hpp"

namespace girthforge {

// Total map between vertex sets; image[v] is the image of v.
struct VertexMapping {
    int domain_order = 0;
    int codomain_order = 0;
    std::vector<int> image;

    bool valid() const;
    bool surjective() const;
    bool bijective() const;

    bool operator==(const VertexMapping&) const = default;

    static VertexMapping identity(int order);
    static VertexMapping constant(int domain_order, int codomain_order, int value);
};

// sigma(rho(v)); rho then sigma.
VertexMapping compose(const VertexMapping& sigma, const VertexMapping& rho);

// "map <v0_image> <v1_image> ..."
std::string format_mapping(const VertexMapping& m);
VertexMapping parse_mapping_line(const std::string& line, int codomain_order);

// Diagnostics for the two acyclic-homomorphism conditions: an arc that
// is neither collapsed nor mapped to a codomain arc, or a colour class
// whose preimage induces a directed cycle.
struct ArcNotPreserved {
    Arc arc;
};
struct PreimageCyclic {
    int colour;
    std::vector<int> cycle;
};
using HomViolation = std::variant<ArcNotPreserved, PreimageCyclic>;

std::string describe(const HomViolation& v);

// nullopt when rho is an acyclic homomorphism d -> c; otherwise the
// first violation found. Throws std::invalid_argument on dimension
// mismatch.
std::optional<HomViolation> check_acyclic_hom(const Digraph& d, const Digraph& c,
                                              const VertexMapping& rho);

// First acyclic homomorphism found by backtracking (domain vertices in
// descending in+out degree order, candidate images ascending), or
// nullopt when none exists. Deterministic.
std::optional<VertexMapping> find_acyclic_hom(const Digraph& d, const Digraph& c);

struct HomEnumeration {
    std::vector<VertexMapping> maps; // lexicographic in image arrays
    bool truncated = false;          // stopped at the limit
};

// All acyclic homomorphisms d -> c in lexicographic order of image
// arrays, truncated at limit (nullopt = unbounded).
HomEnumeration enumerate_acyclic_homs(const Digraph& d, const Digraph& c,
                                      std::optional<std::uint64_t> limit = std::nullopt);

// All bijections f with uv in A(c) iff f(u)f(v) in A(c), in
// lexicographic order.
std::vector<VertexMapping> automorphisms(const Digraph& c);

bool is_automorphism(const Digraph& c, const VertexMapping& f);

// True iff there is an automorphism f of c with phi = f o psi.
bool differ_by_automorphism(const VertexMapping& psi, const VertexMapping& phi,
                            const Digraph& c);

struct CoreCheck {
    bool core = false;
    // A self-homomorphism that is not an automorphism, when not a core.
    std::optional<VertexMapping> witness;
};

// A digraph is a core when its only acyclic self-homomorphisms are
// automorphisms.
CoreCheck is_core(const Digraph& d);

enum class CheckStatus { True, False, Truncated };

struct PointedCheck {
    CheckStatus status = CheckStatus::True;
    // Two c-colourings of d differing at exactly one vertex.
    std::optional<std::pair<VertexMapping, VertexMapping>> witness;
};

// c is d-pointed iff no two c-colourings of d differ at exactly one
// vertex. max_homs caps the enumeration (Truncated when exceeded).
PointedCheck is_pointed(const Digraph& c, const Digraph& d,
                        std::optional<std::uint64_t> max_homs = std::nullopt);

struct UniqueColourabilityCheck {
    enum class Status { Unique, NoSurjectiveColouring, NonEquivalentPair, Truncated };
    Status status = Status::Unique;
    std::optional<std::pair<VertexMapping, VertexMapping>> pair_witness;
};

// dstar is uniquely d-colourable iff it has a surjective d-colouring
// and all d-colourings pairwise differ by an automorphism of d. Every
// colouring is compared against the lexicographically first surjective
// one; sufficient because differing-by-an-automorphism is an
// equivalence relation.
UniqueColourabilityCheck is_uniquely_colourable(const Digraph& dstar, const Digraph& d,
                                                std::optional<std::uint64_t> max_homs = std::nullopt);

} // namespace girthforge

#endif

#include "girthforge/hom.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "girthforge/cycles.hpp"

namespace girthforge {

bool VertexMapping::valid() const {
    if (static_cast<int>(image.size()) != domain_order) return false;
    for (int x : image)
        if (x < 0 || x >= codomain_order) return false;
    return true;
}

bool VertexMapping::surjective() const {
    std::vector<char> hit(codomain_order, 0);
    for (int x : image) hit[x] = 1;
    return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

bool VertexMapping::bijective() const {
    return domain_order == codomain_order && surjective();
}

VertexMapping VertexMapping::identity(int order) {
    VertexMapping m{order, order, std::vector<int>(order)};
    std::iota(m.image.begin(), m.image.end(), 0);
    return m;
}

VertexMapping VertexMapping::constant(int domain_order, int codomain_order, int value) {
    return {domain_order, codomain_order, std::vector<int>(domain_order, value)};
}

VertexMapping compose(const VertexMapping& sigma, const VertexMapping& rho) {
    if (rho.codomain_order != sigma.domain_order)
        throw std::invalid_argument("composition dimension mismatch");
    VertexMapping out{rho.domain_order, sigma.codomain_order, {}};
    out.image.reserve(rho.image.size());
    for (int x : rho.image) out.image.push_back(sigma.image[x]);
    return out;
}

std::string format_mapping(const VertexMapping& m) {
    std::ostringstream out;
    out << "map";
    for (int x : m.image) out << " " << x;
    return out.str();
}

VertexMapping parse_mapping_line(const std::string& line, int codomain_order) {
    std::istringstream ss(line);
    std::string head;
    if (!(ss >> head) || head != "map")
        throw std::invalid_argument("expected 'map <images...>'");
    VertexMapping m;
    m.codomain_order = codomain_order;
    int x;
    while (ss >> x) m.image.push_back(x);
    m.domain_order = static_cast<int>(m.image.size());
    if (!m.valid()) throw std::invalid_argument("mapping image out of range");
    return m;
}

std::string describe(const HomViolation& v) {
    std::ostringstream out;
    if (const auto* a = std::get_if<ArcNotPreserved>(&v)) {
        out << "arc " << a->arc.from << "->" << a->arc.to
            << " neither collapsed nor mapped to a codomain arc";
    } else {
        const auto& p = std::get<PreimageCyclic>(v);
        out << "preimage of colour " << p.colour << " induces cycle";
        for (int x : p.cycle) out << " " << x;
    }
    return out.str();
}

namespace {

// Deterministic cycle extraction from a vertex class known to be cyclic:
// follow smallest-id in-class successors until a vertex repeats.
std::vector<int> find_cycle_in_class(const Digraph& d, const std::vector<int>& members) {
    std::vector<char> in_class(d.order(), 0);
    for (int v : members) in_class[v] = 1;
    // Peel vertices with no in-class successor; what remains all lie on
    // or lead into a cycle.
    std::vector<int> out_deg(d.order(), 0);
    std::vector<int> stack;
    for (int v : members) {
        for (int w : d.out_neighbours(v))
            if (in_class[w]) ++out_deg[v];
        if (out_deg[v] == 0) stack.push_back(v);
    }
    std::vector<char> removed(d.order(), 0);
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        removed[v] = 1;
        for (int w : d.in_neighbours(v))
            if (in_class[w] && !removed[w] && --out_deg[w] == 0) stack.push_back(w);
    }
    int start = -1;
    for (int v : members)
        if (!removed[v]) {
            start = v;
            break;
        }
    std::vector<int> order_visited;
    std::vector<int> visit_pos(d.order(), -1);
    int cur = start;
    while (visit_pos[cur] < 0) {
        visit_pos[cur] = static_cast<int>(order_visited.size());
        order_visited.push_back(cur);
        for (int w : d.out_neighbours(cur))
            if (in_class[w] && !removed[w]) {
                cur = w;
                break;
            }
    }
    std::vector<int> cycle(order_visited.begin() + visit_pos[cur], order_visited.end());
    // Canonical rotation: smallest id first.
    auto min_it = std::min_element(cycle.begin(), cycle.end());
    std::rotate(cycle.begin(), min_it, cycle.end());
    return cycle;
}

} // namespace

std::optional<HomViolation> check_acyclic_hom(const Digraph& d, const Digraph& c,
                                              const VertexMapping& rho) {
    if (rho.domain_order != d.order() || rho.codomain_order != c.order() || !rho.valid())
        throw std::invalid_argument("mapping does not match digraph dimensions");
    for (const Arc& a : d.arcs()) {
        int x = rho.image[a.from], y = rho.image[a.to];
        if (x != y && !c.has_arc(x, y)) return ArcNotPreserved{a};
    }
    std::vector<std::vector<int>> classes(c.order());
    for (int v = 0; v < d.order(); ++v) classes[rho.image[v]].push_back(v);
    for (int x = 0; x < c.order(); ++x) {
        if (classes[x].size() < 2) continue;
        if (!is_induced_acyclic(d, classes[x]))
            return PreimageCyclic{x, find_cycle_in_class(d, classes[x])};
    }
    return std::nullopt;
}

namespace {

// Backtracking search over total maps V(d) -> V(c). Arc preservation is
// propagated against assigned neighbours on every candidate; the
// acyclicity condition is re-checked on the one colour class the new
// assignment touches.
class HomSearch {
public:
    enum class Order { ById, ByDegreeDesc };

    HomSearch(const Digraph& d, const Digraph& c, Order order)
        : d_(d), c_(c), image_(d.order(), -1), classes_(c.order()) {
        order_.resize(d.order());
        std::iota(order_.begin(), order_.end(), 0);
        if (order == Order::ByDegreeDesc)
            std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) {
                return d_.degree(a) > d_.degree(b);
            });
    }

    // visit returns false to stop the whole search. Returns true when
    // the search space was exhausted.
    template <typename Visit>
    bool run(Visit&& visit) {
        if (c_.order() == 0 && d_.order() > 0) return true; // no maps at all
        return descend(0, visit);
    }

private:
    template <typename Visit>
    bool descend(std::size_t depth, Visit& visit) {
        if (depth == order_.size()) {
            VertexMapping m{d_.order(), c_.order(), image_};
            return visit(m);
        }
        int v = order_[depth];
        for (int x = 0; x < c_.order(); ++x) {
            if (!arcs_ok(v, x)) continue;
            image_[v] = x;
            classes_[x].push_back(v);
            bool keep_going = true;
            if (class_still_acyclic(x)) keep_going = descend(depth + 1, visit);
            classes_[x].pop_back();
            image_[v] = -1;
            if (!keep_going) return false;
        }
        return true;
    }

    bool arcs_ok(int v, int x) const {
        for (int w : d_.out_neighbours(v)) {
            int y = image_[w];
            if (y >= 0 && y != x && !c_.has_arc(x, y)) return false;
        }
        for (int w : d_.in_neighbours(v)) {
            int y = image_[w];
            if (y >= 0 && y != x && !c_.has_arc(y, x)) return false;
        }
        return true;
    }

    bool class_still_acyclic(int x) const {
        if (classes_[x].size() < 2) return true;
        return is_induced_acyclic(d_, classes_[x]);
    }

    const Digraph& d_;
    const Digraph& c_;
    std::vector<int> order_;
    std::vector<int> image_;
    std::vector<std::vector<int>> classes_;
};

} // namespace

std::optional<VertexMapping> find_acyclic_hom(const Digraph& d, const Digraph& c) {
    std::optional<VertexMapping> found;
    HomSearch search(d, c, HomSearch::Order::ByDegreeDesc);
    search.run([&](const VertexMapping& m) {
        found = m;
        return false;
    });
    return found;
}

HomEnumeration enumerate_acyclic_homs(const Digraph& d, const Digraph& c,
                                      std::optional<std::uint64_t> limit) {
    HomEnumeration out;
    if (limit && *limit == 0) {
        out.truncated = true;
        return out;
    }
    // Assigning vertices in id order with ascending candidates visits
    // image arrays in lexicographic order.
    HomSearch search(d, c, HomSearch::Order::ById);
    bool exhausted = search.run([&](const VertexMapping& m) {
        out.maps.push_back(m);
        return !(limit && out.maps.size() >= *limit);
    });
    out.truncated = !exhausted;
    return out;
}

bool is_automorphism(const Digraph& c, const VertexMapping& f) {
    if (f.domain_order != c.order() || f.codomain_order != c.order() || !f.valid())
        return false;
    if (!f.bijective()) return false;
    for (const Arc& a : c.arcs())
        if (!c.has_arc(f.image[a.from], f.image[a.to])) return false;
    // Bijective and arc-count preserving in the forward direction, so
    // the arc map is a bijection of A(c) onto itself.
    return true;
}

std::vector<VertexMapping> automorphisms(const Digraph& c) {
    std::vector<int> perm(c.order());
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<VertexMapping> out;
    do {
        VertexMapping f{c.order(), c.order(), perm};
        if (is_automorphism(c, f)) out.push_back(std::move(f));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

bool differ_by_automorphism(const VertexMapping& psi, const VertexMapping& phi,
                            const Digraph& c) {
    if (psi.domain_order != phi.domain_order || psi.codomain_order != c.order() ||
        phi.codomain_order != c.order())
        throw std::invalid_argument("mappings do not share domain and codomain");
    for (const VertexMapping& f : automorphisms(c))
        if (compose(f, psi) == phi) return true;
    return false;
}

CoreCheck is_core(const Digraph& d) {
    CoreCheck result{true, std::nullopt};
    HomSearch search(d, d, HomSearch::Order::ById);
    search.run([&](const VertexMapping& m) {
        if (!is_automorphism(d, m)) {
            result.core = false;
            result.witness = m;
            return false;
        }
        return true;
    });
    return result;
}

PointedCheck is_pointed(const Digraph& c, const Digraph& d,
                        std::optional<std::uint64_t> max_homs) {
    // Bucket colourings by (position, image-with-that-position-masked);
    // two colourings land in a common bucket iff they differ at exactly
    // that position.
    std::map<std::pair<int, std::vector<int>>, std::vector<int>> buckets;
    std::vector<VertexMapping> homs;
    PointedCheck result;
    HomSearch search(d, c, HomSearch::Order::ById);
    bool exhausted = search.run([&](const VertexMapping& m) {
        int idx = static_cast<int>(homs.size());
        homs.push_back(m);
        for (int v = 0; v < d.order(); ++v) {
            std::vector<int> key = m.image;
            key[v] = -1;
            auto& bucket = buckets[{v, std::move(key)}];
            if (!bucket.empty()) {
                result.status = CheckStatus::False;
                result.witness = {homs[bucket.front()], m};
                return false;
            }
            bucket.push_back(idx);
        }
        return !(max_homs && homs.size() >= *max_homs);
    });
    if (result.status == CheckStatus::False) return result;
    if (!exhausted) {
        result.status = CheckStatus::Truncated;
        return result;
    }
    result.status = CheckStatus::True;
    return result;
}

UniqueColourabilityCheck is_uniquely_colourable(const Digraph& dstar, const Digraph& d,
                                                std::optional<std::uint64_t> max_homs) {
    using Status = UniqueColourabilityCheck::Status;
    UniqueColourabilityCheck result;
    HomEnumeration all = enumerate_acyclic_homs(dstar, d, max_homs);
    if (all.truncated) {
        result.status = Status::Truncated;
        return result;
    }
    const VertexMapping* rep = nullptr;
    for (const VertexMapping& m : all.maps)
        if (m.surjective()) {
            rep = &m;
            break;
        }
    if (!rep) {
        result.status = Status::NoSurjectiveColouring;
        return result;
    }
    std::vector<VertexMapping> autos = automorphisms(d);
    for (const VertexMapping& m : all.maps) {
        bool equivalent = false;
        for (const VertexMapping& f : autos)
            if (compose(f, *rep) == m) {
                equivalent = true;
                break;
            }
        if (!equivalent) {
            result.status = Status::NonEquivalentPair;
            result.pair_witness = {*rep, m};
            return result;
        }
    }
    result.status = Status::Unique;
    return result;
}

} // namespace girthforge

#include "doctest.h"

#include "girthforge/cycles.hpp"
#include "girthforge/hom.hpp"
#include "oracles.hpp"

using namespace girthforge;

namespace {

Digraph digon() { return Digraph(2, {{0, 1}, {1, 0}}); }
Digraph c3() { return Digraph(3, {{0, 1}, {1, 2}, {2, 0}}); }
Digraph c4() { return Digraph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}); }
Digraph tt3() { return Digraph(3, {{0, 1}, {0, 2}, {1, 2}}); }
Digraph k1() { return Digraph(1, {}); }

} // namespace

TEST_CASE("check_acyclic_hom basics") {
    // identity is always a colouring
    for (const Digraph& d : {digon(), c3(), tt3()})
        CHECK(!check_acyclic_hom(d, d, VertexMapping::identity(d.order())));

    // collapsing a cycle to a point violates condition (ii)
    auto violation = check_acyclic_hom(c3(), k1(), VertexMapping::constant(3, 1, 0));
    REQUIRE(violation.has_value());
    auto* pc = std::get_if<PreimageCyclic>(&*violation);
    REQUIRE(pc != nullptr);
    CHECK(pc->colour == 0);
    CHECK(is_directed_cycle(c3(), pc->cycle));

    // directed 4-cycle onto a digon, alternating two-by-two
    VertexMapping rho{4, 2, {0, 0, 1, 1}};
    CHECK(!check_acyclic_hom(c4(), digon(), rho));

    // an arc that is neither collapsed nor mapped to an arc
    Digraph two_iso(2, {});
    auto bad = check_acyclic_hom(digon(), two_iso, VertexMapping::identity(2));
    REQUIRE(bad.has_value());
    CHECK(std::holds_alternative<ArcNotPreserved>(*bad));

    CHECK_THROWS_AS(check_acyclic_hom(c3(), digon(), VertexMapping::identity(3)),
                    std::invalid_argument);
}

TEST_CASE("violations re-check against their inputs") {
    std::mt19937_64 gen(5150);
    for (int trial = 0; trial < 200; ++trial) {
        Digraph d = oracle::random_digraph(2 + gen() % 4, 0.4, gen);
        Digraph c = oracle::random_digraph(1 + gen() % 3, 0.4, gen);
        std::vector<int> image(d.order());
        for (int& x : image) x = static_cast<int>(gen() % c.order());
        VertexMapping rho{d.order(), c.order(), image};
        auto violation = check_acyclic_hom(d, c, rho);
        CHECK(!violation.has_value() == oracle::check_hom(d, c, image));
        if (violation) {
            if (auto* anp = std::get_if<ArcNotPreserved>(&*violation)) {
                CHECK(d.has_arc(anp->arc.from, anp->arc.to));
                int x = image[anp->arc.from], y = image[anp->arc.to];
                CHECK(x != y);
                CHECK(!c.has_arc(x, y));
            } else {
                auto& pc = std::get<PreimageCyclic>(*violation);
                CHECK(is_directed_cycle(d, pc.cycle));
                for (int v : pc.cycle) CHECK(image[v] == pc.colour);
            }
        }
    }
}

TEST_CASE("find_acyclic_hom basics") {
    CHECK(find_acyclic_hom(tt3(), k1()).has_value()); // acyclic collapses to a point
    CHECK(!find_acyclic_hom(c3(), k1()).has_value());
    auto found = find_acyclic_hom(c3(), c3());
    REQUIRE(found.has_value());
    CHECK(!check_acyclic_hom(c3(), c3(), *found));
}

TEST_CASE("enumerate matches brute force on small pairs") {
    std::mt19937_64 gen(424242);
    for (int trial = 0; trial < 120; ++trial) {
        Digraph d = oracle::random_digraph(1 + gen() % 5, 0.35, gen);
        Digraph c = oracle::random_digraph(1 + gen() % 3, 0.45, gen);
        auto mine = enumerate_acyclic_homs(d, c);
        CHECK(!mine.truncated);
        auto truth = oracle::enumerate_homs(d, c);
        CHECK(mine.maps == truth); // includes lexicographic order
        CHECK(find_acyclic_hom(d, c).has_value() == !truth.empty());
        for (const auto& m : mine.maps) CHECK(!check_acyclic_hom(d, c, m));
    }
}

TEST_CASE("enumerate limit and determinism") {
    auto all = enumerate_acyclic_homs(c3(), c3());
    REQUIRE(all.maps.size() == 3); // exactly the rotations
    for (const auto& m : all.maps) CHECK(is_automorphism(c3(), m));

    auto limited = enumerate_acyclic_homs(c3(), c3(), 2);
    CHECK(limited.maps.size() == 2);
    CHECK(limited.truncated);
    CHECK(limited.maps[0] == all.maps[0]);

    auto zero = enumerate_acyclic_homs(c3(), c3(), 0);
    CHECK(zero.maps.empty());
    CHECK(zero.truncated);

    Digraph m3(3, {});
    auto constants = enumerate_acyclic_homs(k1(), m3);
    CHECK(constants.maps.size() == 3);
}

TEST_CASE("composition closure (property)") {
    std::mt19937_64 gen(31337);
    int checked = 0;
    for (int trial = 0; trial < 300 && checked < 60; ++trial) {
        Digraph d = oracle::random_digraph(1 + gen() % 4, 0.35, gen);
        Digraph c = oracle::random_digraph(1 + gen() % 3, 0.5, gen);
        Digraph e = oracle::random_digraph(1 + gen() % 3, 0.5, gen);
        auto rhos = enumerate_acyclic_homs(d, c, 8);
        auto sigmas = enumerate_acyclic_homs(c, e, 8);
        for (const auto& rho : rhos.maps)
            for (const auto& sigma : sigmas.maps) {
                CHECK(!check_acyclic_hom(d, e, compose(sigma, rho)));
                ++checked;
            }
    }
    CHECK(checked >= 60);
}

TEST_CASE("automorphisms") {
    auto rot = automorphisms(c3());
    CHECK(rot.size() == 3);
    CHECK(automorphisms(k1()).size() == 1);
    Digraph two_iso(2, {});
    CHECK(automorphisms(two_iso).size() == 2);
    auto digon_autos = automorphisms(digon());
    CHECK(digon_autos.size() == 2);

    // automorphism composed with a colouring is a colouring (property)
    std::mt19937_64 gen(8);
    for (int trial = 0; trial < 80; ++trial) {
        Digraph d = oracle::random_digraph(1 + gen() % 4, 0.4, gen);
        Digraph c = oracle::random_digraph(1 + gen() % 3, 0.5, gen);
        auto homs = enumerate_acyclic_homs(d, c, 6);
        for (const auto& f : automorphisms(c))
            for (const auto& rho : homs.maps)
                CHECK(!check_acyclic_hom(d, c, compose(f, rho)));
    }
}

TEST_CASE("differ_by_automorphism") {
    auto rots = automorphisms(c3());
    VertexMapping id3 = VertexMapping::identity(3);
    CHECK(differ_by_automorphism(id3, id3, c3()));
    for (const auto& f : rots) CHECK(differ_by_automorphism(id3, compose(f, id3), c3()));
    CHECK(!differ_by_automorphism(id3, VertexMapping::constant(3, 3, 0), c3()));

    // equivalence relation on colourings of a fixed digraph (property)
    std::mt19937_64 gen(9);
    for (int trial = 0; trial < 40; ++trial) {
        Digraph c = oracle::random_digraph(1 + gen() % 3, 0.5, gen);
        Digraph d = oracle::random_digraph(1 + gen() % 4, 0.4, gen);
        auto homs = enumerate_acyclic_homs(d, c, 5).maps;
        for (const auto& x : homs) {
            CHECK(differ_by_automorphism(x, x, c));
            for (const auto& y : homs) {
                bool xy = differ_by_automorphism(x, y, c);
                CHECK(xy == differ_by_automorphism(y, x, c));
                for (const auto& z : homs)
                    if (xy && differ_by_automorphism(y, z, c))
                        CHECK(differ_by_automorphism(x, z, c));
            }
        }
    }
}

TEST_CASE("is_core facts") {
    CHECK(is_core(c3()).core);
    CHECK(is_core(k1()).core);
    CHECK(is_core(digon()).core);
    auto tt = is_core(tt3());
    CHECK(!tt.core);
    REQUIRE(tt.witness.has_value());
    CHECK(!check_acyclic_hom(tt3(), tt3(), *tt.witness));
    CHECK(!is_automorphism(tt3(), *tt.witness));
}

TEST_CASE("is_pointed facts") {
    CHECK(is_pointed(c3(), c3()).status == CheckStatus::True); // cores are self-pointed
    CHECK(is_pointed(k1(), c4()).status == CheckStatus::True); // single colouring
    // brute-force comparison on small random pairs
    std::mt19937_64 gen(6021);
    for (int trial = 0; trial < 120; ++trial) {
        Digraph d = oracle::random_digraph(1 + gen() % 4, 0.4, gen);
        Digraph c = oracle::random_digraph(1 + gen() % 3, 0.5, gen);
        auto homs = oracle::enumerate_homs(d, c);
        bool expected_pointed = true;
        for (std::size_t i = 0; i < homs.size() && expected_pointed; ++i)
            for (std::size_t j = i + 1; j < homs.size() && expected_pointed; ++j) {
                int diff = 0;
                for (int v = 0; v < d.order(); ++v)
                    if (homs[i].image[v] != homs[j].image[v]) ++diff;
                if (diff == 1) expected_pointed = false;
            }
        auto pc = is_pointed(c, d);
        CHECK(pc.status == (expected_pointed ? CheckStatus::True : CheckStatus::False));
        if (pc.status == CheckStatus::False) {
            REQUIRE(pc.witness.has_value());
            auto& [x, y] = *pc.witness;
            CHECK(!check_acyclic_hom(d, c, x));
            CHECK(!check_acyclic_hom(d, c, y));
            int diff = 0;
            for (int v = 0; v < d.order(); ++v)
                if (x.image[v] != y.image[v]) ++diff;
            CHECK(diff == 1);
        }
    }
}

TEST_CASE("every small core is self-pointed") {
    for (const Digraph& d : all_labeled_digraphs_up_to(3))
        if (is_core(d).core) CHECK(is_pointed(d, d).status == CheckStatus::True);
}

TEST_CASE("is_uniquely_colourable") {
    using Status = UniqueColourabilityCheck::Status;
    CHECK(is_uniquely_colourable(c3(), c3()).status == Status::Unique);

    auto tt = is_uniquely_colourable(tt3(), tt3());
    CHECK(tt.status == Status::NonEquivalentPair);
    REQUIRE(tt.pair_witness.has_value());
    CHECK(!differ_by_automorphism(tt.pair_witness->first, tt.pair_witness->second, tt3()));

    // no homomorphism at all -> no surjective colouring
    CHECK(is_uniquely_colourable(c3(), k1()).status == Status::NoSurjectiveColouring);
    // homomorphisms exist but none surjective
    Digraph arc2(2, {{0, 1}});
    Digraph big(3, {{0, 1}, {1, 2}, {2, 0}});
    CHECK(is_uniquely_colourable(arc2, big).status == Status::NoSurjectiveColouring);

    CHECK(is_uniquely_colourable(c3(), c3(), 1).status == Status::Truncated);
}

TEST_CASE("mapping parsing and formatting") {
    VertexMapping m{3, 2, {0, 1, 0}};
    CHECK(format_mapping(m) == "map 0 1 0");
    CHECK(parse_mapping_line("map 0 1 0", 2) == m);
    CHECK_THROWS_AS(parse_mapping_line("map 0 9", 2), std::invalid_argument);
    CHECK_THROWS_AS(parse_mapping_line("zap 0 1", 2), std::invalid_argument);
    CHECK(m.surjective());
    CHECK(!m.bijective());
    CHECK(VertexMapping::identity(3).bijective());
}

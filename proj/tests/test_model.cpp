#include "doctest.h"

#include <cmath>
#include <set>

#include "girthforge/cycles.hpp"
#include "girthforge/model.hpp"
#include "girthforge/rng.hpp"
#include "oracles.hpp"

using namespace girthforge;

namespace {

Digraph digon() { return Digraph(2, {{0, 1}, {1, 0}}); }
Digraph single_arc() { return Digraph(2, {{0, 1}}); }
Digraph k1() { return Digraph(1, {}); }

// Naive reference: count arcs from A to B and test the matching
// condition by scanning endpoint multiplicities.
bool naive_has_bad_pair(const SampledDigraph& dhat, const ModelParams& params,
                        bool require_matching) {
    const BlockDigraph& d0 = dhat.model;
    const int n = d0.block_size();
    const int k = params.k;
    const int cap_exp = static_cast<int>(
        std::ceil(std::pow(static_cast<double>(n), params.eps * params.ell)));
    for (const Arc& e : d0.base().arcs()) {
        for (int dir = 0; dir < 2; ++dir) {
            // dir 0: A in e.from's block, arcs A->B; dir 1: A in e.to's
            // block, arcs B->A (B in e.from's block).
            const int block_a = dir == 0 ? e.from : e.to;
            const int block_b = dir == 0 ? e.to : e.from;
            for (int b = 1; k * b <= n; ++b) {
                const int size_a = n - (k - 1) * b;
                if (size_a < 1) continue;
                const int cap = std::min(b, cap_exp);
                // enumerate combinations via selector vectors
                std::vector<char> sel_a(n, 0), sel_b(n, 0);
                std::fill(sel_a.begin(), sel_a.begin() + size_a, 1);
                do {
                    std::fill(sel_b.begin(), sel_b.end(), 0);
                    std::fill(sel_b.begin(), sel_b.begin() + b, 1);
                    do {
                        std::vector<Arc> between;
                        for (int s = 0; s < n; ++s) {
                            if (!sel_a[s]) continue;
                            for (int t = 0; t < n; ++t) {
                                if (!sel_b[t]) continue;
                                int u = dir == 0 ? d0.vertex(block_a, s)
                                                 : d0.vertex(block_b, t);
                                int v = dir == 0 ? d0.vertex(block_b, t)
                                                 : d0.vertex(block_a, s);
                                if (dhat.arcs.has_arc(u, v)) between.push_back({u, v});
                            }
                        }
                        if (static_cast<int>(between.size()) <= cap) {
                            bool matching = true;
                            std::set<int> ends;
                            for (const Arc& a : between) {
                                if (!ends.insert(a.from).second) matching = false;
                                if (!ends.insert(a.to).second) matching = false;
                            }
                            if (!require_matching || matching) return true;
                        }
                    } while (std::prev_permutation(sel_b.begin(), sel_b.end()));
                } while (std::prev_permutation(sel_a.begin(), sel_a.end()));
            }
        }
    }
    return false;
}

} // namespace

TEST_CASE("model params validation") {
    CHECK_THROWS_AS(ModelParams::checked(6, 3, 2, 0.2, 1), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams::checked(6, 3, 2, 0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams::checked(1, 3, 2, 0.05, 1), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams::checked(6, 1, 2, 0.05, 1), std::invalid_argument);
    auto mp = ModelParams::checked(6, 3, 2, 0.08, 42);
    CHECK(mp.p() == doctest::Approx(std::pow(6.0, -0.92)));
    CHECK(mp.p() > 0.0);
    CHECK(mp.p() < 1.0);
    auto forced = ModelParams::unsafe_checked(6, 3, 2, 0.08, 42, 1.0);
    CHECK(forced.p() == 1.0);
    CHECK_THROWS_AS(ModelParams::unsafe_checked(6, 3, 2, 0.08, 42, 1.5),
                    std::invalid_argument);
}

TEST_CASE("blow-up counts match the closed forms") {
    // a=2, q=1, n=3: 2*3 + 1*9 = 15 arcs on 6 vertices
    BlockDigraph b1(single_arc(), 3);
    CHECK(b1.vertex_count() == 6);
    CHECK(b1.arc_count() == 15);
    CHECK(b1.materialize().arc_count() == 15);

    // single vertex, n=4: within-block order only, acyclic
    BlockDigraph b2(k1(), 4);
    CHECK(b2.vertex_count() == 4);
    CHECK(b2.arc_count() == 6);
    Digraph m2 = b2.materialize();
    CHECK(girth(m2) == std::nullopt);

    // digon, n=2: 2*1 + 2*4 = 10
    BlockDigraph b3(digon(), 2);
    CHECK(b3.arc_count() == 10);
    CHECK(b3.materialize().arc_count() == 10);

    std::mt19937_64 gen(555);
    for (int trial = 0; trial < 20; ++trial) {
        Digraph d = oracle::random_digraph(1 + gen() % 4, 0.4, gen);
        int n = 1 + static_cast<int>(gen() % 5);
        BlockDigraph bd(d, n);
        std::int64_t a = d.order(), q = d.arc_count();
        CHECK(bd.arc_count() == a * n * (n - 1) / 2 + q * n * n);
        CHECK(bd.materialize().arc_count() == bd.arc_count());
    }
}

TEST_CASE("arc indexing is a bijection") {
    BlockDigraph bd(digon(), 3);
    std::set<std::int64_t> seen;
    Digraph full = bd.materialize();
    for (const Arc& a : full.arcs()) {
        std::int64_t idx = bd.arc_index(a.from, a.to);
        CHECK(idx >= 0);
        CHECK(idx < bd.arc_count());
        CHECK(seen.insert(idx).second);
        Arc back = bd.arc_at(idx);
        CHECK(back == a);
    }
    CHECK(static_cast<std::int64_t>(seen.size()) == bd.arc_count());
    // non-arcs map to -1
    CHECK(bd.arc_index(0, 0) == -1);
    CHECK(bd.arc_index(1, 0) == -1); // within-block, decreasing position
}

TEST_CASE("sampling is reproducible and respects forced p") {
    auto params = ModelParams::checked(6, 3, 2, 0.08, 4242);
    BlockDigraph d0(digon(), 6);
    SampledDigraph s1 = sample(d0, params);
    SampledDigraph s2 = sample(d0, params);
    CHECK(s1.arcs == s2.arcs);
    CHECK(s1.seed_used == 4242);

    auto p1 = ModelParams::unsafe_checked(6, 3, 2, 0.08, 7, 1.0);
    CHECK(sample(d0, p1).arcs == d0.materialize());
    auto p0 = ModelParams::unsafe_checked(6, 3, 2, 0.08, 7, 0.0);
    CHECK(sample(d0, p0).arcs.arc_count() == 0);

    // within-block subdigraphs are acyclic in any sample
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        SampledDigraph s = sample_with_seed(d0, 0.5, seed);
        for (int block = 0; block < 2; ++block) {
            std::vector<int> vs;
            for (int pos = 0; pos < 6; ++pos) vs.push_back(d0.vertex(block, pos));
            CHECK(is_induced_acyclic(s.arcs, vs));
        }
    }
}

TEST_CASE("sampled arc count matches the binomial mean") {
    auto params = ModelParams::checked(8, 3, 2, 0.07, 2026);
    BlockDigraph d0(digon(), 8);
    const double p = params.p();
    const double m = static_cast<double>(d0.arc_count());
    const int trials = 10000;
    double total = 0.0;
    for (int t = 0; t < trials; ++t) {
        std::uint64_t seed = rng::derive(params.seed, rng::kStreamTrial, t);
        total += static_cast<double>(sample_with_seed(d0, p, seed).arcs.arc_count());
    }
    double mean = total / trials;
    double expected = m * p;
    double se = std::sqrt(m * p * (1.0 - p) / trials);
    CHECK(std::fabs(mean - expected) <= 3.0 * se);
}

TEST_CASE("sample_induced_arcs equals restriction of the full sample") {
    std::mt19937_64 gen(11);
    Digraph d = oracle::random_digraph(3, 0.5, gen);
    if (d.arc_count() == 0) d = digon();
    BlockDigraph d0(d, 4);
    std::vector<int> subset{0, 1, 4, 5, 9};
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        auto induced = sample_induced_arcs(d0, 0.4, seed, subset);
        SampledDigraph full = sample_with_seed(d0, 0.4, seed);
        std::vector<Arc> expected;
        for (const Arc& a : full.arcs.arcs()) {
            bool in_from = std::find(subset.begin(), subset.end(), a.from) != subset.end();
            bool in_to = std::find(subset.begin(), subset.end(), a.to) != subset.end();
            if (in_from && in_to) expected.push_back(a);
        }
        CHECK(induced == expected);
    }
}

TEST_CASE("classify_large and good_arc_load") {
    BlockDigraph d0(single_arc(), 4);
    std::vector<int> all;
    for (int v = 0; v < 8; ++v) all.push_back(v);
    auto cert = classify_large(all, d0, 2);
    REQUIRE(cert.has_value());
    CHECK(cert->good_arcs == std::vector<Arc>{{0, 1}});

    CHECK(!classify_large(std::vector<int>{0}, d0, 2).has_value());

    // boundary: exactly ceil(n/k) in each block qualifies
    std::vector<int> threshold{0, 1, 4, 5}; // 2 of 4 in each block, k=2
    CHECK(classify_large(threshold, d0, 2).has_value());
    std::vector<int> below{0, 4, 5};
    CHECK(!classify_large(below, d0, 2).has_value());

    // load with all arcs present: n^2 cross arcs
    BlockDigraph d3(single_arc(), 3);
    std::vector<int> all6{0, 1, 2, 3, 4, 5};
    auto cert3 = classify_large(all6, d3, 2);
    REQUIRE(cert3.has_value());
    SampledDigraph full = sample_with_seed(d3, 1.0, 1);
    CHECK(good_arc_load(full, *cert3) == 9);
    SampledDigraph empty = sample_with_seed(d3, 0.0, 1);
    CHECK(good_arc_load(empty, *cert3) == 0);

    // random samples: min over good arcs matches a direct scan
    BlockDigraph dd(digon(), 5);
    std::vector<int> all10;
    for (int v = 0; v < 10; ++v) all10.push_back(v);
    auto certd = classify_large(all10, dd, 2);
    REQUIRE(certd.has_value());
    CHECK(certd->good_arcs.size() == 2);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        SampledDigraph s = sample_with_seed(dd, 0.3, seed);
        std::int64_t direct = -1;
        for (const Arc& e : certd->good_arcs) {
            std::int64_t c = 0;
            for (const Arc& a : s.arcs.arcs())
                if (dd.block_of(a.from) == e.from && dd.block_of(a.to) == e.to) ++c;
            if (direct < 0 || c < direct) direct = c;
        }
        CHECK(good_arc_load(s, *certd) == direct);
    }

    LargeSetCertificate no_arcs;
    CHECK_THROWS_AS(good_arc_load(full, no_arcs), std::invalid_argument);
}

TEST_CASE("find_bad_pair extremes") {
    auto params = ModelParams::checked(4, 3, 2, 0.05, 77);
    BlockDigraph d0(digon(), 4);
    // all cross arcs present: every candidate pair has b*size_a >= cap arcs
    SampledDigraph full = sample_with_seed(d0, 1.0, 1);
    CHECK(!find_bad_pair(full, params).has_value());
    // no arcs at all: the first candidate split is a vacuous bad pair
    SampledDigraph empty = sample_with_seed(d0, 0.0, 1);
    auto bp = find_bad_pair(empty, params);
    REQUIRE(bp.has_value());
    CHECK(bp->arcs_between.empty());
    CHECK(bp->set_a.size() == static_cast<std::size_t>(4 - 1 * bp->set_b.size()));
}

TEST_CASE("find_bad_pair agrees with the naive double-subset scan") {
    auto params = ModelParams::checked(5, 3, 2, 0.06, 3);
    BlockDigraph d0(digon(), 5);
    for (std::uint64_t seed = 0; seed < 24; ++seed) {
        for (double p : {0.35, 0.55, 0.75}) {
            SampledDigraph s = sample_with_seed(d0, p, seed);
            for (bool matching : {true, false}) {
                bool expected = naive_has_bad_pair(s, params, matching);
                auto got = find_bad_pair(s, params, matching);
                CHECK(got.has_value() == expected);
                if (got) {
                    // witness re-verifies
                    const int b = static_cast<int>(got->set_b.size());
                    CHECK(b >= 1);
                    CHECK(params.k * b <= params.n);
                    CHECK(static_cast<int>(got->set_a.size()) ==
                          params.n - (params.k - 1) * b);
                    for (const Arc& a : got->arcs_between)
                        CHECK(s.arcs.has_arc(a.from, a.to));
                    int cap = std::min<int>(
                        b, static_cast<int>(std::ceil(
                               std::pow(5.0, params.eps * params.ell))));
                    CHECK(static_cast<int>(got->arcs_between.size()) <= cap);
                }
            }
        }
    }
}

TEST_CASE("extract_cycle_matching") {
    // two disjoint digons: two arcs removed, girth >= 3 after
    Digraph base(4, {{0, 1}, {1, 0}, {2, 3}, {3, 2}});
    BlockDigraph host(k1(), 4); // host only provides vertex count here
    SampledDigraph s{host, base, 0};
    auto cm = extract_cycle_matching(s, 3);
    REQUIRE(cm.disjoint);
    CHECK(cm.matching.size() == 2);
    Digraph after = remove_arcs(base, cm.matching);
    CHECK(girth_at_least(girth(after), 3));
    // matching arcs are pairwise non-adjacent
    std::set<int> ends;
    for (const Arc& a : cm.matching) {
        CHECK(ends.insert(a.from).second);
        CHECK(ends.insert(a.to).second);
    }

    // already high girth: empty matching
    Digraph c4(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    SampledDigraph s2{host, c4, 0};
    auto cm2 = extract_cycle_matching(s2, 4);
    CHECK(cm2.disjoint);
    CHECK(cm2.matching.empty());

    // digons sharing a vertex: not disjoint, clash witness returned
    Digraph shared(3, {{0, 1}, {1, 0}, {0, 2}, {2, 0}});
    BlockDigraph host3(k1(), 3);
    SampledDigraph s3{host3, shared, 0};
    auto cm3 = extract_cycle_matching(s3, 3);
    CHECK(!cm3.disjoint);
    REQUIRE(cm3.clash.size() == 2);
    CHECK(is_directed_cycle(shared, cm3.clash[0]));
    CHECK(is_directed_cycle(shared, cm3.clash[1]));
}

TEST_CASE("random samples: matching removal yields target girth (property)") {
    auto params = ModelParams::checked(6, 3, 2, 0.07, 10);
    BlockDigraph d0(digon(), 6);
    int returned = 0;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        SampledDigraph s = sample_with_seed(d0, 0.25, seed);
        auto cm = extract_cycle_matching(s, 3);
        if (!cm.disjoint) continue;
        ++returned;
        CHECK(cm.matching.size() == short_cycles(s.arcs, 3).size());
        CHECK(girth_at_least(girth(remove_arcs(s.arcs, cm.matching)), 3));
    }
    CHECK(returned > 0);
}

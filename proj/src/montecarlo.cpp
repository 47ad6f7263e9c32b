#include "girthforge/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "girthforge/cycles.hpp"
#include "girthforge/logspace.hpp"
#include "girthforge/rng.hpp"

namespace girthforge {

double TrialStats::mean() const {
    if (trials == 0) return 0.0;
    return static_cast<double>(sum) / static_cast<double>(trials);
}

double TrialStats::variance() const {
    if (trials < 2) return 0.0;
    const long double s = static_cast<long double>(sum);
    const long double ss = static_cast<long double>(sumsq);
    const long double t = static_cast<long double>(trials);
    long double v = (ss - s * s / t) / (t - 1.0L);
    if (v < 0.0L) v = 0.0L;
    return static_cast<double>(v);
}

double TrialStats::standard_error() const {
    if (trials == 0) return 0.0;
    return std::sqrt(variance() / static_cast<double>(trials));
}

Estimate make_estimate(const TrialStats& stats, double bound_value, BoundKind kind,
                       BoundCompare compare) {
    Estimate e;
    e.trials = stats.trials;
    e.mean = stats.mean();
    e.variance = stats.variance();
    e.standard_error = stats.standard_error();
    e.bound_value = bound_value;
    e.bound_kind = kind;
    switch (compare) {
    case BoundCompare::InfoOnly:
        e.verdict = Verdict::Informational;
        break;
    case BoundCompare::UpperBound:
        e.verdict = (e.mean <= bound_value + 3.0 * e.standard_error)
                        ? Verdict::WithinBound
                        : Verdict::ExceedsBound;
        break;
    case BoundCompare::TwoSided:
        e.verdict = (std::fabs(e.mean - bound_value) <= 3.0 * e.standard_error)
                        ? Verdict::WithinBound
                        : Verdict::ExceedsBound;
        break;
    }
    return e;
}

const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::WithinBound: return "WithinBound";
    case Verdict::ExceedsBound: return "ExceedsBound";
    case Verdict::Informational: return "Informational";
    }
    return "?";
}

const char* to_string(BoundKind k) {
    return k == BoundKind::ExactExpectation ? "exact-expectation"
                                            : "asymptotic-informational";
}

namespace {

// Runs `trials` independent trials producing K counters each. Per-trial
// seeds come from hash(seed, trial index), so scheduling cannot change
// any value; integer aggregation makes the reduction exact.
template <std::size_t K, typename Fn>
std::array<TrialStats, K> run_trials(std::uint64_t trials, const RunOptions& opts,
                                     std::vector<std::array<std::uint64_t, K>>* raw,
                                     Fn&& per_trial) {
    std::array<TrialStats, K> stats{};
    if (raw) raw->assign(trials, {});
    if (opts.exec == Exec::Serial) {
        for (std::uint64_t t = 0; t < trials; ++t) {
            std::array<std::uint64_t, K> vals = per_trial(t);
            for (std::size_t i = 0; i < K; ++i) stats[i].add(vals[i]);
            if (raw) (*raw)[t] = vals;
        }
        return stats;
    }
#ifdef _OPENMP
    const std::int64_t n = static_cast<std::int64_t>(trials);
    const int threads = opts.jobs > 0 ? opts.jobs : omp_get_max_threads();
#pragma omp parallel num_threads(threads)
    {
        std::array<TrialStats, K> local{};
#pragma omp for schedule(static)
        for (std::int64_t t = 0; t < n; ++t) {
            std::array<std::uint64_t, K> vals = per_trial(static_cast<std::uint64_t>(t));
            for (std::size_t i = 0; i < K; ++i) local[i].add(vals[i]);
            if (raw) (*raw)[static_cast<std::size_t>(t)] = vals;
        }
#pragma omp critical
        for (std::size_t i = 0; i < K; ++i) stats[i].merge(local[i]);
    }
#else
    for (std::uint64_t t = 0; t < trials; ++t) {
        std::array<std::uint64_t, K> vals = per_trial(t);
        for (std::size_t i = 0; i < K; ++i) stats[i].add(vals[i]);
        if (raw) (*raw)[t] = vals;
    }
#endif
    return stats;
}

std::uint64_t trial_seed(const ModelParams& params, std::uint64_t stream,
                         std::uint64_t trial) {
    return rng::derive(params.seed, rng::kStreamTrial + stream, trial);
}

// Acyclicity of an arc list over vertices relabelled by `index`, where
// index[v] >= 0 exactly for the participating vertices.
bool arcs_acyclic(int count, const std::vector<int>& index, const std::vector<Arc>& arcs) {
    std::vector<int> indeg(count, 0);
    std::vector<std::vector<int>> out(count);
    for (const Arc& a : arcs) {
        out[index[a.from]].push_back(index[a.to]);
        ++indeg[index[a.to]];
    }
    std::vector<int> stack;
    for (int i = 0; i < count; ++i)
        if (indeg[i] == 0) stack.push_back(i);
    int removed = 0;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        ++removed;
        for (int w : out[v])
            if (--indeg[w] == 0) stack.push_back(w);
    }
    return removed == count;
}

} // namespace

McResult mc_short_cycles(const Digraph& pattern, const ModelParams& params,
                         std::uint64_t trials, const RunOptions& opts) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    const BlockDigraph d0(pattern, params.n);
    const double p = params.p();
    McResult result;
    std::vector<std::array<std::uint64_t, 1>> raw;
    auto stats = run_trials<1>(trials, opts, opts.keep_raw ? &raw : nullptr,
                               [&](std::uint64_t t) -> std::array<std::uint64_t, 1> {
                                   SampledDigraph dhat = sample_with_seed(
                                       d0, p, trial_seed(params, 0, t));
                                   return {static_cast<std::uint64_t>(
                                       short_cycles(dhat.arcs, params.ell).size())};
                               });
    const double bound = logspace::from_log(
        log_short_cycle_expectation_sum(pattern.order(), params.n, params.ell, p));
    result.estimate = make_estimate(stats[0], bound, BoundKind::ExactExpectation,
                                    BoundCompare::UpperBound);
    result.asymptotic_log = log_short_cycle_asymptotic(params.n, params.ell, params.eps);
    if (opts.keep_raw)
        for (const auto& v : raw) result.raw.push_back(v[0]);
    return result;
}

McResult mc_intersecting_pairs(const Digraph& pattern, const ModelParams& params,
                               std::uint64_t trials, const RunOptions& opts) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    const BlockDigraph d0(pattern, params.n);
    const double p = params.p();
    McResult result;
    std::vector<std::array<std::uint64_t, 1>> raw;
    auto stats = run_trials<1>(trials, opts, opts.keep_raw ? &raw : nullptr,
                               [&](std::uint64_t t) -> std::array<std::uint64_t, 1> {
                                   SampledDigraph dhat = sample_with_seed(
                                       d0, p, trial_seed(params, 0, t));
                                   return {static_cast<std::uint64_t>(
                                       intersecting_short_cycle_pairs(dhat.arcs,
                                                                      params.ell))};
                               });
    const double bound = logspace::from_log(
        log_double_cycle_expectation_sum(pattern.order(), params.n, params.ell, p));
    result.estimate = make_estimate(stats[0], bound, BoundKind::ExactExpectation,
                                    BoundCompare::UpperBound);
    result.asymptotic_log = log_intersecting_pairs_asymptotic(params.n);
    if (opts.keep_raw)
        for (const auto& v : raw) result.raw.push_back(v[0]);
    return result;
}

namespace {

DistributionCheck check_against_binomial(const std::vector<std::uint64_t>& counts,
                                         std::int64_t slots, double p) {
    // Compare the empirical CDF with the exact Binomial(slots, p) CDF on
    // integer points covering mean +/- 6 sigma (clamped), each point at
    // tolerance three standard errors of a Bernoulli proportion.
    DistributionCheck check;
    const double trials = static_cast<double>(counts.size());
    const double mean = static_cast<double>(slots) * p;
    const double sigma = std::sqrt(mean * (1.0 - p));
    std::int64_t lo = static_cast<std::int64_t>(std::floor(mean - 6.0 * sigma));
    std::int64_t hi = static_cast<std::int64_t>(std::ceil(mean + 6.0 * sigma));
    lo = std::max<std::int64_t>(lo, 0);
    hi = std::min<std::int64_t>(hi, slots);
    std::vector<std::uint64_t> sorted(counts);
    std::sort(sorted.begin(), sorted.end());
    for (std::int64_t x = lo; x <= hi; ++x) {
        const double exact =
            logspace::from_log(logspace::log_binom_cdf(slots, p, x));
        // the proportion's normal approximation needs a few expected
        // hits on both sides; skip points where it has none
        if (trials * std::min(exact, 1.0 - exact) < 9.0) continue;
        auto it = std::upper_bound(sorted.begin(), sorted.end(),
                                   static_cast<std::uint64_t>(x));
        const double empirical = static_cast<double>(it - sorted.begin()) / trials;
        const double dev = std::fabs(empirical - exact);
        const double se = std::sqrt(exact * (1.0 - exact) / trials);
        ++check.points;
        if (dev > check.max_abs_dev) check.max_abs_dev = dev;
        if (dev / se > check.max_sigma) check.max_sigma = dev / se;
        if (dev > 3.0 * se) check.ok = false;
    }
    return check;
}

} // namespace

GoodArcLoadResult mc_good_arc_load(const Digraph& pattern, const ModelParams& params,
                                   std::span<const int> large_set, std::uint64_t trials,
                                   const RunOptions& opts) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    const BlockDigraph d0(pattern, params.n);
    auto cert = classify_large(large_set, d0, params.k);
    if (!cert) throw std::invalid_argument("set is not large: no good arc");
    const double p = params.p();
    const std::size_t arcs = cert->good_arcs.size();

    // Per-trial raw row: one count per good arc, then the minimum.
    std::vector<std::vector<std::uint64_t>> rows(trials,
                                                 std::vector<std::uint64_t>(arcs + 1));
    std::vector<TrialStats> arc_stats(arcs);
    TrialStats min_stats;
    std::uint64_t at_least_n = 0;

    auto one_trial = [&](std::uint64_t t) {
        SampledDigraph dhat =
            sample_with_seed(d0, p, trial_seed(params, 0, t));
        auto& row = rows[t];
        std::uint64_t min_v = 0;
        for (std::size_t i = 0; i < arcs; ++i) {
            std::uint64_t c = static_cast<std::uint64_t>(
                cross_arc_count(dhat, *cert, cert->good_arcs[i]));
            row[i] = c;
            if (i == 0 || c < min_v) min_v = c;
        }
        row[arcs] = min_v;
    };

    if (opts.exec == Exec::Serial) {
        for (std::uint64_t t = 0; t < trials; ++t) one_trial(t);
    } else {
#ifdef _OPENMP
        const std::int64_t n64 = static_cast<std::int64_t>(trials);
#pragma omp parallel for schedule(static) \
    num_threads(opts.jobs > 0 ? opts.jobs : omp_get_max_threads())
        for (std::int64_t t = 0; t < n64; ++t) one_trial(static_cast<std::uint64_t>(t));
#else
        for (std::uint64_t t = 0; t < trials; ++t) one_trial(t);
#endif
    }

    for (std::uint64_t t = 0; t < trials; ++t) {
        for (std::size_t i = 0; i < arcs; ++i) arc_stats[i].add(rows[t][i]);
        min_stats.add(rows[t][arcs]);
        if (rows[t][arcs] >= static_cast<std::uint64_t>(params.n)) ++at_least_n;
    }

    GoodArcLoadResult result;
    for (std::size_t i = 0; i < arcs; ++i) {
        ArcLoadStats als;
        als.good_arc = cert->good_arcs[i];
        als.slots =
            static_cast<std::int64_t>(cert->block_counts[als.good_arc.from]) *
            cert->block_counts[als.good_arc.to];
        als.estimate =
            make_estimate(arc_stats[i], static_cast<double>(als.slots) * p,
                          BoundKind::ExactExpectation, BoundCompare::TwoSided);
        std::vector<std::uint64_t> counts(trials);
        for (std::uint64_t t = 0; t < trials; ++t) counts[t] = rows[t][i];
        als.distribution = check_against_binomial(counts, als.slots, p);
        result.per_arc.push_back(std::move(als));
    }
    result.min_load = make_estimate(min_stats, static_cast<double>(params.n),
                                    BoundKind::AsymptoticInformational,
                                    BoundCompare::InfoOnly);
    result.p_load_at_least_n =
        static_cast<double>(at_least_n) / static_cast<double>(trials);
    if (opts.keep_raw) result.raw = std::move(rows);
    return result;
}

McResult mc_pr(const Digraph& pattern, const ModelParams& params,
               std::span<const int> cycle, int w, std::uint64_t trials,
               const PrOptions& pr_opts, const RunOptions& opts) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (w < 1 || w > params.n) throw std::invalid_argument("need 1 <= w <= n");
    if (!is_directed_cycle(pattern, cycle))
        throw std::invalid_argument("vertex sequence is not a directed cycle of the pattern");
    const BlockDigraph d0(pattern, params.n);
    const double p = params.p();
    const int r = static_cast<int>(cycle.size());

    McResult result;
    std::vector<std::array<std::uint64_t, 1>> raw;
    auto stats = run_trials<1>(
        trials, opts, opts.keep_raw ? &raw : nullptr,
        [&](std::uint64_t t) -> std::array<std::uint64_t, 1> {
            const std::uint64_t seed = trial_seed(params, pr_opts.stream, t);
            std::vector<int> vertices;
            vertices.reserve(static_cast<std::size_t>(r) * w);
            for (int i = 0; i < r; ++i) {
                const int block = cycle[i];
                if (!pr_opts.random_sets) {
                    for (int pos = 0; pos < w; ++pos)
                        vertices.push_back(d0.vertex(block, pos));
                } else {
                    // Floyd's sampling of a w-subset, counter-based.
                    const std::uint64_t sseed =
                        rng::derive(seed, rng::kStreamSets, static_cast<std::uint64_t>(i));
                    std::vector<char> chosen(params.n, 0);
                    std::uint64_t ctr = 0;
                    for (int j = params.n - w; j < params.n; ++j) {
                        const int pick = static_cast<int>(
                            rng::mix(sseed, ctr++) % static_cast<std::uint64_t>(j + 1));
                        if (chosen[pick]) chosen[j] = 1;
                        else chosen[pick] = 1;
                    }
                    for (int pos = 0; pos < params.n; ++pos)
                        if (chosen[pos]) vertices.push_back(d0.vertex(block, pos));
                }
            }
            std::vector<Arc> arcs = sample_induced_arcs(d0, p, seed, vertices);
            std::vector<int> index(d0.vertex_count(), -1);
            int count = 0;
            for (int v : vertices) index[v] = count++;
            return {arcs_acyclic(count, index, arcs) ? 1ULL : 0ULL};
        });
    result.estimate = make_estimate(
        stats[0],
        logspace::from_log(log_acyclic_sequence_probability_bound(params)),
        BoundKind::AsymptoticInformational, BoundCompare::InfoOnly);
    result.asymptotic_log = log_acyclic_sequence_probability_bound(params);
    if (opts.keep_raw)
        for (const auto& v : raw) result.raw.push_back(v[0]);
    return result;
}

ZuResult mc_zu_acyclic(const ModelParams& params, int tau, int u_size,
                       std::uint64_t trials, const RunOptions& opts) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (tau < 2) throw std::invalid_argument("tau must be >= 2");
    if (tau > u_size) throw std::invalid_argument("tau must not exceed the set size");
    if (u_size > params.n) throw std::invalid_argument("set size exceeds block size");
    if (u_size > 34) throw std::invalid_argument("set size limited to 34 (count overflow)");

    // Digon pattern: cross arcs both ways between blocks 0 and 1.
    const Digraph digon(2, {{0, 1}, {1, 0}});
    const BlockDigraph d0(digon, params.n);
    const double p = params.p();

    std::vector<std::array<std::uint64_t, 2>> raw;
    auto stats = run_trials<2>(
        trials, opts, opts.keep_raw ? &raw : nullptr,
        [&](std::uint64_t t) -> std::array<std::uint64_t, 2> {
            const std::uint64_t seed = trial_seed(params, 0, t);
            const int zpos = static_cast<int>(rng::derive(seed, rng::kStreamPick, 0) %
                                              static_cast<std::uint64_t>(params.n));
            const int z = d0.vertex(0, zpos);
            std::vector<int> vertices{z};
            for (int pos = 0; pos < u_size; ++pos) vertices.push_back(d0.vertex(1, pos));
            std::vector<Arc> arcs = sample_induced_arcs(d0, p, seed, vertices);

            // Arc presence over U positions, plus z->U and U->z.
            std::vector<std::uint64_t> up(u_size, 0); // up[s] = positions t>s with arc
            std::uint64_t from_z = 0, to_z = 0;
            for (const Arc& a : arcs) {
                if (a.from == z && d0.block_of(a.to) == 1)
                    from_z |= 1ULL << d0.pos_of(a.to);
                else if (a.to == z && d0.block_of(a.from) == 1)
                    to_z |= 1ULL << d0.pos_of(a.from);
                else if (a.from != z && a.to != z)
                    up[d0.pos_of(a.from)] |= 1ULL << d0.pos_of(a.to);
            }
            // Count increasing tau-chains u1<...<u_tau with z->u1, chain
            // arcs, u_tau->z: dynamic programming over chain length.
            std::vector<std::uint64_t> paths(u_size, 0);
            for (int s = 0; s < u_size; ++s)
                if (from_z & (1ULL << s)) paths[s] = 1;
            for (int step = 1; step < tau; ++step) {
                std::vector<std::uint64_t> next(u_size, 0);
                for (int s = 0; s < u_size; ++s) {
                    if (paths[s] == 0) continue;
                    for (int t2 = s + 1; t2 < u_size; ++t2)
                        if (up[s] & (1ULL << t2)) next[t2] += paths[s];
                }
                paths.swap(next);
            }
            std::uint64_t y = 0;
            for (int s = 0; s < u_size; ++s)
                if (to_z & (1ULL << s)) y += paths[s];

            std::vector<int> index(d0.vertex_count(), -1);
            int count = 0;
            for (int v : vertices) index[v] = count++;
            const std::uint64_t acyclic = arcs_acyclic(count, index, arcs) ? 1 : 0;
            return {y, acyclic};
        });

    ZuResult result;
    const double expected_y =
        logspace::from_log(log_cycle_count_expectation(u_size, tau, p));
    result.cycle_count.estimate = make_estimate(
        stats[0], expected_y, BoundKind::ExactExpectation, BoundCompare::TwoSided);
    result.cycle_count.asymptotic_log = log_cycle_count_expectation(u_size, tau, p);
    // P(Y=0) <= 2 e^{-E(Y)/3}; applies to the acyclicity probability
    // only in the large-n regime, reported for information.
    const double info_log = std::log(2.0) - expected_y / 3.0;
    result.acyclic.estimate = make_estimate(stats[1], std::exp(info_log),
                                            BoundKind::AsymptoticInformational,
                                            BoundCompare::InfoOnly);
    result.acyclic.asymptotic_log = info_log;
    result.tau_warning = static_cast<double>(tau) <= (2.0 + params.eps) / params.eps;
    if (opts.keep_raw) {
        for (const auto& v : raw) {
            result.cycle_count.raw.push_back(v[0]);
            result.acyclic.raw.push_back(v[1]);
        }
    }
    return result;
}

} // namespace girthforge

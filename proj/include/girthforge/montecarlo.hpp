#ifndef GIRTHFORGE_MONTECARLO_HPP
#define GIRTHFORGE_MONTECARLO_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "girthforge/bounds.hpp"
#include "girthforge/model.hpp"

namespace girthforge {

// Every estimator runs its trials through run_trials below, which has a
// serial reference path and an OpenMP path. Per-trial values are
// integer counts and aggregation is integer sums, so the two paths (and
// any worker count) produce identical statistics.
enum class Exec { Serial, Parallel };

struct TrialStats {
    std::uint64_t trials = 0;
    std::uint64_t sum = 0;
    std::uint64_t sumsq = 0;

    void add(std::uint64_t value) {
        ++trials;
        sum += value;
        sumsq += value * value;
    }
    void merge(const TrialStats& other) {
        trials += other.trials;
        sum += other.sum;
        sumsq += other.sumsq;
    }
    double mean() const;
    double variance() const; // unbiased; 0 when trials < 2
    double standard_error() const;
};

enum class BoundKind { ExactExpectation, AsymptoticInformational };
enum class Verdict { WithinBound, ExceedsBound, Informational };
enum class BoundCompare { UpperBound, TwoSided, InfoOnly };

struct Estimate {
    std::uint64_t trials = 0;
    double mean = 0.0;
    double variance = 0.0;
    double standard_error = 0.0;
    double bound_value = 0.0;
    BoundKind bound_kind = BoundKind::ExactExpectation;
    Verdict verdict = Verdict::Informational;
};

// Statistical tolerance used throughout: three standard errors.
Estimate make_estimate(const TrialStats& stats, double bound_value, BoundKind kind,
                       BoundCompare compare);

const char* to_string(Verdict v);
const char* to_string(BoundKind k);

struct RunOptions {
    Exec exec = Exec::Parallel;
    int jobs = 0; // 0 = library default worker count
    bool keep_raw = false;
};

struct McResult {
    Estimate estimate;
    double asymptotic_log = 0.0;      // informational companion value (log space)
    std::vector<std::uint64_t> raw;   // per-trial counts when keep_raw
};

// Mean count of cycles shorter than params.ell across sampled digraphs,
// against the exact pre-simplification expectation sum.
McResult mc_short_cycles(const Digraph& pattern, const ModelParams& params,
                         std::uint64_t trials, const RunOptions& opts = {});

// Mean count of vertex-sharing short-cycle pairs, against the
// cycle-plus-path expectation sum.
McResult mc_intersecting_pairs(const Digraph& pattern, const ModelParams& params,
                               std::uint64_t trials, const RunOptions& opts = {});

struct DistributionCheck {
    int points = 0;
    double max_abs_dev = 0.0;  // max |empirical CDF - exact CDF|
    double max_sigma = 0.0;    // that deviation in units of its standard error
    bool ok = true;            // every point within 3 standard errors
};

struct ArcLoadStats {
    Arc good_arc;
    std::int64_t slots = 0; // |A ∩ V_i| * |A ∩ V_j|
    Estimate estimate;      // mean cross-arc count vs slots * p (two-sided)
    DistributionCheck distribution;
};

struct GoodArcLoadResult {
    std::vector<ArcLoadStats> per_arc;
    Estimate min_load;       // |D̂/A| against the threshold n (informational)
    double p_load_at_least_n = 0.0;
    std::vector<std::vector<std::uint64_t>> raw; // raw[t] = per-arc counts + min
};

// Per-good-arc cross-arc counts for a large set, compared against the
// exact Binomial(slots, p) law. Throws std::invalid_argument when the
// set is not large.
GoodArcLoadResult mc_good_arc_load(const Digraph& pattern, const ModelParams& params,
                                   std::span<const int> large_set, std::uint64_t trials,
                                   const RunOptions& opts = {});

struct PrOptions {
    bool random_sets = false;  // random w-subsets instead of block prefixes
    std::uint64_t stream = 0;  // distinct streams give independent runs
};

// Fraction of samples in which the union of w-sets along a pattern
// cycle induces an acyclic subdigraph. The analytic comparison value
// exp(-n^(1+eps)/(10k^2)) is asymptotic, hence informational.
McResult mc_pr(const Digraph& pattern, const ModelParams& params,
               std::span<const int> cycle, int w, std::uint64_t trials,
               const PrOptions& pr_opts = {}, const RunOptions& opts = {});

struct ZuResult {
    McResult cycle_count;   // Y against exact C(u_size, tau) p^(tau+1)
    McResult acyclic;       // P(acyclic) with informational 2e^{-E(Y)/3}
    bool tau_warning = false; // tau <= (2+eps)/eps
};

// Digon-pattern experiment: one vertex z of block 0 against the first
// u_size vertices of block 1. Y counts the (tau+1)-cycles through z
// formed by tau increasing vertices of U.
ZuResult mc_zu_acyclic(const ModelParams& params, int tau, int u_size,
                       std::uint64_t trials, const RunOptions& opts = {});

} // namespace girthforge

#endif

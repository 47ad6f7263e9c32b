#ifndef GIRTHFORGE_BOUNDS_HPP
#define GIRTHFORGE_BOUNDS_HPP

#include <optional>
#include <string>
#include <vector>

#include "girthforge/model.hpp"

namespace girthforge {

// Analytic expressions attached to the random model, each evaluated in
// log space. The *_sum expressions are pre-simplification expectation
// bounds that hold for every n; the *_asymptotic ones only kick in for
// very large n and are reported for information, never asserted.

// sum_{i=2}^{ell-1} C(n*a, i) * (i-1)! * p^i  — upper bound on the
// expected number of cycles of length < ell.
double log_short_cycle_expectation_sum(int a, int n, int ell, double p);

// sum over 2<=l1<ell, 1<=l2<ell of
//   2 * C(a*n, l1) * (l1-1)! * l1^2 * C(a*n, l2-1) * (l2-1)! * p^(l1+l2)
// — upper bound on the expected number of intersecting short-cycle
// pairs, via cycle-plus-path counting.
double log_double_cycle_expectation_sum(int a, int n, int ell, double p);

// n^(eps*ell - eps/2) and n^(-1/2), the large-n simplified forms.
double log_short_cycle_asymptotic(int n, int ell, double eps);
double log_intersecting_pairs_asymptotic(int n);

// Expected number of set pairs (|A| = n-(k-1)b, |B| = b) joined by
// exactly s arcs:
//   C(n, n-(k-1)b) * C(n, b) * C((n-(k-1)b)*b, s) * p^s * (1-p)^((n-(k-1)b)b - s)
double log_sparse_pair_expectation(int n, int k, double p, int b, int s);

// Sum of the above over s <= min{b, ceil(n^(eps*ell))}.
double log_sparse_pair_row_total(const ModelParams& params, int b);

// Expected count of (tau+1)-cycles through a fixed vertex using tau
// increasing vertices of a size-u set: C(u, tau) * p^(tau+1).
double log_cycle_count_expectation(int u, int tau, double p);

// exp(-n^(1+eps) / (10 k^2)) — acyclicity probability bound along a
// pattern cycle (asymptotic).
double log_acyclic_sequence_probability_bound(const ModelParams& params);

// sum_{r=2}^{a} C(a,r) (r-1)! C(n,w)^r * exp(-n^(1+eps)/(10k^2)) —
// expected number of bad set sequences.
double log_bad_sequence_expectation(const ModelParams& params, int a, int w);

// 2 * exp(-gamma^2 * m * p / 3) — binomial concentration bound.
double log_concentration_bound(long long m, double p, double gamma);

// 2 * exp(-n^(1+2eps) / (3 (4 k tau)^tau)) — no-cycle probability bound
// after inserting the cycle-count expectation (asymptotic).
double log_no_cycle_probability_bound(const ModelParams& params, int tau);

struct ChernoffRow {
    long long m = 0;
    double prob = 0.0;
    double gamma = 0.0;
    double log_exact_tail = 0.0;
    double log_bound = 0.0;
    bool holds = false; // exact_tail <= bound

    double exact_tail() const;
    double bound() const;
};

// Exact two-sided binomial tail against 2 e^{-gamma^2 m p / 3}.
// Throws std::invalid_argument unless m >= 1, prob in (0,1), and
// gamma in (0, 3/2).
ChernoffRow chernoff_check(long long m, double prob, double gamma);

struct BoundRow {
    std::string name;    // which expression of the chain this instantiates
    std::string inputs;  // "key=value ..." — re-evaluation reproduces value
    double log_value = 0.0;
    double value = 0.0;  // exp(log_value); 0 on underflow
    std::string note;    // degenerate-input flags etc.
};

struct BoundTable {
    std::vector<BoundRow> rows;
};

struct BoundExtras {
    std::optional<int> b;       // sparse-pair |B| for a single detailed row
    std::optional<int> s;       // sparse-pair arc count for that row
    std::optional<int> w;       // set size along pattern cycles; default ceil(n/(2k))
    int tau = 2;
    std::optional<int> u_size;  // defaults to w
    std::optional<long long> m; // optional concentration row
    std::optional<double> prob;
    std::optional<double> gamma;
};

// Evaluates the whole bound chain for the given model parameters and
// pattern order a.
BoundTable eval_bounds(const ModelParams& params, int a, const BoundExtras& extras);

} // namespace girthforge

#endif

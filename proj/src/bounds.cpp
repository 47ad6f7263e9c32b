#include "girthforge/bounds.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "girthforge/logspace.hpp"

namespace girthforge {

using logspace::log_add;
using logspace::log_binom;
using logspace::log_factorial;
using logspace::neg_inf;

namespace {

double log_pow(double base, double exponent) {
    // base > 0 expected; p = 0 handled by callers via neg_inf terms
    return exponent * std::log(base);
}

} // namespace

double log_short_cycle_expectation_sum(int a, int n, int ell, double p) {
    if (p <= 0.0) return neg_inf;
    const long long na = static_cast<long long>(n) * a;
    double acc = neg_inf;
    for (int i = 2; i < ell; ++i) {
        double term = log_binom(na, i) + log_factorial(i - 1) + i * std::log(p);
        acc = log_add(acc, term);
    }
    return acc;
}

double log_double_cycle_expectation_sum(int a, int n, int ell, double p) {
    if (p <= 0.0) return neg_inf;
    const long long an = static_cast<long long>(a) * n;
    double acc = neg_inf;
    for (int l1 = 2; l1 < ell; ++l1)
        for (int l2 = 1; l2 < ell; ++l2) {
            double term = std::log(2.0) + log_binom(an, l1) + log_factorial(l1 - 1) +
                          2.0 * std::log(static_cast<double>(l1)) +
                          log_binom(an, l2 - 1) + log_factorial(l2 - 1) +
                          (l1 + l2) * std::log(p);
            acc = log_add(acc, term);
        }
    return acc;
}

double log_short_cycle_asymptotic(int n, int ell, double eps) {
    return (eps * ell - eps / 2.0) * std::log(static_cast<double>(n));
}

double log_intersecting_pairs_asymptotic(int n) {
    return -0.5 * std::log(static_cast<double>(n));
}

double log_sparse_pair_expectation(int n, int k, double p, int b, int s) {
    const long long size_a = n - static_cast<long long>(k - 1) * b;
    const long long slots = size_a * b;
    if (b < 1 || size_a < 1 || s < 0 || s > slots) return neg_inf;
    if (p <= 0.0) return s == 0 ? log_binom(n, size_a) + log_binom(n, b) : neg_inf;
    if (p >= 1.0) return s == slots ? log_binom(n, size_a) + log_binom(n, b) : neg_inf;
    return log_binom(n, size_a) + log_binom(n, b) + log_binom(slots, s) +
           s * std::log(p) + static_cast<double>(slots - s) * std::log1p(-p);
}

double log_sparse_pair_row_total(const ModelParams& params, int b) {
    const int n = params.n;
    const int cap = std::min<long long>(
        b, static_cast<long long>(
               std::ceil(std::pow(static_cast<double>(n), params.eps * params.ell))));
    double acc = neg_inf;
    for (int s = 0; s <= cap; ++s)
        acc = log_add(acc, log_sparse_pair_expectation(n, params.k, params.p(), b, s));
    return acc;
}

double log_cycle_count_expectation(int u, int tau, double p) {
    if (p <= 0.0) return neg_inf;
    return log_binom(u, tau) + (tau + 1) * std::log(p);
}

double log_acyclic_sequence_probability_bound(const ModelParams& params) {
    const double n = params.n;
    return -std::pow(n, 1.0 + params.eps) / (10.0 * params.k * params.k);
}

double log_bad_sequence_expectation(const ModelParams& params, int a, int w) {
    const double log_pr = log_acyclic_sequence_probability_bound(params);
    double acc = neg_inf;
    for (int r = 2; r <= a; ++r) {
        double term = log_binom(a, r) + log_factorial(r - 1) +
                      r * log_binom(params.n, w) + log_pr;
        acc = log_add(acc, term);
    }
    return acc;
}

double log_concentration_bound(long long m, double p, double gamma) {
    return std::log(2.0) - gamma * gamma * static_cast<double>(m) * p / 3.0;
}

double log_no_cycle_probability_bound(const ModelParams& params, int tau) {
    const double n = params.n;
    return std::log(2.0) -
           std::pow(n, 1.0 + 2.0 * params.eps) /
               (3.0 * std::pow(4.0 * params.k * tau, static_cast<double>(tau)));
}

double ChernoffRow::exact_tail() const { return std::exp(log_exact_tail); }
double ChernoffRow::bound() const { return std::exp(log_bound); }

ChernoffRow chernoff_check(long long m, double prob, double gamma) {
    if (m < 1) throw std::invalid_argument("m must be >= 1");
    if (!(prob > 0.0) || !(prob < 1.0))
        throw std::invalid_argument("prob must lie in (0,1)");
    if (!(gamma > 0.0) || !(gamma < 1.5))
        throw std::invalid_argument("gamma must lie in (0, 3/2)");
    ChernoffRow row;
    row.m = m;
    row.prob = prob;
    row.gamma = gamma;
    row.log_exact_tail = logspace::log_binom_two_sided_tail(m, prob, gamma);
    row.log_bound = log_concentration_bound(m, prob, gamma);
    row.holds = row.log_exact_tail <= row.log_bound;
    return row;
}

namespace {

std::string fmt_inputs(std::initializer_list<std::pair<const char*, double>> kv) {
    std::ostringstream out;
    bool first = true;
    for (const auto& [k, v] : kv) {
        if (!first) out << " ";
        first = false;
        out << k << "=" << v;
    }
    return out.str();
}

BoundRow make_row(std::string name, std::string inputs, double log_value,
                  std::string note = "") {
    BoundRow row;
    row.name = std::move(name);
    row.inputs = std::move(inputs);
    row.log_value = log_value;
    row.value = std::exp(log_value);
    row.note = std::move(note);
    return row;
}

} // namespace

BoundTable eval_bounds(const ModelParams& params, int a, const BoundExtras& extras) {
    BoundTable table;
    const int n = params.n;
    const int k = params.k;
    const int ell = params.ell;
    const double p = params.p();
    const double dn = static_cast<double>(n);
    const int w = extras.w.value_or(static_cast<int>((n + 2 * k - 1) / (2 * k)));
    const int tau = extras.tau;
    const int u_size = extras.u_size.value_or(w);

    table.rows.push_back(make_row(
        "short_cycle_expectation_sum",
        fmt_inputs({{"a", a}, {"n", dn}, {"ell", ell}, {"p", p}}),
        log_short_cycle_expectation_sum(a, n, ell, p),
        "upper bound on E[#cycles shorter than ell], exact for all n"));
    table.rows.push_back(make_row(
        "short_cycle_asymptotic",
        fmt_inputs({{"n", dn}, {"ell", ell}, {"eps", params.eps}}),
        log_short_cycle_asymptotic(n, ell, params.eps),
        "simplified large-n form, informational"));
    table.rows.push_back(make_row(
        "double_cycle_expectation_sum",
        fmt_inputs({{"a", a}, {"n", dn}, {"ell", ell}, {"p", p}}),
        log_double_cycle_expectation_sum(a, n, ell, p),
        "upper bound on E[#intersecting short-cycle pairs], exact for all n"));
    table.rows.push_back(make_row(
        "intersecting_pairs_asymptotic", fmt_inputs({{"n", dn}}),
        log_intersecting_pairs_asymptotic(n),
        "simplified large-n form, informational"));

    if (extras.b) {
        const int b = *extras.b;
        const int s = extras.s.value_or(0);
        std::string note;
        if (b < 1)
            note = "degenerate: requires a nonempty small side (b >= 1)";
        else if (n - static_cast<long long>(k - 1) * b < 1)
            note = "degenerate: large side would be empty";
        table.rows.push_back(make_row(
            "sparse_pair_expectation",
            fmt_inputs({{"n", dn}, {"k", k}, {"p", p}, {"b", b}, {"s", s}}),
            log_sparse_pair_expectation(n, k, p, b, s), note));
    }

    double grand = neg_inf;
    for (int b = 1; k * b <= n; ++b) {
        double row_total = log_sparse_pair_row_total(params, b);
        table.rows.push_back(make_row(
            "sparse_pair_row_total", fmt_inputs({{"n", dn}, {"k", k}, {"b", b}}),
            row_total, "sum over arc counts s up to min{b, ceil(n^(eps*ell))}"));
        grand = log_add(grand, row_total);
    }
    table.rows.push_back(make_row("sparse_pair_grand_total",
                                  fmt_inputs({{"n", dn}, {"k", k}}), grand,
                                  "sum over all set sizes b"));
    table.rows.push_back(make_row(
        "sparse_pair_cap", fmt_inputs({{"n", dn}, {"eps", params.eps}}),
        -std::pow(dn, params.eps) / 6.0,
        "exp(-n^eps/6), large-n comparison value for the grand total"));

    table.rows.push_back(make_row(
        "acyclic_sequence_probability_bound",
        fmt_inputs({{"n", dn}, {"eps", params.eps}, {"k", k}}),
        log_acyclic_sequence_probability_bound(params),
        "exp(-n^(1+eps)/(10k^2)), asymptotic"));
    table.rows.push_back(make_row(
        "bad_sequence_expectation",
        fmt_inputs({{"a", a}, {"n", dn}, {"w", w}, {"k", k}}),
        log_bad_sequence_expectation(params, a, w),
        "sum_r C(a,r)(r-1)! C(n,w)^r * acyclicity bound"));

    table.rows.push_back(make_row(
        "cycle_count_expectation",
        fmt_inputs({{"u", u_size}, {"tau", tau}, {"p", p}}),
        log_cycle_count_expectation(u_size, tau, p),
        "E[#potential (tau+1)-cycles present] = C(u,tau) p^(tau+1), exact"));
    table.rows.push_back(make_row(
        "no_cycle_probability_bound",
        fmt_inputs({{"n", dn}, {"eps", params.eps}, {"k", k}, {"tau", tau}}),
        log_no_cycle_probability_bound(params, tau),
        tau > (2.0 + params.eps) / params.eps
            ? "2exp(-n^(1+2eps)/(3(4k tau)^tau)), asymptotic"
            : "2exp(-n^(1+2eps)/(3(4k tau)^tau)), asymptotic; tau below (2+eps)/eps"));

    if (extras.m && extras.prob && extras.gamma) {
        table.rows.push_back(make_row(
            "concentration_bound",
            fmt_inputs({{"m", static_cast<double>(*extras.m)},
                        {"prob", *extras.prob},
                        {"gamma", *extras.gamma}}),
            log_concentration_bound(*extras.m, *extras.prob, *extras.gamma),
            "2exp(-gamma^2 m p/3)"));
    }
    return table;
}

} // namespace girthforge

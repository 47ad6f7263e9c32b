#include "girthforge/logspace.hpp"

#include <stdexcept>

namespace girthforge::logspace {

double log_sub(double a, double b) {
    if (b == neg_inf) return a;
    if (a < b) throw std::domain_error("log_sub requires a >= b");
    if (a == b) return neg_inf;
    return a + log1mexp(b - a);
}

double log1mexp(double a) {
    if (a > 0.0) throw std::domain_error("log1mexp requires a <= 0");
    if (a == 0.0) return neg_inf;
    // split at -ln 2 for accuracy (Maechler's recipe)
    if (a > -0.6931471805599453) return std::log(-std::expm1(a));
    return std::log1p(-std::exp(a));
}

double log_factorial(long long n) {
    if (n < 0) return neg_inf;
    return std::lgamma(static_cast<double>(n) + 1.0);
}

double log_binom(long long n, long long k) {
    if (k < 0 || k > n || n < 0) return neg_inf;
    return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

double log_binom_pmf(long long m, double p, long long j) {
    if (j < 0 || j > m) return neg_inf;
    if (p <= 0.0) return j == 0 ? 0.0 : neg_inf;
    if (p >= 1.0) return j == m ? 0.0 : neg_inf;
    return log_binom(m, j) + static_cast<double>(j) * std::log(p) +
           static_cast<double>(m - j) * std::log1p(-p);
}

double log_binom_two_sided_tail(long long m, double p, double gamma) {
    const double mean = static_cast<double>(m) * p;
    const double radius = gamma * mean;
    // tail region: |j - mean| >= radius
    auto in_tail = [&](long long j) {
        return std::fabs(static_cast<double>(j) - mean) >= radius;
    };
    long long tail_terms = 0;
    for (long long j = 0; j <= m; ++j)
        if (in_tail(j)) ++tail_terms;
    if (tail_terms <= m + 1 - tail_terms) {
        double acc = neg_inf;
        for (long long j = 0; j <= m; ++j)
            if (in_tail(j)) acc = log_add(acc, log_binom_pmf(m, p, j));
        return acc;
    }
    double middle = neg_inf;
    for (long long j = 0; j <= m; ++j)
        if (!in_tail(j)) middle = log_add(middle, log_binom_pmf(m, p, j));
    if (middle >= 0.0) return neg_inf; // middle mass rounds to 1
    return log1mexp(middle);
}

double log_binom_cdf(long long m, double p, long long j) {
    if (j < 0) return neg_inf;
    if (j >= m) return 0.0;
    // sum whichever side has fewer terms
    if (j + 1 <= m - j) {
        double acc = neg_inf;
        for (long long i = 0; i <= j; ++i) acc = log_add(acc, log_binom_pmf(m, p, i));
        return acc > 0.0 ? 0.0 : acc;
    }
    double upper = neg_inf;
    for (long long i = j + 1; i <= m; ++i) upper = log_add(upper, log_binom_pmf(m, p, i));
    if (upper >= 0.0) return neg_inf;
    return log1mexp(upper);
}

} // namespace girthforge::logspace

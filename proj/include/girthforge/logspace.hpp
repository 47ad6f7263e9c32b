#ifndef GIRTHFORGE_LOGSPACE_HPP
#define GIRTHFORGE_LOGSPACE_HPP

#include <cmath>
#include <limits>

namespace girthforge::logspace {

// Probability and bound arithmetic in natural-log space. Zero is
// represented explicitly as -infinity; expressions like e^{-n^{1+eps}}
// underflow any fixed-width float at modest n.

inline constexpr double neg_inf = -std::numeric_limits<double>::infinity();

// log(e^a + e^b)
inline double log_add(double a, double b) {
    if (a == neg_inf) return b;
    if (b == neg_inf) return a;
    double hi = a > b ? a : b;
    double lo = a > b ? b : a;
    return hi + std::log1p(std::exp(lo - hi));
}

// log(e^a - e^b), requires a >= b
double log_sub(double a, double b);

// log(1 - e^a) for a <= 0
double log1mexp(double a);

double log_factorial(long long n);

// log C(n, k); neg_inf outside the valid range
double log_binom(long long n, long long k);

// log of the Binomial(m, p) point mass at j
double log_binom_pmf(long long m, double p, long long j);

// P(|X - mp| >= gamma * mp) for X ~ Binomial(m, p), summed exactly in
// log space. Sums the smaller of {tail region, middle region} and
// complements when the middle has fewer terms.
double log_binom_two_sided_tail(long long m, double p, double gamma);

// P(X <= j) in log space, exact summation
double log_binom_cdf(long long m, double p, long long j);

inline double from_log(double lg) { return std::exp(lg); }

} // namespace girthforge::logspace

#endif

#pragma once

// Independent reference implementations used only by tests. These must stay
// structurally different from the library code they check: brute-force
// enumeration and direct linear-algebra solves instead of closed forms or
// recursions.

#include <cmath>
#include <cstdint>
#include <vector>

namespace oracles {

// Probability that a string of m i.i.d. Bernoulli(q) trials contains a run
// of at least m_h successes, by exhaustive enumeration of all 2^m outcome
// strings. Only usable for small m (cost 2^m * m).
inline double exhaustive_run_prob(double q, unsigned m_h, unsigned m) {
    double total = 0.0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        unsigned run = 0, best = 0, ones = 0;
        for (unsigned t = 0; t < m; ++t) {
            if (mask >> t & 1) {
                ++ones;
                ++run;
                if (run > best) best = run;
            } else {
                run = 0;
            }
        }
        if (best >= m_h) {
            total += std::pow(q, ones) * std::pow(1.0 - q, m - ones);
        }
    }
    return total;
}

// Expected first-passage time to the absorbing state of the streak chain
// {0, 1, ..., m_h}, solved exactly. E_k = 1 + q E_{k+1} + (1-q) E_0 with
// E_{m_h} = 0; writing E_k = a_k + b_k E_0 reduces the chain to one scalar
// equation.
inline double markov_run_mean(double q, unsigned m_h) {
    // The backward substitution multiplies rounding error by (1/q)^m_h, so
    // run it in extended precision.
    const long double ql = q;
    long double a = 0.0L, b = 1.0L;  // E_0 = 0 + 1 * E_0
    for (unsigned k = 0; k < m_h; ++k) {
        // invert E_k = 1 + q E_{k+1} + (1-q) E_0 for E_{k+1}
        const long double a_next = (a - 1.0L) / ql;
        const long double b_next = (b - (1.0L - ql)) / ql;
        a = a_next;
        b = b_next;
    }
    // E_{m_h} = a + b E_0 = 0
    return static_cast<double>(-a / b);
}

// Upper tail P(X >= k) of Binomial(n, p) by direct pmf recurrence in
// extended precision. Intended for n <= 200; the recurrence stays well
// conditioned because every factor is positive.
inline long double binomial_tail_sum(std::uint64_t k, std::uint64_t n, double p) {
    if (k == 0) return 1.0L;
    const long double pl = p;
    if (pl <= 0.0L) return 0.0L;
    if (pl >= 1.0L) return 1.0L;
    const long double ratio = pl / (1.0L - pl);
    long double pmf = std::pow(1.0L - pl, static_cast<long double>(n));  // P(X = 0)
    long double tail = (k == 0) ? pmf : 0.0L;
    for (std::uint64_t j = 0; j < n; ++j) {
        pmf *= ratio * static_cast<long double>(n - j) / static_cast<long double>(j + 1);
        if (j + 1 >= k) tail += pmf;
    }
    return tail;
}

}  // namespace oracles

#pragma once
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "pebblab/bigmath.hpp"
#include "pebblab/bipartite.hpp"

namespace pebblab {

// Distribution of the support size Z of a uniform multigraph with m total
// edges over N slots: hypergeometric H(N+m-1, N, m). All exact paths use
// arbitrary-precision rationals; a log-gamma float path covers parameter
// ranges where binomials are out of reach.

inline BigRat support_q(uint64_t N, uint64_t m) {
    if (N == 0) throw std::invalid_argument("support_q: N must be >= 1");
    if (m == 0) return 1; // convention: Z == 0 with probability 1 when m == 0
    return BigRat(BigInt(N), BigInt(N) + BigInt(m) - 1);
}

// Pr[Z = s] = C(N,s) C(m-1, m-s) / C(N+m-1, m), zero outside 1<=s<=min(N,m).
// m = 0 is the point mass at s = 0.
inline BigRat support_pmf(uint64_t N, uint64_t m, uint64_t s) {
    if (N == 0) throw std::invalid_argument("support_pmf: N must be >= 1");
    if (m == 0) return s == 0 ? BigRat(1) : BigRat(0);
    if (s < 1 || s > std::min(N, m)) return 0;
    BigInt num = binomial(BigInt(N), BigInt(s)) * binomial(BigInt(m) - 1, BigInt(m - s));
    return BigRat(num, multiset_coefficient(N, m));
}

namespace detail {

// E[(Y+1)^j] for Y hypergeometric H(L, K, l), by direct exact summation.
inline BigRat hypergeometric_shifted_moment(uint64_t L, uint64_t K, uint64_t l, uint64_t j) {
    BigInt denom = binomial(BigInt(L), BigInt(l));
    BigRat acc = 0;
    uint64_t hi = std::min(K, l);
    for (uint64_t r = 0; r <= hi; ++r) {
        BigInt ways = binomial(BigInt(K), BigInt(r)) * binomial(BigInt(L - K), BigInt(l - r));
        if (ways == 0) continue;
        BigInt power = 1;
        for (uint64_t i = 0; i < j; ++i) power *= BigInt(r) + 1;
        acc += BigRat(power * ways, denom);
    }
    return acc;
}

} // namespace detail

// E[Z^k] via the recursion E[Z^k] = (Nm/(N+m-1)) E[(Y+1)^(k-1)] with
// Y ~ H(N+m-2, N-1, m-1).
inline BigRat support_moment(uint64_t N, uint64_t m, uint64_t k) {
    if (N == 0) throw std::invalid_argument("support_moment: N must be >= 1");
    if (k == 0) return 1;
    if (m == 0) return 0;
    BigRat lead(BigInt(N) * BigInt(m), BigInt(N) + BigInt(m) - 1);
    return lead * detail::hypergeometric_shifted_moment(N + m - 2, N - 1, m - 1, k - 1);
}

// Var[Z] = mq/(N+m-2) * (N-1)(1-q), q = N/(N+m-1).
inline BigRat support_variance(uint64_t N, uint64_t m) {
    if (N == 0) throw std::invalid_argument("support_variance: N must be >= 1");
    if (m == 0) return 0;
    if (N + m < 3) return 0; // N = m = 1: Z constant
    BigRat q = support_q(N, m);
    BigRat mq = BigRat(BigInt(m)) * q;
    return mq / (BigInt(N) + BigInt(m) - 2) * (BigInt(N) - 1) * (BigRat(1) - q);
}

// Union bound on Pr[some slot holds >= k pebbles]: N <N over m-k> / <N over m>.
inline BigRat multiplicity_bound(uint64_t N, uint64_t m, uint64_t k) {
    if (N == 0) throw std::invalid_argument("multiplicity_bound: N must be >= 1");
    if (k > m) return 0;
    BigRat b(BigInt(N) * multiset_coefficient(N, m - k), multiset_coefficient(N, m));
    return b > 1 ? BigRat(1) : b;
}

// --- floating-point path (log-gamma), for N far beyond exact range --------

inline double log_binomial_f(double n, double k) {
    if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
    return std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1);
}

inline double support_pmf_f(double N, double m, double s) {
    if (m == 0) return s == 0 ? 1.0 : 0.0;
    if (s < 1 || s > std::min(N, m)) return 0.0;
    return std::exp(log_binomial_f(N, s) + log_binomial_f(m - 1, m - s) -
                    log_binomial_f(N + m - 1, m));
}

inline double support_mean_f(double N, double m) { return N * m / (N + m - 1); }

inline double support_variance_f(double N, double m) {
    double q = N / (N + m - 1);
    return m * q / (N + m - 2) * (N - 1) * (1 - q);
}

inline double multiplicity_bound_f(double N, double m, double k) {
    if (k > m) return 0.0;
    double lb = std::log(N) + log_binomial_f(N + m - k - 1, m - k) - log_binomial_f(N + m - 1, m);
    return std::min(1.0, std::exp(lb));
}

// Empirical check of the concentration Z = mq + o_p(mq): fraction of
// sampled multigraphs with |Z - mq| <= epsilon * mq.
inline double concentration_check(uint32_t n, uint64_t m, double epsilon, uint64_t trials,
                                  uint64_t seed) {
    if (m == 0) throw std::invalid_argument("concentration_check: m must be >= 1");
    if (trials == 0) throw std::invalid_argument("concentration_check: trials must be >= 1");
    uint64_t N = static_cast<uint64_t>(n) * n;
    double mq = static_cast<double>(m) * to_double(support_q(N, m));
    uint64_t hits = 0;
    for (uint64_t trial = 0; trial < trials; ++trial) {
        auto b = sample_multigraph(n, m, mix_seed(seed, 0x636f6e63ull, trial));
        double z = static_cast<double>(support_size(b));
        if (std::abs(z - mq) <= epsilon * mq) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(trials);
}

} // namespace pebblab

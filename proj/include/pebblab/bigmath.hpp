#pragma once
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace pebblab {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// C(n, k) with exact integer arithmetic; 0 outside the triangle.
inline BigInt binomial(const BigInt& n, const BigInt& k) {
    if (k < 0 || k > n) return 0;
    BigInt kk = k;
    if (n - k < kk) kk = n - k;
    BigInt result = 1;
    for (BigInt i = 1; i <= kk; ++i) {
        result *= n - kk + i;
        result /= i; // exact: result is always a running binomial
    }
    return result;
}

// Multiset coefficient <N over t> = C(N+t-1, t): number of multisets of
// size t over N labelled slots.
inline BigInt multiset_coefficient(uint64_t N, uint64_t t) {
    if (N == 0) throw std::invalid_argument("multiset_coefficient: N must be >= 1");
    return binomial(BigInt(N) + BigInt(t) - 1, BigInt(t));
}

inline double to_double(const BigRat& r) {
    return r.convert_to<double>();
}

} // namespace pebblab

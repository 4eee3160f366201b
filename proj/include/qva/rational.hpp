#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>

namespace qva {

/// Exact rational scalar used throughout the library.
using Rat = boost::multiprecision::mpq_rational;
using Int = boost::multiprecision::mpz_int;

inline bool is_zero(const Rat& r) { return r.is_zero(); }

inline Rat rat_pow(const Rat& base, long e)
{
    if (e == 0) return Rat(1);
    Rat b = e > 0 ? base : Rat(1) / base;
    long n = e > 0 ? e : -e;
    Rat acc(1);
    while (n > 0) {
        if (n & 1) acc *= b;
        b *= b;
        n >>= 1;
    }
    return acc;
}

inline Rat factorial(int n)
{
    Int acc = 1;
    for (int i = 2; i <= n; ++i) acc *= i;
    return Rat(acc);
}

inline Rat binomial(long n, long k)
{
    // n may be negative (generalized binomial coefficient)
    if (k < 0) return Rat(0);
    Rat acc(1);
    for (long i = 0; i < k; ++i) {
        acc *= Rat(n - i);
        acc /= Rat(i + 1);
    }
    return acc;
}

inline std::string rat_str(const Rat& r)
{
    std::ostringstream os;
    os << r;
    return os.str();
}

} // namespace qva

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cassert>
#include <cmath>
#include <optional>

namespace nablafrac {

// Exact arithmetic for the integer-order path. Determinants of the boundary
// matrices stay modest at desk scale but exceed int64, hence big rationals.
using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline double to_double(const Rat& x) { return x.convert_to<double>(); }

inline BigInt factorial(long n) {
    assert(n >= 0);
    BigInt r = 1;
    for (long i = 2; i <= n; ++i) r *= i;
    return r;
}

inline BigInt binomial(long n, long k) {
    if (k < 0 || k > n) return 0;
    BigInt r = 1;
    for (long i = 0; i < k; ++i) {
        r *= (n - i);
        r /= (i + 1);
    }
    return r;
}

/// Nearest integer to x if it lies within tol, otherwise nothing.
/// This is the single integer test behind every pole/case decision.
inline std::optional<long> nearest_integer(double x, double tol = 1e-9) {
    double r = std::round(x);
    if (std::abs(x - r) <= tol) return static_cast<long>(r);
    return std::nullopt;
}

} // namespace nablafrac

#pragma once

// Arithmetic foundation: exact big integers/rationals plus a certified
// natural logarithm for big integers.
//
// log_cert(n) returns ln(n) as a double together with a rigorous absolute
// error bound.  The fast path extracts the top 64 bits of n: with
// n = m * 2^e * (1 + eps), |eps| < 2^-63, we get
//   ln n = ln m + e ln 2 + ln(1+eps),
// so the truncation contributes < 2^-62 and the floating evaluation a few
// ulps relative to |ln n|.  When a comparison falls inside the bound the
// caller refines with 50-digit floats (log_refined), whose error is far
// below every tolerance used in this library.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <limits>

#include "errors.hpp"

namespace orbitgrowth {

using BigInt   = boost::multiprecision::cpp_int;
using BigRat   = boost::multiprecision::cpp_rational;
using BigFloat = boost::multiprecision::cpp_bin_float_50;

/// A value with a rigorous absolute error bound: the true quantity lies in
/// [value - err, value + err].
struct CertValue {
    double value = 0.0;
    double err   = 0.0;

    double lo() const { return value - err; }
    double hi() const { return value + err; }
};

/// Certified ln(n) for n >= 1.
inline CertValue log_cert(const BigInt& n) {
    detail::require(n >= 1, "log_cert: argument must be >= 1");
    if (n == 1) return {0.0, 0.0};
    const long bits = static_cast<long>(boost::multiprecision::msb(n)) + 1;
    double approx, relerr;
    if (bits <= 63) {
        approx = std::log(static_cast<double>(static_cast<std::uint64_t>(n)));
        relerr = 4 * std::numeric_limits<double>::epsilon();
    } else {
        const BigInt top = n >> (bits - 63);
        const double m   = static_cast<double>(static_cast<std::uint64_t>(top));
        approx = std::log(m) + static_cast<double>(bits - 63) * std::log(2.0);
        // truncation loses < 2^-62 of relative mass; add float rounding slack
        relerr = 8 * std::numeric_limits<double>::epsilon();
    }
    double abserr = std::abs(approx) * relerr + 3e-19 /* 2^-62 + margin */;
    return {approx, abserr};
}

/// High-precision ln(n); error is ~1e-45 relative, negligible at our scales.
inline BigFloat log_refined(const BigInt& n) {
    detail::ensure(n >= 1, "log_refined: argument must be >= 1");
    return log(BigFloat(n));
}

/// gcd of absolute values (boost gcd already ignores signs for cpp_int).
inline BigInt big_gcd(const BigInt& a, const BigInt& b) {
    return boost::multiprecision::gcd(a, b);
}

inline BigInt big_abs(const BigInt& a) { return boost::multiprecision::abs(a); }

/// Exact integer power with small exponent.
inline BigInt big_pow(BigInt base, unsigned e) {
    BigInt out = 1;
    while (e) {
        if (e & 1u) out *= base;
        base *= base;
        e >>= 1u;
    }
    return out;
}

} // namespace orbitgrowth

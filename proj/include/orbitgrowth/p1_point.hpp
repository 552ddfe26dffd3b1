#pragma once

// Exact rational points on the projective line, with Weil heights.
//
// A point is stored as a coprime integer pair (x : y) in the canonical
// orientation y > 0, or (1 : 0) for the point at infinity.  Heights come in
// three strengths: the exact integer argument max(|x|, |y|), a certified
// double enclosure of its logarithm, and a 50-digit refinement.  Threshold
// comparisons elsewhere in the library are done on the exact arguments, so
// floating error never changes a count.

#include <cstddef>
#include <functional>
#include <string>
#include <utility>

#include "errors.hpp"
#include "int_types.hpp"

namespace orbitgrowth {

class ProjPointQ {
public:
    /// Normalizes an arbitrary integer pair: requires (x, y) != (0, 0),
    /// divides by the gcd, and orients the sign.
    ProjPointQ(BigInt x, BigInt y) : x_(std::move(x)), y_(std::move(y)) {
        detail::require(x_ != 0 || y_ != 0, "ProjPointQ: (0, 0) is not a point");
        const BigInt g = big_gcd(x_, y_);
        x_ /= g;
        y_ /= g;
        orient();
    }

    /// The affine rational point q = x/y.
    explicit ProjPointQ(const BigRat& q)
        : ProjPointQ(boost::multiprecision::numerator(q),
                     boost::multiprecision::denominator(q)) {}

    static ProjPointQ infinity() { return ProjPointQ(coprime_tag{}, 1, 0); }

    /// Fast path for pairs already known to be coprime (e.g. produced by a
    /// resultant-bounded gcd extraction); skips the big-integer gcd.
    static ProjPointQ from_coprime(BigInt x, BigInt y) {
        return ProjPointQ(coprime_tag{}, std::move(x), std::move(y));
    }

    const BigInt& x() const { return x_; }
    const BigInt& y() const { return y_; }
    bool is_infinity() const { return y_ == 0; }

    /// Exact height argument: h(P) = ln height_arg(P).
    BigInt height_arg() const {
        BigInt ax = big_abs(x_);
        return ax >= y_ ? ax : y_;
    }

    /// Weil height ln max(|x|, |y|) as a certified double enclosure.
    CertValue height_cert() const { return log_cert(height_arg()); }

    /// Convenience double height (midpoint of the certified enclosure).
    double height() const { return height_cert().value; }

    /// 50-digit height for tight reporting.
    BigFloat height_refined() const { return log_refined(height_arg()); }

    friend bool operator==(const ProjPointQ& a, const ProjPointQ& b) {
        return a.x_ == b.x_ && a.y_ == b.y_;
    }
    friend bool operator!=(const ProjPointQ& a, const ProjPointQ& b) {
        return !(a == b);
    }
    friend bool operator<(const ProjPointQ& a, const ProjPointQ& b) {
        if (a.x_ != b.x_) return a.x_ < b.x_;
        return a.y_ < b.y_;
    }

    std::string str() const { return "(" + x_.str() + " : " + y_.str() + ")"; }

private:
    struct coprime_tag {};
    ProjPointQ(coprime_tag, BigInt x, BigInt y) : x_(std::move(x)), y_(std::move(y)) {
        detail::ensure(x_ != 0 || y_ != 0, "ProjPointQ: (0, 0) is not a point");
        orient();
    }

    void orient() {
        if (y_ < 0) {
            x_ = -x_;
            y_ = -y_;
        } else if (y_ == 0 && x_ < 0) {
            x_ = -x_;
        }
    }

    BigInt x_, y_;
};

struct ProjPointHash {
    std::size_t operator()(const ProjPointQ& p) const {
        std::size_t h = hash_value(p.x());
        const std::size_t k = hash_value(p.y());
        h ^= k + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }
};

}  // namespace orbitgrowth

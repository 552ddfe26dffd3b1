#pragma once

// Rational self-maps of the projective line over Q, in homogeneous integer
// coordinates: phi = (F : G) with F, G binary forms of a common degree
// d >= 2, jointly primitive, and nonzero resultant.
//
// Evaluation stays exact and cheap: for coprime (x, y), the common factor of
// F(x, y) and G(x, y) divides Res(F, G), so it can be extracted with gcds
// against the (small, fixed) resultant instead of a gcd of two huge values,
// and the reduced pair is coprime by construction.
//
// The height offset C_phi with |h(phi P) - d h(P)| <= C_phi for all rational
// P is computed exactly, as the log of an explicit integer:
//
//   upper direction:  h(phi P) - d h(P) <= ln((d+1) maxcoeff)    (triangle)
//   lower direction:  d h(P) - h(phi P) <= ln max(L1, L2)
//
// where L_i = |A_i|_1 + |B_i|_1 come from the Bezout identities
// A1 F + B1 G = Res X^(2d-1), A2 F + B2 G = Res Y^(2d-1): evaluating the
// X-identity at (x, y) gives |Res| |x|^(2d-1) <= L1 m^(d-1) M with
// m = max(|x|, |y|), M = max(|F|, |G|), likewise for Y, so
// M >= |Res| m^d / max(L1, L2); the extracted common factor is at most
// |Res|, and the two |Res| factors cancel.

#include <string>
#include <utility>
#include <vector>

#include "binform.hpp"
#include "p1_point.hpp"

namespace orbitgrowth {

class RationalMapQ {
public:
    /// Build from homogeneous forms of equal degree >= 2.  The pair is made
    /// jointly primitive and sign-canonical; a zero resultant (common root,
    /// i.e. not actually a degree-d map) is rejected.
    RationalMapQ(BinForm f, BinForm g) : f_(std::move(f)), g_(std::move(g)) {
        detail::require(f_.degree() == g_.degree(),
                        "RationalMapQ: numerator/denominator degree mismatch");
        detail::require(f_.degree() >= 2, "RationalMapQ: degree must be >= 2");
        normalize();
        const BezoutData bz = bezout_data(f_, g_);
        detail::ensure(bz.res != 0, "RationalMapQ: zero resultant");
        res_abs_ = big_abs(bz.res);
        const long d = f_.degree();
        BigInt up = BigInt(d + 1) * std::max(f_.max_abs_coeff(), g_.max_abs_coeff());
        BigInt down = std::max(bz.l1, bz.l2);
        offset_arg_ = std::max(up, down);
    }

    /// Build from dehomogenized numerator/denominator coefficient lists,
    /// highest degree first (the map x -> num(x)/den(x)).
    static RationalMapQ from_coeff_lists(const std::vector<BigInt>& num,
                                         const std::vector<BigInt>& den) {
        auto strip = [](const std::vector<BigInt>& v) {
            std::size_t i = 0;
            while (i < v.size() && v[i] == 0) ++i;
            return std::vector<BigInt>(v.begin() + static_cast<long>(i), v.end());
        };
        const std::vector<BigInt> n = strip(num), m = strip(den);
        detail::require(!n.empty(), "map numerator is zero");
        detail::require(!m.empty(), "map denominator is zero");
        const long dn = static_cast<long>(n.size()) - 1;
        const long dm = static_cast<long>(m.size()) - 1;
        const long d = std::max(dn, dm);
        detail::require(d >= 2, "map degree must be >= 2");
        // homogenize both to degree d: pad on the high-X side
        auto pad = [&](const std::vector<BigInt>& v) {
            std::vector<BigInt> c(static_cast<std::size_t>(d + 1));
            const std::size_t off = static_cast<std::size_t>(d + 1) - v.size();
            for (std::size_t i = 0; i < v.size(); ++i) c[off + i] = v[i];
            return BinForm(std::move(c));
        };
        return RationalMapQ(pad(n), pad(m));
    }

    long degree() const { return f_.degree(); }
    const BinForm& numerator() const { return f_; }
    const BinForm& denominator() const { return g_; }
    const BigInt& resultant_abs() const { return res_abs_; }

    /// Exact integer whose log is the height offset bound.
    const BigInt& height_offset_arg() const { return offset_arg_; }
    CertValue height_offset_cert() const { return log_cert(offset_arg_); }
    double height_offset_bound() const { return height_offset_cert().value; }

    /// gcd(u, v) for values u = F(x,y), v = G(x,y) at a coprime pair, using
    /// gcd(u, v) | Res to keep every gcd operand below |Res|.
    BigInt common_factor(const BigInt& u, const BigInt& v) const {
        if (res_abs_ == 1) return 1;
        const BigInt gu = big_gcd(u % res_abs_, res_abs_);
        const BigInt gv = big_gcd(v % res_abs_, res_abs_);
        return big_gcd(gu, gv);
    }

    ProjPointQ evaluate(const ProjPointQ& p) const {
        BigInt u = f_.eval(p.x(), p.y());
        BigInt v = g_.eval(p.x(), p.y());
        detail::ensure(u != 0 || v != 0, "evaluate: forms share a root");
        const BigInt g = common_factor(u, v);
        if (g != 1) {
            u /= g;
            v /= g;
        }
        return ProjPointQ::from_coprime(std::move(u), std::move(v));
    }

    friend bool operator==(const RationalMapQ& a, const RationalMapQ& b) {
        return a.f_ == b.f_ && a.g_ == b.g_;
    }
    friend bool operator!=(const RationalMapQ& a, const RationalMapQ& b) {
        return !(a == b);
    }

    std::string str() const { return "(" + f_.str() + " : " + g_.str() + ")"; }

private:
    void normalize() {
        detail::require(!g_.is_identically_zero(), "RationalMapQ: zero denominator");
        detail::require(!f_.is_identically_zero(), "RationalMapQ: zero numerator");
        const BigInt c = big_gcd(f_.content(), g_.content());
        std::vector<BigInt> fc(f_.coeffs()), gc(g_.coeffs());
        if (c > 1) {
            for (auto& x : fc) x /= c;
            for (auto& x : gc) x /= c;
        }
        // sign canon: first nonzero coefficient (numerator scanned first) > 0
        int sign = 0;
        for (const auto& x : fc)
            if (x != 0) { sign = (x > 0) ? 1 : -1; break; }
        if (sign == 0)
            for (const auto& x : gc)
                if (x != 0) { sign = (x > 0) ? 1 : -1; break; }
        if (sign < 0) {
            for (auto& x : fc) x = -x;
            for (auto& x : gc) x = -x;
        }
        f_ = BinForm(std::move(fc));
        g_ = BinForm(std::move(gc));
    }

    BinForm f_, g_;
    BigInt res_abs_;
    BigInt offset_arg_;
};

}  // namespace orbitgrowth

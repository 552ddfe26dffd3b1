#pragma once

// Dense univariate polynomials over the integers, plus the handful of exact
// algorithms the rest of the library leans on:
//
//   * content / primitive part,
//   * pseudo-remainder and the subresultant PRS gcd (no coefficient blowup
//     surprises, everything stays in Z),
//   * squarefree test via gcd(f, f'),
//   * fraction-free Bareiss determinant, templated over the entry ring so the
//     same code computes integer resultants (entries BigInt) and
//     critical-value polynomials (entries IntPoly over Z[t]).
//
// Coefficients are stored low degree first; the zero polynomial is an empty
// vector.  All operations are exact.

#include <algorithm>
#include <string>
#include <vector>

#include "int_types.hpp"

namespace orbitgrowth {

class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(BigInt c) { if (c != 0) c_.push_back(std::move(c)); }
    explicit IntPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { trim(); }
    IntPoly(std::initializer_list<BigInt> coeffs) : c_(coeffs) { trim(); }

    static IntPoly monomial(BigInt c, std::size_t k) {
        if (c == 0) return {};
        std::vector<BigInt> v(k + 1);
        v[k] = std::move(c);
        return IntPoly(std::move(v));
    }

    bool is_zero() const { return c_.empty(); }
    /// Degree; -1 for the zero polynomial.
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    const BigInt& lead() const { return c_.back(); }
    const BigInt& operator[](std::size_t i) const { return c_[i]; }
    const std::vector<BigInt>& coeffs() const { return c_; }

    BigInt coeff(std::size_t i) const { return i < c_.size() ? c_[i] : BigInt(0); }

    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const IntPoly& a, const IntPoly& b) { return !(a == b); }

    friend IntPoly operator+(const IntPoly& a, const IntPoly& b) {
        std::vector<BigInt> v(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(i) + b.coeff(i);
        return IntPoly(std::move(v));
    }
    friend IntPoly operator-(const IntPoly& a, const IntPoly& b) {
        std::vector<BigInt> v(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(i) - b.coeff(i);
        return IntPoly(std::move(v));
    }
    friend IntPoly operator-(const IntPoly& a) {
        std::vector<BigInt> v(a.c_);
        for (auto& x : v) x = -x;
        return IntPoly(std::move(v));
    }
    friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<BigInt> v(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                v[i + j] += a.c_[i] * b.c_[j];
        return IntPoly(std::move(v));
    }
    friend IntPoly operator*(const IntPoly& a, const BigInt& s) {
        if (s == 0) return {};
        std::vector<BigInt> v(a.c_);
        for (auto& x : v) x *= s;
        return IntPoly(std::move(v));
    }

    BigInt eval(const BigInt& x) const {            // Horner
        BigInt acc = 0;
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    IntPoly derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<BigInt> v(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * BigInt(i);
        return IntPoly(std::move(v));
    }

    /// gcd of all coefficients (non-negative); 0 for the zero polynomial.
    BigInt content() const {
        BigInt g = 0;
        for (const auto& x : c_) {
            g = big_gcd(g, x);
            if (g == 1) break;
        }
        return g;
    }

    /// Polynomial divided by its content, with the leading coefficient made
    /// positive.  The zero polynomial maps to itself.
    IntPoly primitive() const {
        if (is_zero()) return {};
        BigInt g = content();
        if (lead() < 0) g = -g;
        std::vector<BigInt> v(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) v[i] = c_[i] / g;
        return IntPoly(std::move(v));
    }

    /// Exact division by a divisor known to divide; throws otherwise.
    static IntPoly divexact(const IntPoly& a, const IntPoly& b) {
        detail::ensure(!b.is_zero(), "divexact: division by zero polynomial");
        if (a.is_zero()) return {};
        detail::ensure(a.degree() >= b.degree(), "divexact: degree underflow");
        std::vector<BigInt> rem = a.c_;
        std::vector<BigInt> q(a.c_.size() - b.c_.size() + 1);
        for (long k = static_cast<long>(q.size()) - 1; k >= 0; --k) {
            const BigInt& top = rem[k + b.degree()];
            detail::ensure(top % b.lead() == 0, "divexact: inexact division");
            q[k] = top / b.lead();
            if (q[k] != 0)
                for (std::size_t i = 0; i < b.c_.size(); ++i)
                    rem[k + i] -= q[k] * b.c_[i];
        }
        for (const auto& r : rem)
            detail::ensure(r == 0, "divexact: nonzero remainder");
        return IntPoly(std::move(q));
    }

    std::string str(const std::string& var = "t") const {
        if (is_zero()) return "0";
        std::string out;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (c_[i] == 0) continue;
            BigInt a = c_[i];
            if (!out.empty()) { out += (a < 0) ? " - " : " + "; if (a < 0) a = -a; }
            else if (a < 0) { out += "-"; a = -a; }
            const bool unit = (a == 1 && i > 0);
            if (!unit) out += a.str();
            if (i > 0) {
                if (!unit) out += "*";
                out += var;
                if (i > 1) out += "^" + std::to_string(i);
            }
        }
        return out;
    }

private:
    void trim() { while (!c_.empty() && c_.back() == 0) c_.pop_back(); }
    std::vector<BigInt> c_;
};

// ------------------------------------------------------------------ gcd

namespace detail {

/// prem(a, b): remainder of lead(b)^(deg a - deg b + 1) * a divided by b.
/// The multiplier count is exact (classical normalization) so that the
/// subresultant divisions below stay in Z.
inline IntPoly pseudo_rem(IntPoly a, const IntPoly& b) {
    ensure(!b.is_zero(), "pseudo_rem: zero divisor");
    const long db = b.degree();
    long e = a.degree() - db + 1;
    while (!a.is_zero() && a.degree() >= db) {
        const long shift = a.degree() - db;
        IntPoly t = IntPoly::monomial(a.lead(), static_cast<std::size_t>(shift)) * b;
        a = a * b.lead() - t;
        --e;
    }
    for (; e > 0; --e) a = a * b.lead();
    return a;
}

} // namespace detail

/// Primitive gcd over Z via the subresultant polynomial remainder sequence.
inline IntPoly poly_gcd(IntPoly a, IntPoly b) {
    if (a.is_zero()) return b.primitive();
    if (b.is_zero()) return a.primitive();
    if (a.degree() < b.degree()) std::swap(a, b);
    const BigInt cont = big_gcd(a.content(), b.content());
    a = a.primitive();
    b = b.primitive();
    // subresultant PRS: divide each pseudo-remainder by g*h^delta
    BigInt g = 1, h = 1;
    while (true) {
        const long delta = a.degree() - b.degree();
        IntPoly r = detail::pseudo_rem(a, b);
        if (r.is_zero()) break;
        if (r.degree() == 0) return IntPoly(cont);
        BigInt div = g * big_pow(h, static_cast<unsigned>(delta));
        std::vector<BigInt> v(r.coeffs());
        for (auto& x : v) {
            detail::ensure(x % div == 0, "poly_gcd: subresultant division inexact");
            x /= div;
        }
        a = std::move(b);
        b = IntPoly(std::move(v));
        g = a.lead();
        const BigInt hd = big_pow(g, static_cast<unsigned>(delta));
        // h = g^delta * h^(1-delta), kept exactly via the usual two cases
        h = (delta == 0) ? h : (delta == 1) ? hd : hd / big_pow(h, static_cast<unsigned>(delta - 1));
    }
    return b.primitive() * cont;
}

/// True iff f has no repeated roots (over the complex numbers), i.e.
/// gcd(f, f') is constant.  Content is ignored.
inline bool squarefree(const IntPoly& f) {
    if (f.is_zero()) return false;
    if (f.degree() <= 1) return true;
    return poly_gcd(f, f.derivative()).degree() == 0;
}

// ------------------------------------------------------------------ Bareiss

// Ring concept used below: default-constructible zero, ==, *, -, and an
// exact divide(a, b).  Instances for BigInt and IntPoly follow.
template <class R> struct ring_ops;

template <> struct ring_ops<BigInt> {
    static bool is_zero(const BigInt& a) { return a == 0; }
    static BigInt divexact(const BigInt& a, const BigInt& b) {
        detail::ensure(b != 0 && a % b == 0, "bareiss: inexact integer division");
        return a / b;
    }
};

template <> struct ring_ops<IntPoly> {
    static bool is_zero(const IntPoly& a) { return a.is_zero(); }
    static IntPoly divexact(const IntPoly& a, const IntPoly& b) {
        return IntPoly::divexact(a, b);
    }
};

/// Fraction-free determinant (Bareiss).  The matrix is consumed.
/// Row swaps flip the sign; a zero pivot column means determinant zero.
template <class R>
R bareiss_det(std::vector<std::vector<R>> m) {
    const std::size_t n = m.size();
    if (n == 0) return R(BigInt(1));
    for (const auto& row : m)
        detail::ensure(row.size() == n, "bareiss: matrix not square");
    bool neg = false;
    R prev(BigInt(1));
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (ring_ops<R>::is_zero(m[k][k])) {
            std::size_t p = k + 1;
            while (p < n && ring_ops<R>::is_zero(m[p][k])) ++p;
            if (p == n) return R();  // singular
            std::swap(m[k], m[p]);
            neg = !neg;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                R num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                m[i][j] = ring_ops<R>::divexact(num, prev);
            }
            m[i][k] = R();
        }
        prev = m[k][k];
    }
    R det = m[n - 1][n - 1];
    if (neg) det = -det;
    return det;
}

} // namespace orbitgrowth

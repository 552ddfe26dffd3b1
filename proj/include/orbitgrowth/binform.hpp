#pragma once

// Homogeneous binary forms over Z: the coefficient layer underneath rational
// maps on the projective line.
//
//   * BinForm stores a degree-d form as d+1 coefficients, X-degree
//     descending: c[i] is the coefficient of X^(d-i) Y^i.  The formal degree
//     is fixed by the coefficient count even when extreme coefficients
//     vanish, which is what resultant computations require.
//   * sylvester_matrix is generic over the entry ring, so the same builder
//     serves integer resultants (BigInt entries) and critical-value
//     polynomials (entries in Z[t]).
//   * bezout_data solves A F + B G = Res * X^(2d-1) (and the Y-side twin)
//     exactly.  The solution is integral -- it is an adjugate row scaled by
//     the resultant -- and both the integrality and the identity itself are
//     verified before anything is returned.

#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "poly.hpp"

namespace orbitgrowth {

class BinForm {
public:
    BinForm() = default;  // degree-0 zero form

    /// Coefficients X-degree descending; the degree is coeffs.size() - 1.
    explicit BinForm(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) {
        detail::require(!c_.empty(), "BinForm: empty coefficient list");
    }

    /// The form c * X^(d-k) Y^k of degree d.
    static BinForm monomial(long d, BigInt c, long k) {
        detail::require(d >= 0 && 0 <= k && k <= d, "BinForm::monomial: bad degree");
        std::vector<BigInt> v(static_cast<std::size_t>(d) + 1);
        v[static_cast<std::size_t>(k)] = std::move(c);
        return BinForm(std::move(v));
    }

    long degree() const { return static_cast<long>(c_.size()) - 1; }
    bool is_identically_zero() const {
        for (const auto& x : c_)
            if (x != 0) return false;
        return true;
    }

    /// Coefficient of X^(degree-i) Y^i.
    const BigInt& operator[](std::size_t i) const { return c_[i]; }
    const std::vector<BigInt>& coeffs() const { return c_; }

    friend bool operator==(const BinForm& a, const BinForm& b) { return a.c_ == b.c_; }
    friend bool operator!=(const BinForm& a, const BinForm& b) { return !(a == b); }

    BigInt eval(const BigInt& x, const BigInt& y) const {
        // Horner in x with a running power of y
        BigInt acc = 0, yp = 1;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            acc = acc * x + c_[i] * yp;
            yp *= y;
        }
        // the loop multiplies c_[i] by y^i and by x^(d-i) through the
        // remaining iterations: total x-multiplications after adding c_[i]
        // equal d - i, as required
        return acc;
    }

    /// Floating evaluation with a directed error bound: |true - value| <= err.
    void eval_float(const BigFloat& x, const BigFloat& y, BigFloat& value,
                    BigFloat& err) const {
        using std::abs;
        BigFloat acc = 0, mag = 0, yp = 1, ax = abs(x), ay = abs(y);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            const BigFloat c(c_[i]);
            acc = acc * x + c * yp;
            mag = mag * ax + abs(c) * yp;
            yp *= ay;
        }
        value = acc;
        // every term passes through at most degree+2 roundings; inflate 4x
        const BigFloat eps = std::numeric_limits<BigFloat>::epsilon();
        err = mag * eps * BigFloat(4 * (static_cast<int>(c_.size()) + 2));
    }

    friend BinForm operator+(const BinForm& a, const BinForm& b) {
        detail::require(a.degree() == b.degree(), "BinForm+: degree mismatch");
        std::vector<BigInt> v(a.c_.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.c_[i] + b.c_[i];
        return BinForm(std::move(v));
    }
    friend BinForm operator-(const BinForm& a, const BinForm& b) {
        detail::require(a.degree() == b.degree(), "BinForm-: degree mismatch");
        std::vector<BigInt> v(a.c_.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.c_[i] - b.c_[i];
        return BinForm(std::move(v));
    }
    friend BinForm operator*(const BinForm& a, const BinForm& b) {
        std::vector<BigInt> v(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                v[i + j] += a.c_[i] * b.c_[j];
        return BinForm(std::move(v));
    }
    friend BinForm operator*(const BinForm& a, const BigInt& s) {
        std::vector<BigInt> v(a.c_);
        for (auto& x : v) x *= s;
        return BinForm(std::move(v));
    }

    /// Partial derivative in X (degree drops by one).
    BinForm dx() const {
        detail::require(degree() >= 1, "BinForm::dx: degree 0");
        std::vector<BigInt> v(c_.size() - 1);
        const long d = degree();
        for (long i = 0; i < d; ++i)
            v[static_cast<std::size_t>(i)] = c_[static_cast<std::size_t>(i)] * BigInt(d - i);
        return BinForm(std::move(v));
    }

    /// Partial derivative in Y (degree drops by one).
    BinForm dy() const {
        detail::require(degree() >= 1, "BinForm::dy: degree 0");
        std::vector<BigInt> v(c_.size() - 1);
        for (std::size_t i = 0; i + 1 < c_.size(); ++i) v[i] = c_[i + 1] * BigInt(i + 1);
        return BinForm(std::move(v));
    }

    /// gcd of all coefficients (non-negative; 0 for the zero form).
    BigInt content() const {
        BigInt g = 0;
        for (const auto& x : c_) {
            g = big_gcd(g, x);
            if (g == 1) break;
        }
        return g;
    }

    BigInt max_abs_coeff() const {
        BigInt m = 0;
        for (const auto& x : c_) {
            BigInt a = big_abs(x);
            if (a > m) m = std::move(a);
        }
        return m;
    }

    BigInt l1_norm() const {
        BigInt s = 0;
        for (const auto& x : c_) s += big_abs(x);
        return s;
    }

    /// Dehomogenization F(t, 1) as a polynomial in t (low degree first).
    IntPoly to_poly() const {
        std::vector<BigInt> v(c_.rbegin(), c_.rend());
        return IntPoly(std::move(v));
    }

    /// Homogenize a polynomial to a form of the given degree.
    static BinForm from_poly(const IntPoly& p, long degree) {
        detail::require(degree >= p.degree() && degree >= 0,
                        "BinForm::from_poly: degree too small");
        std::vector<BigInt> v(static_cast<std::size_t>(degree) + 1);
        for (long i = 0; i <= p.degree(); ++i)
            v[static_cast<std::size_t>(degree - i)] = p[static_cast<std::size_t>(i)];
        return BinForm(std::move(v));
    }

    std::string str() const {
        const long d = degree();
        std::string out;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            BigInt a = c_[i];
            if (!out.empty()) { out += (a < 0) ? " - " : " + "; if (a < 0) a = -a; }
            else if (a < 0) { out += "-"; a = -a; }
            const long xe = d - static_cast<long>(i), ye = static_cast<long>(i);
            const bool unit = (a == 1) && (xe > 0 || ye > 0);
            if (!unit) out += a.str();
            if (!unit && (xe > 0 || ye > 0)) out += "*";
            if (xe > 0) { out += "X"; if (xe > 1) out += "^" + std::to_string(xe); }
            if (ye > 0) {
                if (xe > 0) out += "*";
                out += "Y";
                if (ye > 1) out += "^" + std::to_string(ye);
            }
        }
        return out.empty() ? "0" : out;
    }

private:
    std::vector<BigInt> c_{BigInt(0)};
};

/// Wronskian F_X G_Y - F_Y G_X, a form of degree deg F + deg G - 2.
inline BinForm wronskian(const BinForm& f, const BinForm& g) {
    return f.dx() * g.dy() - f.dy() * g.dx();
}

/// Sylvester matrix of two coefficient sequences (X-degree descending,
/// formal degrees a.size()-1 and b.size()-1), generic over the entry ring.
template <class R>
std::vector<std::vector<R>> sylvester_matrix(const std::vector<R>& a,
                                             const std::vector<R>& b) {
    const std::size_t m = a.size() - 1, n = b.size() - 1;
    std::vector<std::vector<R>> s(m + n, std::vector<R>(m + n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < a.size(); ++j) s[i][i + j] = a[j];
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < b.size(); ++j) s[n + i][i + j] = b[j];
    return s;
}

/// Resultant of two binary forms (with respect to their formal degrees).
inline BigInt resultant(const BinForm& f, const BinForm& g) {
    if (f.degree() == 0 && g.degree() == 0) return 1;
    return bareiss_det<BigInt>(sylvester_matrix<BigInt>(f.coeffs(), g.coeffs()));
}

/// The two Bezout identities attached to a pair of degree-d forms with
/// nonzero resultant:
///
///   A1 F + B1 G = Res * X^(2d-1)        A2 F + B2 G = Res * Y^(2d-1)
///
/// with deg A_i = deg B_i = d - 1.  Such A_i, B_i are unique (coprimality of
/// F and G pins them down in those degrees) and integral, and l1/l2 record
/// the coefficient norms |A_i|_1 + |B_i|_1 that the height-offset bound
/// consumes.
struct BezoutData {
    BinForm a1, b1, a2, b2;
    BigInt res;
    BigInt l1, l2;
};

inline BezoutData bezout_data(const BinForm& f, const BinForm& g) {
    const long d = f.degree();
    detail::require(d >= 1 && g.degree() == d, "bezout_data: need equal degrees >= 1");
    const BigInt res = resultant(f, g);
    detail::require(res != 0, "bezout_data: zero resultant");

    // Row vector w = (A coeffs, B coeffs) satisfies w S = target, i.e.
    // S^T w = target^T; solve for both targets at once by rational
    // Gauss-Jordan on [S^T | res e_0 | res e_(2d-1)].
    const std::size_t nn = static_cast<std::size_t>(2 * d);
    auto s = sylvester_matrix<BigInt>(f.coeffs(), g.coeffs());
    std::vector<std::vector<BigRat>> m(nn, std::vector<BigRat>(nn + 2));
    for (std::size_t i = 0; i < nn; ++i)
        for (std::size_t j = 0; j < nn; ++j) m[i][j] = BigRat(s[j][i]);
    m[0][nn] = BigRat(res);
    m[nn - 1][nn + 1] = BigRat(res);

    for (std::size_t col = 0; col < nn; ++col) {
        std::size_t piv = col;
        while (piv < nn && m[piv][col] == 0) ++piv;
        detail::ensure(piv < nn, "bezout_data: singular system with nonzero resultant");
        std::swap(m[piv], m[col]);
        const BigRat inv = m[col][col];
        for (std::size_t j = col; j < nn + 2; ++j) m[col][j] /= inv;
        for (std::size_t i = 0; i < nn; ++i) {
            if (i == col || m[i][col] == 0) continue;
            const BigRat c = m[i][col];
            for (std::size_t j = col; j < nn + 2; ++j) m[i][j] -= c * m[col][j];
        }
    }

    auto extract = [&](std::size_t rhs, BinForm& a_out, BinForm& b_out) {
        std::vector<BigInt> av(static_cast<std::size_t>(d)), bv(static_cast<std::size_t>(d));
        for (std::size_t i = 0; i < nn; ++i) {
            const BigRat& q = m[i][nn + rhs];
            detail::ensure(boost::multiprecision::denominator(q) == 1,
                           "bezout_data: non-integral solution");
            BigInt z = boost::multiprecision::numerator(q);
            if (i < static_cast<std::size_t>(d)) av[i] = std::move(z);
            else bv[i - static_cast<std::size_t>(d)] = std::move(z);
        }
        a_out = BinForm(std::move(av));
        b_out = BinForm(std::move(bv));
    };

    BezoutData out;
    out.res = res;
    extract(0, out.a1, out.b1);
    extract(1, out.a2, out.b2);

    // verify both identities exactly
    const BinForm lhs1 = out.a1 * f + out.b1 * g;
    const BinForm lhs2 = out.a2 * f + out.b2 * g;
    const BinForm t1 = BinForm::monomial(2 * d - 1, res, 0);
    const BinForm t2 = BinForm::monomial(2 * d - 1, res, 2 * d - 1);
    detail::ensure(lhs1 == t1 && lhs2 == t2, "bezout_data: identity check failed");

    out.l1 = out.a1.l1_norm() + out.b1.l1_norm();
    out.l2 = out.a2.l1_norm() + out.b2.l1_norm();
    return out;
}

}  // namespace orbitgrowth

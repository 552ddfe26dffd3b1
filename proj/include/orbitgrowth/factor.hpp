#pragma once

// Exact factorization of univariate integer polynomials into irreducibles,
// sized for the small degrees this library produces (critical-value
// polynomials have degree <= 2d - 2).
//
// Pipeline: Yun squarefree decomposition, then per squarefree part the
// classical monic Zassenhaus route -- make the polynomial monic via the
// substitution y = lc * x, factor modulo a small prime where it stays
// squarefree (Berlekamp), Hensel-lift the modular factorization above the
// Mignotte coefficient bound, and recombine modular factors by exact trial
// division over Z.

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "poly.hpp"

namespace orbitgrowth {

struct PolyFactor {
    IntPoly poly;               ///< primitive, positive leading coefficient
    unsigned multiplicity = 1;
};

struct PolyFactorization {
    /// f = unit * prod factors[i].poly ^ factors[i].multiplicity
    BigInt unit = 1;
    std::vector<PolyFactor> factors;
};

namespace detail {

// ---------------------------------------------------------- F_p polynomials

using ModPoly = std::vector<std::int64_t>;  // low degree first, reduced mod p

inline std::int64_t mod_inv(std::int64_t a, std::int64_t p) {
    std::int64_t t = 0, nt = 1, r = p, nr = ((a % p) + p) % p;
    while (nr != 0) {
        const std::int64_t q = r / nr;
        t -= q * nt; std::swap(t, nt);
        r -= q * nr; std::swap(r, nr);
    }
    ensure(r == 1, "mod_inv: not invertible");
    return ((t % p) + p) % p;
}

inline void mp_trim(ModPoly& a) { while (!a.empty() && a.back() == 0) a.pop_back(); }

inline ModPoly mp_mul(const ModPoly& a, const ModPoly& b, std::int64_t p) {
    if (a.empty() || b.empty()) return {};
    ModPoly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    mp_trim(c);
    return c;
}

inline ModPoly mp_rem(ModPoly a, const ModPoly& b, std::int64_t p) {
    ensure(!b.empty(), "mp_rem: zero divisor");
    const std::int64_t inv = mod_inv(b.back(), p);
    mp_trim(a);
    while (a.size() >= b.size()) {
        const std::int64_t q = a.back() * inv % p;
        const std::size_t off = a.size() - b.size();
        if (q != 0)
            for (std::size_t i = 0; i + 1 < b.size(); ++i)
                a[off + i] = ((a[off + i] - q * b[i]) % p + p) % p;
        a.pop_back();
        mp_trim(a);
    }
    return a;
}

inline ModPoly mp_divexact(const ModPoly& a, const ModPoly& b, std::int64_t p) {
    ensure(!b.empty() && a.size() >= b.size(), "mp_divexact: bad sizes");
    ModPoly r = a, q(a.size() - b.size() + 1, 0);
    const std::int64_t inv = mod_inv(b.back(), p);
    for (long k = static_cast<long>(q.size()) - 1; k >= 0; --k) {
        const std::int64_t qq = r[k + b.size() - 1] * inv % p;
        q[k] = qq;
        if (qq != 0)
            for (std::size_t j = 0; j < b.size(); ++j)
                r[k + j] = ((r[k + j] - qq * b[j]) % p + p) % p;
    }
    for (const auto& x : r) ensure(x == 0, "mp_divexact: not divisible");
    mp_trim(q);
    return q;
}

inline ModPoly mp_gcd(ModPoly a, ModPoly b, std::int64_t p) {
    mp_trim(a);
    mp_trim(b);
    while (!b.empty()) {
        a = mp_rem(std::move(a), b, p);
        std::swap(a, b);
    }
    if (!a.empty()) {
        const std::int64_t inv = mod_inv(a.back(), p);
        for (auto& x : a) x = x * inv % p;
    }
    return a;
}

inline ModPoly mp_monic(ModPoly a, std::int64_t p) {
    if (a.empty()) return a;
    const std::int64_t inv = mod_inv(a.back(), p);
    for (auto& x : a) x = x * inv % p;
    return a;
}

inline ModPoly mp_from(const IntPoly& f, std::int64_t p) {
    ModPoly a(f.coeffs().size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        BigInt r = f[i] % p;
        if (r < 0) r += p;
        a[i] = static_cast<std::int64_t>(r);
    }
    mp_trim(a);
    return a;
}

inline ModPoly mp_deriv(const ModPoly& a, std::int64_t p) {
    if (a.size() <= 1) return {};
    ModPoly d(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i)
        d[i - 1] = static_cast<std::int64_t>(i % p) * a[i] % p;
    mp_trim(d);
    return d;
}

inline ModPoly mp_powmod(ModPoly base, BigInt e, const ModPoly& f, std::int64_t p) {
    ModPoly acc{1};
    base = mp_rem(std::move(base), f, p);
    while (e > 0) {
        if ((e & 1) != 0) acc = mp_rem(mp_mul(acc, base, p), f, p);
        base = mp_rem(mp_mul(base, base, p), f, p);
        e >>= 1;
    }
    return acc;
}

/// Berlekamp factorization of a squarefree monic polynomial over F_p.
inline std::vector<ModPoly> berlekamp(const ModPoly& f, std::int64_t p) {
    const std::size_t n = f.size() - 1;
    if (n <= 1) return {f};

    // Frobenius matrix rows: Q[i] = coefficients of x^(i*p) mod f
    const ModPoly xp = mp_powmod(ModPoly{0, 1}, BigInt(p), f, p);
    std::vector<ModPoly> xq(n);
    xq[0] = ModPoly{1};
    for (std::size_t i = 1; i < n; ++i) xq[i] = mp_rem(mp_mul(xq[i - 1], xp, p), f, p);

    // Kernel of v |-> v (Q - I) via Gauss-Jordan with an identity mirror;
    // its dimension equals the number of irreducible factors.
    std::vector<std::vector<std::int64_t>> rows(n, std::vector<std::int64_t>(n, 0));
    std::vector<std::vector<std::int64_t>> mirror(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < xq[i].size(); ++j) rows[i][j] = xq[i][j];
        rows[i][i] = ((rows[i][i] - 1) % p + p) % p;
        mirror[i][i] = 1;
    }
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n && rank < n; ++col) {
        std::size_t sel = rank;
        while (sel < n && rows[sel][col] == 0) ++sel;
        if (sel == n) continue;
        std::swap(rows[sel], rows[rank]);
        std::swap(mirror[sel], mirror[rank]);
        const std::int64_t inv = mod_inv(rows[rank][col], p);
        for (std::size_t j = 0; j < n; ++j) {
            rows[rank][j] = rows[rank][j] * inv % p;
            mirror[rank][j] = mirror[rank][j] * inv % p;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == rank || rows[i][col] == 0) continue;
            const std::int64_t c = rows[i][col];
            for (std::size_t j = 0; j < n; ++j) {
                rows[i][j] = ((rows[i][j] - c * rows[rank][j]) % p + p) % p;
                mirror[i][j] = ((mirror[i][j] - c * mirror[rank][j]) % p + p) % p;
            }
        }
        ++rank;
    }
    std::vector<ModPoly> kernel;
    for (std::size_t i = rank; i < n; ++i) {
        ModPoly v(mirror[i].begin(), mirror[i].end());
        mp_trim(v);
        kernel.push_back(std::move(v));
    }
    const std::size_t k = kernel.size();  // number of irreducible factors
    std::vector<ModPoly> todo{mp_monic(f, p)};
    if (k <= 1) return todo;

    // split with gcd(g, v - c) over every kernel vector and every c in F_p
    for (const ModPoly& v : kernel) {
        if (todo.size() >= k) break;
        if (v.size() <= 1) continue;  // constants split nothing
        std::vector<ModPoly> next;
        for (ModPoly g : todo) {
            for (std::int64_t c = 0; c < p && g.size() > 1; ++c) {
                ModPoly vc = mp_rem(v, g, p);
                if (vc.empty()) vc = {0};
                vc[0] = ((vc[0] - c) % p + p) % p;
                mp_trim(vc);
                if (vc.empty()) continue;  // v == c mod g: gcd is g, no split
                ModPoly h = mp_gcd(g, vc, p);
                if (h.size() > 1 && h.size() < g.size()) {
                    next.push_back(h);
                    g = mp_monic(mp_divexact(g, h, p), p);
                }
            }
            if (g.size() > 1) next.push_back(std::move(g));
        }
        todo = std::move(next);
    }
    ensure(todo.size() == k, "berlekamp: splitting incomplete");
    return todo;
}

// -------------------------------------------------------------- Hensel lift

inline IntPoly ip_mod(const IntPoly& a, const BigInt& m) {
    std::vector<BigInt> v(a.coeffs());
    for (auto& x : v) {
        x %= m;
        if (x < 0) x += m;
    }
    return IntPoly(std::move(v));
}

inline IntPoly symmetric_mod(const IntPoly& a, const BigInt& m) {
    std::vector<BigInt> v(a.coeffs());
    const BigInt half = m / 2;
    for (auto& x : v) {
        x %= m;
        if (x < 0) x += m;
        if (x > half) x -= m;
    }
    return IntPoly(std::move(v));
}

/// Division with remainder by a monic polynomial, coefficients mod m.
inline void ip_divmod_monic(const IntPoly& a, const IntPoly& b, const BigInt& m,
                            IntPoly& q_out, IntPoly& r_out) {
    ensure(!b.is_zero() && b.lead() == 1, "ip_divmod_monic: divisor not monic");
    std::vector<BigInt> r(a.coeffs());
    const long db = b.degree();
    std::vector<BigInt> q;
    if (static_cast<long>(r.size()) > db) q.assign(r.size() - db, 0);
    for (long k = static_cast<long>(r.size()) - 1; k >= db; --k) {
        BigInt c = r[k] % m;
        if (c < 0) c += m;
        if (c != 0) {
            q[k - db] = c;
            for (long j = 0; j < db; ++j)
                r[k - db + j] -= c * b[static_cast<std::size_t>(j)];
        }
        r[k] = 0;
    }
    for (auto& x : r) { x %= m; if (x < 0) x += m; }
    q_out = IntPoly(std::move(q));
    r_out = IntPoly(std::move(r));
}

struct HenselPair {
    IntPoly g, h, s, t;  // f == g h, s g + t h == 1 (mod the current modulus)
};

/// One quadratic Hensel step from modulus m to m^2 (f, g, h monic).
inline HenselPair hensel_step(const IntPoly& f, const HenselPair& in, const BigInt& m) {
    const BigInt m2 = m * m;
    HenselPair out;
    IntPoly e = ip_mod(f - in.g * in.h, m2);
    IntPoly q, r;
    ip_divmod_monic(ip_mod(in.s * e, m2), in.h, m2, q, r);
    out.g = ip_mod(in.g + in.t * e + q * in.g, m2);
    out.h = ip_mod(in.h + r, m2);
    IntPoly b = ip_mod(in.s * out.g + in.t * out.h - IntPoly(BigInt(1)), m2);
    IntPoly c, d;
    ip_divmod_monic(ip_mod(in.s * b, m2), out.h, m2, c, d);
    out.s = ip_mod(in.s - d, m2);
    out.t = ip_mod(in.t - in.t * b - c * out.g, m2);
    ensure(out.h.lead() == 1 && out.g.lead() == 1, "hensel_step: lost monicity");
    return out;
}

/// Extended Euclid over F_p for coprime a, b: s a + t b == 1 (mod p).
inline void mp_bezout(const ModPoly& a, const ModPoly& b, std::int64_t p,
                      ModPoly& s_out, ModPoly& t_out) {
    ModPoly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
        // long division r0 = q r1 + r
        ModPoly q, r = r0;
        const std::int64_t inv = mod_inv(r1.back(), p);
        if (r.size() >= r1.size()) q.assign(r.size() - r1.size() + 1, 0);
        while (r.size() >= r1.size()) {
            const std::int64_t qq = r.back() * inv % p;
            const std::size_t off = r.size() - r1.size();
            q[off] = qq;
            if (qq != 0)
                for (std::size_t j = 0; j + 1 < r1.size(); ++j)
                    r[off + j] = ((r[off + j] - qq * r1[j]) % p + p) % p;
            r.pop_back();
            mp_trim(r);
        }
        auto comb = [&](const ModPoly& x0, const ModPoly& x1) {
            ModPoly qx = mp_mul(q, x1, p);
            ModPoly res(std::max(x0.size(), qx.size()), 0);
            for (std::size_t i = 0; i < res.size(); ++i) {
                const std::int64_t u = (i < x0.size() ? x0[i] : 0) -
                                       (i < qx.size() ? qx[i] : 0);
                res[i] = ((u % p) + p) % p;
            }
            mp_trim(res);
            return res;
        };
        ModPoly ns = comb(s0, s1), nt = comb(t0, t1);
        r0 = std::move(r1); r1 = std::move(r);
        s0 = std::move(s1); s1 = std::move(ns);
        t0 = std::move(t1); t1 = std::move(nt);
    }
    ensure(r0.size() == 1, "mp_bezout: inputs not coprime");
    const std::int64_t inv = mod_inv(r0[0], p);
    for (auto& x : s0) x = x * inv % p;
    for (auto& x : t0) x = x * inv % p;
    s_out = std::move(s0);
    t_out = std::move(t0);
}

inline IntPoly ip_from_mod(const ModPoly& a) {
    std::vector<BigInt> v(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) v[i] = a[i];
    return IntPoly(std::move(v));
}

/// Lift the modular factors of monic squarefree f from mod p to the first
/// modulus p^(2^j) >= bound, by a recursive two-way split.
inline std::vector<IntPoly> hensel_lift_tree(const IntPoly& f,
                                             const std::vector<ModPoly>& facs,
                                             std::int64_t p, const BigInt& bound,
                                             BigInt& modulus_out) {
    BigInt target = p;
    while (target < bound) target *= target;

    struct Lifter {
        std::int64_t p;
        const BigInt& target;
        std::vector<IntPoly> out;

        void run(const IntPoly& f, std::vector<ModPoly> fs) {
            if (fs.size() == 1) {
                out.push_back(f);
                return;
            }
            const std::size_t half = fs.size() / 2;
            std::vector<ModPoly> left(fs.begin(), fs.begin() + half);
            std::vector<ModPoly> right(fs.begin() + half, fs.end());
            ModPoly gl{1}, gr{1};
            for (const auto& x : left) gl = mp_mul(gl, x, p);
            for (const auto& x : right) gr = mp_mul(gr, x, p);
            ModPoly s, t;
            mp_bezout(gl, gr, p, s, t);
            HenselPair hp{ip_from_mod(gl), ip_from_mod(gr),
                          ip_from_mod(s), ip_from_mod(t)};
            BigInt m = p;
            while (m < target) {
                hp = hensel_step(ip_mod(f, m * m), hp, m);
                m *= m;
            }
            run(hp.g, std::move(left));
            run(hp.h, std::move(right));
        }
    };
    Lifter lifter{p, target, {}};
    lifter.run(ip_mod(f, target), facs);
    modulus_out = target;
    return std::move(lifter.out);
}

/// Exact trial division over Z; returns true iff b | a, with the quotient in q.
inline bool ip_trial_div(const IntPoly& a, const IntPoly& b, IntPoly& q) {
    if (b.is_zero() || a.is_zero() || a.degree() < b.degree()) return false;
    std::vector<BigInt> rem(a.coeffs());
    std::vector<BigInt> quot(a.coeffs().size() - b.coeffs().size() + 1);
    for (long k = static_cast<long>(quot.size()) - 1; k >= 0; --k) {
        const BigInt& top = rem[k + b.degree()];
        if (top % b.lead() != 0) return false;
        quot[k] = top / b.lead();
        if (quot[k] != 0)
            for (std::size_t i = 0; i < b.coeffs().size(); ++i)
                rem[k + i] -= quot[k] * b[i];
    }
    for (const auto& r : rem)
        if (r != 0) return false;
    q = IntPoly(std::move(quot));
    return true;
}

/// Factor a primitive squarefree polynomial with positive leading coefficient.
inline std::vector<IntPoly> factor_squarefree(const IntPoly& f) {
    if (f.degree() <= 1) return {f};

    // monic transform: F(y) = lc^(n-1) f(y / lc) has integer coefficients
    // F_i = f_i lc^(n-1-i) and is monic in y
    const BigInt lc = f.lead();
    const std::size_t n = static_cast<std::size_t>(f.degree());
    std::vector<BigInt> mc(n + 1);
    mc[n] = 1;
    BigInt pw = 1;
    for (long i = static_cast<long>(n) - 1; i >= 0; --i) {
        mc[static_cast<std::size_t>(i)] = f[static_cast<std::size_t>(i)] * pw;
        pw *= lc;
    }
    const IntPoly F(std::move(mc));
    ensure(F.lead() == 1, "factor_squarefree: monic transform failed");

    // prime where F stays squarefree (exists: disc(F) != 0)
    static constexpr std::array<std::int64_t, 15> primes{
        3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};
    std::int64_t p = 0;
    ModPoly Fp;
    for (const std::int64_t cand : primes) {
        Fp = mp_from(F, cand);
        if (Fp.size() != F.coeffs().size()) continue;
        if (mp_gcd(Fp, mp_deriv(Fp, cand), cand).size() == 1) {
            p = cand;
            break;
        }
    }
    ensure(p != 0, "factor_squarefree: no squarefree prime below 59");

    const std::vector<ModPoly> modular = berlekamp(mp_monic(Fp, p), p);
    if (modular.size() == 1) return {f};

    // coefficient bound for monic divisors of F (Mignotte): 2^n ||F||_2
    BigInt norm2 = 0;
    for (const auto& c : F.coeffs()) norm2 += c * c;
    const BigInt root = boost::multiprecision::sqrt(norm2) + 1;
    const BigInt bound = (root << static_cast<unsigned>(n + 1)) + 1;  // > 2 B

    BigInt modulus;
    std::vector<IntPoly> pool = hensel_lift_tree(F, modular, p, bound, modulus);

    // Zassenhaus recombination: subsets of increasing cardinality
    std::vector<IntPoly> monic_factors;
    IntPoly rem = F;
    std::size_t size = 1;
    while (2 * size <= pool.size()) {
        bool found = false;
        std::vector<std::size_t> idx(size);
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        while (true) {
            IntPoly prod(BigInt(1));
            for (const std::size_t i : idx) prod = ip_mod(prod * pool[i], modulus);
            prod = symmetric_mod(prod, modulus);
            IntPoly q;
            if (ip_trial_div(rem, prod, q)) {
                monic_factors.push_back(prod);
                rem = q;
                std::vector<IntPoly> np;
                for (std::size_t i = 0, j = 0; i < pool.size(); ++i) {
                    if (j < idx.size() && idx[j] == i) { ++j; continue; }
                    np.push_back(pool[i]);
                }
                pool = std::move(np);
                found = true;
                break;
            }
            // next combination of the same cardinality
            long pos = static_cast<long>(size) - 1;
            while (pos >= 0 &&
                   idx[static_cast<std::size_t>(pos)] ==
                       pool.size() - size + static_cast<std::size_t>(pos))
                --pos;
            if (pos < 0) break;
            ++idx[static_cast<std::size_t>(pos)];
            for (std::size_t j = static_cast<std::size_t>(pos) + 1; j < size; ++j)
                idx[j] = idx[j - 1] + 1;
        }
        if (!found) ++size;
    }
    if (rem.degree() > 0) monic_factors.push_back(rem);

    // undo the monic transform: g(x) = primitive part of G(lc x)
    std::vector<IntPoly> out;
    out.reserve(monic_factors.size());
    for (const IntPoly& G : monic_factors) {
        std::vector<BigInt> v(G.coeffs());
        BigInt s = 1;
        for (auto& coeff : v) {
            coeff *= s;
            s *= lc;
        }
        out.push_back(IntPoly(std::move(v)).primitive());
    }
    return out;
}

}  // namespace detail

/// Full factorization over Z: f = unit * prod factors[i]^multiplicity, each
/// factor primitive and irreducible with positive leading coefficient,
/// ordered by (degree, multiplicity, coefficients).
inline PolyFactorization factor_int_poly(const IntPoly& f) {
    detail::require(!f.is_zero(), "factor_int_poly: zero polynomial");
    PolyFactorization out;
    BigInt cont = f.content();
    if (f.lead() < 0) cont = -cont;
    out.unit = cont;
    const IntPoly g = f.primitive();
    if (g.degree() == 0) return out;

    // Yun squarefree decomposition of g, factoring each squarefree part
    const IntPoly d = g.derivative();
    const IntPoly a0 = poly_gcd(g, d);
    IntPoly b = IntPoly::divexact(g, a0);
    IntPoly c = IntPoly::divexact(d, a0);
    unsigned mult = 1;
    while (b.degree() > 0) {
        const IntPoly t = c - b.derivative();
        const IntPoly s = poly_gcd(b, t);
        if (s.degree() > 0)
            for (IntPoly& irr : detail::factor_squarefree(s.primitive()))
                out.factors.push_back({std::move(irr), mult});
        b = IntPoly::divexact(b, s);
        c = IntPoly::divexact(t, s);
        ++mult;
    }

    std::sort(out.factors.begin(), out.factors.end(),
              [](const PolyFactor& x, const PolyFactor& y) {
                  if (x.poly.degree() != y.poly.degree())
                      return x.poly.degree() < y.poly.degree();
                  if (x.multiplicity != y.multiplicity)
                      return x.multiplicity < y.multiplicity;
                  return x.poly.coeffs() < y.poly.coeffs();
              });
    return out;
}

}  // namespace orbitgrowth

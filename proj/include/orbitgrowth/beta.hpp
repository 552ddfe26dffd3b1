#pragma once

// The beta constant of a semigroup orbit: the limit of
//
//   beta_n = sum over the r^n words g of length n of h(g(P))^(-rho),
//
// which exists for non-preperiodic P because the level sums form a Cauchy
// sequence with geometric tail K * C'^(n+1), C' = sum d_i^(-(rho+1)) < 1.
// The product  (asymptotic word-count constant) * beta * X^rho  then
// predicts #{f : h(f(P)) <= X} for systems with multiplicatively
// independent degrees.
//
// Exact coordinates at depth n have on the order of d_S^n digits, far too
// large to materialize, so levels are walked with a hybrid representation:
// 50-digit floating coordinates normalized to unit maximum, the exact
// height carried separately in log scale, plus exact residues of the true
// coordinates modulo M = (prod |Res_i|)^(n_max+2).  Any factor cancelled by
// coordinate reduction divides the resultant of the map applied, so the
// residues recover the cancelled gcd exactly at every step; the modulus
// shrinks by that gcd but keeps (prod |Res_i|)^2 as a factor throughout,
// which is all the next step needs.  The floating side only ever handles
// numbers of modulus near 1, so the height drift over a dozen levels stays
// below 1e-30 nats.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "growth.hpp"
#include "orbit.hpp"
#include "semigroup.hpp"

namespace orbitgrowth {

namespace detail {

/// A projective point with huge exact coordinates (x : y), stored as
/// normalized 50-digit floats u = x/s, v = y/s with s = max(|x|, |y|),
/// the exact height H = ln s, and residues of (x, y) modulo `modulus`.
/// Coordinates are tracked up to a joint sign flip, which affects neither
/// heights nor subsequent evaluation.
struct ScaledPoint {
    BigFloat u, v, H;
    BigInt rx, ry, modulus;
};

inline BigInt mod_pos(const BigInt& a, const BigInt& m) {
    BigInt r = a % m;
    if (r < 0) r += m;
    return r;
}

inline ScaledPoint make_scaled(const ProjPointQ& p, const BigInt& modulus) {
    ScaledPoint s;
    const BigInt& arg = p.height_arg();
    s.H = log_refined(arg);
    const BigFloat scale(arg);
    s.u = BigFloat(p.x()) / scale;
    s.v = BigFloat(p.y()) / scale;
    s.rx = mod_pos(p.x(), modulus);
    s.ry = mod_pos(p.y(), modulus);
    s.modulus = modulus;
    return s;
}

inline BigFloat eval_form_float(const BinForm& f, const BigFloat& u,
                                const BigFloat& v) {
    // Horner in u with a running power of v (coefficients are X-major).
    BigFloat acc(f[0]);
    BigFloat vp(1);
    for (long k = 1; k <= f.degree(); ++k) {
        vp *= v;
        acc = acc * u + BigFloat(f[static_cast<std::size_t>(k)]) * vp;
    }
    return acc;
}

inline BigInt eval_form_mod(const BinForm& f, const BigInt& x, const BigInt& y,
                            const BigInt& m) {
    BigInt acc = mod_pos(f[0], m);
    BigInt yp = 1;
    for (long k = 1; k <= f.degree(); ++k) {
        yp = yp * y % m;
        acc = (acc * x + f[static_cast<std::size_t>(k)] * yp) % m;
    }
    return mod_pos(acc, m);
}

inline ScaledPoint apply_scaled(const RationalMapQ& map, const ScaledPoint& p) {
    const BigInt res = map.resultant_abs();
    ensure(res <= p.modulus && p.modulus % res == 0,
           "apply_scaled: residue modulus no longer covers the resultant");

    // exact side: residues of the raw images and the cancelled gcd
    const BigInt fa = eval_form_mod(map.numerator(), p.rx, p.ry, p.modulus);
    const BigInt gb = eval_form_mod(map.denominator(), p.rx, p.ry, p.modulus);
    const BigInt g = big_gcd(big_gcd(fa % res, res), big_gcd(gb % res, res));
    ensure(fa % g == 0 && gb % g == 0, "apply_scaled: inexact cancellation");

    // floating side: normalized images and the exact height update
    const BigFloat a = eval_form_float(map.numerator(), p.u, p.v);
    const BigFloat b = eval_form_float(map.denominator(), p.u, p.v);
    const BigFloat m = std::max(abs(a), abs(b));
    ensure(m > BigFloat("1e-40"),
           "apply_scaled: catastrophic cancellation in float coordinates");

    ScaledPoint out;
    out.u = a / m;
    out.v = b / m;
    out.H = BigFloat(map.degree()) * p.H + log(m) - log(BigFloat(g));
    out.modulus = p.modulus / g;
    out.rx = fa / g % out.modulus;
    out.ry = gb / g % out.modulus;
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------- estimate

struct BetaEstimate {
    GrowthExponent rho;
    std::vector<double> beta_sequence;  ///< beta_1 .. beta_{n_max}
    double K = 0.0;        ///< C_S^(-rho) * 2^(rho+1) * rho
    double C_prime = 0.0;  ///< sum d_i^(-(rho+1)), < 1
    /// Least depth n with every height at level n above 2*C_S (0 when the
    /// basepoint itself is already above); -1 if not reached by n_max.
    std::int64_t shift_N = 0;
    /// K * (r/C')^shift_N: the constant for which the geometric bound
    /// |beta_{n+1} - beta_n| <= k_shifted * C'^(n+1) is provable for
    /// n >= shift_N (level counts and heights both lag the ideal by at
    /// most shift_N doublings).
    double k_shifted = 0.0;
    /// k_shifted * C'^(n_max+1) / (1 - C'): bound on |beta - beta_{n_max}|.
    double tail_bound = 0.0;

    double beta() const { return beta_sequence.back(); }
};

/// Level sums beta_n for n = 1..n_max, with the geometric tail certificate.
inline BetaEstimate estimate_beta(const SemigroupSystem& S, const ProjPointQ& P,
                                  const GrowthExponent& rho, std::size_t n_max,
                                  std::size_t node_budget = 2000000) {
    detail::require(S.size() >= 2, "estimate_beta: need at least two generators");
    detail::require(n_max >= 1, "estimate_beta: need n_max >= 1");
    {
        double total = 0.0, level = 1.0;
        for (std::size_t n = 1; n <= n_max; ++n) {
            level *= static_cast<double>(S.size());
            total += level;
            if (total > static_cast<double>(node_budget))
                throw resource_limit_error(
                    "estimate_beta: word count exceeds the node budget");
        }
    }
    if (is_preperiodic(S, P).preperiodic)
        throw invalid_input_error("estimate_beta: basepoint is preperiodic");

    BetaEstimate out;
    out.rho = rho;
    out.C_prime = 0.0;
    for (const auto d : S.degrees())
        out.C_prime += std::pow(static_cast<double>(d), -(rho.rho + 1.0));
    detail::ensure(out.C_prime < 1.0, "estimate_beta: C' must be below 1");
    out.K = std::pow(S.C_S(), -rho.rho) * std::pow(2.0, rho.rho + 1.0) * rho.rho;

    BigInt modulus = 1;
    for (const auto& m : S.maps()) modulus *= m.resultant_abs();
    modulus = big_pow(modulus, static_cast<unsigned>(n_max) + 2);

    const BigFloat tau = S.escape_threshold_refined();
    out.shift_N = -1;
    if (P.height_arg() > S.escape_arg()) out.shift_N = 0;

    std::vector<detail::ScaledPoint> level{detail::make_scaled(P, modulus)};
    for (std::size_t n = 1; n <= n_max; ++n) {
        std::vector<detail::ScaledPoint> next;
        next.reserve(level.size() * S.size());
        for (const auto& sp : level)
            for (std::size_t i = 0; i < S.size(); ++i)
                next.push_back(detail::apply_scaled(S.map(i), sp));
        level = std::move(next);

        double beta_n = 0.0;
        bool all_above = true;
        for (const auto& sp : level) {
            beta_n += std::pow(sp.H.convert_to<double>(), -rho.rho);
            if (sp.H <= tau) all_above = false;
        }
        out.beta_sequence.push_back(beta_n);
        if (out.shift_N < 0 && all_above)
            out.shift_N = static_cast<std::int64_t>(n);
    }

    if (out.shift_N >= 0) {
        out.k_shifted =
            out.K * std::pow(static_cast<double>(S.size()) / out.C_prime,
                             static_cast<double>(out.shift_N));
        out.tail_bound = out.k_shifted *
                         std::pow(out.C_prime, static_cast<double>(n_max) + 1.0) /
                         (1.0 - out.C_prime);
    } else {
        out.k_shifted = std::numeric_limits<double>::quiet_NaN();
        out.tail_bound = std::numeric_limits<double>::quiet_NaN();
    }
    return out;
}

/// Predicted #{f : h(f(P)) <= X} = (word-count constant) * beta * X^rho,
/// valid for multiplicatively independent degrees.
inline double predict_function_count(const SemigroupSystem& S,
                                     const ProjPointQ& P, double X,
                                     const BetaEstimate& beta) {
    (void)P;  // the basepoint enters through beta
    detail::require(X > 0, "predict_function_count: cutoff must be positive");
    const double c = acyclic_constant(S.degrees(), beta.rho);  // rejects cyclic
    return c * beta.beta() * std::pow(X, beta.rho.rho);
}

}  // namespace orbitgrowth

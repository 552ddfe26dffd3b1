#pragma once

// Resultant-based critical-value analysis for rational maps on P^1.
//
// The critical points of phi = (F : G) of degree d are the projective roots
// of the Wronskian W = F_X G_Y - F_Y G_X (degree 2d - 2), each with
// multiplicity e_c - 1 (local ramification index minus one).  Packing the
// value information into one object: with W' the primitive part of W,
//
//   R(t) = Res(F - t G, W')   (resultant of binary forms, computed as a
//                              Bareiss determinant of a Sylvester matrix
//                              with entries in Z[t])
//
// vanishes at t = w to order  sum of (e_c - 1) over critical points c with
// phi(c) = w.  Critical points above the value infinity do not show up as
// roots; they shave the t-degree instead:
//
//   k := (2d - 2) - deg R  =  total ramification above the value infinity.
//
// Hence the number of distinct preimages of an affine value w is
// d - mult_w(R), the number above infinity is d - k, and
//
//   every critical value has exactly d - 1 distinct preimages
//     <=>  R squarefree  and  k <= 1.

#include <cstddef>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "factor.hpp"
#include "p1_map.hpp"

namespace orbitgrowth {

/// Wronskian F_X G_Y - F_Y G_X of the map's forms (content not removed).
inline BinForm wronskian(const RationalMapQ& phi) {
    return wronskian(phi.numerator(), phi.denominator());
}

struct CriticalData {
    BinForm wronskian;               ///< raw Wronskian, degree 2d - 2
    IntPoly crit_value_poly;         ///< R(t) as computed (content kept)
    long infinity_multiplicity = 0;  ///< k = (2d - 2) - deg R
    bool infinity_is_critical_value = false;
    bool simple = false;
    /// Exact rational critical values, irreducible factors for the
    /// irrational ones, and "infinity" when it is a critical value.
    std::vector<std::string> crit_values_description;
};

inline CriticalData critical_values(const RationalMapQ& phi) {
    const BinForm& f = phi.numerator();
    const BinForm& g = phi.denominator();
    const long d = phi.degree();

    CriticalData out;
    out.wronskian = wronskian(f, g);
    detail::ensure(!out.wronskian.is_identically_zero(),
                   "critical_values: Wronskian vanished for a finite map");

    // primitive part of W
    const BigInt wc = out.wronskian.content();
    std::vector<BigInt> wv(out.wronskian.coeffs());
    for (auto& x : wv) x /= wc;

    // R(t) = Res(F - t G, W') over Z[t]
    std::vector<IntPoly> a(f.coeffs().size());
    for (std::size_t i = 0; i < a.size(); ++i)
        a[i] = IntPoly({f[i], -g[i]});
    std::vector<IntPoly> b(wv.size());
    for (std::size_t i = 0; i < b.size(); ++i) b[i] = IntPoly(wv[i]);
    out.crit_value_poly = bareiss_det<IntPoly>(sylvester_matrix<IntPoly>(a, b));
    detail::ensure(!out.crit_value_poly.is_zero(),
                   "critical_values: resultant in t vanished identically");

    out.infinity_multiplicity = (2 * d - 2) - out.crit_value_poly.degree();
    detail::ensure(out.infinity_multiplicity >= 0,
                   "critical_values: degree bound violated");
    out.infinity_is_critical_value = out.infinity_multiplicity >= 1;
    out.simple = out.infinity_multiplicity <= 1 && squarefree(out.crit_value_poly);

    // description: rational values exactly, irreducible factors otherwise
    const PolyFactorization fac = factor_int_poly(out.crit_value_poly);
    for (const PolyFactor& pf : fac.factors) {
        std::string entry;
        if (pf.poly.degree() == 1) {
            const BigRat v(-pf.poly[0], pf.poly[1]);
            entry = boost::multiprecision::numerator(v).str();
            if (boost::multiprecision::denominator(v) != 1)
                entry += "/" + boost::multiprecision::denominator(v).str();
        } else {
            entry = "roots of " + pf.poly.str();
        }
        if (pf.multiplicity >= 2)
            entry += " (multiplicity " + std::to_string(pf.multiplicity) + ")";
        out.crit_values_description.push_back(std::move(entry));
    }
    if (out.infinity_is_critical_value) {
        std::string entry = "infinity";
        if (out.infinity_multiplicity >= 2)
            entry += " (multiplicity " + std::to_string(out.infinity_multiplicity) + ")";
        out.crit_values_description.push_back(std::move(entry));
    }
    return out;
}

inline bool critically_simple(const RationalMapQ& phi) {
    return critical_values(phi).simple;
}

/// Disjoint critical-value sets: no common affine critical value (constant
/// gcd of the two R polynomials) and not both maps critical over infinity.
inline bool are_critically_separate(const RationalMapQ& phi, const RationalMapQ& psi) {
    const CriticalData a = critical_values(phi);
    const CriticalData b = critical_values(psi);
    if (a.infinity_is_critical_value && b.infinity_is_critical_value) return false;
    return poly_gcd(a.crit_value_poly, b.crit_value_poly).degree() == 0;
}

/// The hypotheses for a generic set of maps: every map critically simple,
/// every pair critically separate, every degree >= 4.
struct GenericSetReport {
    std::vector<bool> map_simple;
    std::vector<bool> map_degree_ok;
    /// (i, j, separate) for every i < j.
    std::vector<std::tuple<std::size_t, std::size_t, bool>> pair_separate;
    bool all_simple = false;
    bool all_separate = false;
    bool all_degrees_ok = false;
    bool generic = false;
};

inline GenericSetReport check_generic_set(const std::vector<RationalMapQ>& maps) {
    detail::require(maps.size() >= 2, "check_generic_set: need at least two maps");
    GenericSetReport rep;
    std::vector<CriticalData> data;
    data.reserve(maps.size());
    for (const RationalMapQ& m : maps) data.push_back(critical_values(m));

    rep.all_simple = rep.all_separate = rep.all_degrees_ok = true;
    for (std::size_t i = 0; i < maps.size(); ++i) {
        rep.map_simple.push_back(data[i].simple);
        rep.map_degree_ok.push_back(maps[i].degree() >= 4);
        rep.all_simple = rep.all_simple && data[i].simple;
        rep.all_degrees_ok = rep.all_degrees_ok && maps[i].degree() >= 4;
    }
    for (std::size_t i = 0; i < maps.size(); ++i) {
        for (std::size_t j = i + 1; j < maps.size(); ++j) {
            bool sep =
                !(data[i].infinity_is_critical_value && data[j].infinity_is_critical_value) &&
                poly_gcd(data[i].crit_value_poly, data[j].crit_value_poly).degree() == 0;
            rep.pair_separate.emplace_back(i, j, sep);
            rep.all_separate = rep.all_separate && sep;
        }
    }
    rep.generic = rep.all_simple && rep.all_separate && rep.all_degrees_ok;
    return rep;
}

/// All critical points with rational coordinates (affine roots of the
/// Wronskian found by exact factorization, plus the point at infinity when
/// the Wronskian's leading X coefficient vanishes).
inline std::vector<ProjPointQ> rational_critical_points(const RationalMapQ& phi) {
    const BinForm w = wronskian(phi);
    std::vector<ProjPointQ> out;
    if (w.coeffs().front() == 0) out.push_back(ProjPointQ::infinity());
    const IntPoly affine = w.to_poly();
    if (affine.degree() >= 1) {
        const PolyFactorization fac = factor_int_poly(affine);
        for (const PolyFactor& pf : fac.factors)
            if (pf.poly.degree() == 1)
                out.push_back(ProjPointQ(-pf.poly[0], pf.poly[1]));
    }
    return out;
}

/// Number of distinct preimages of a value w under phi: the distinct
/// projective roots of  w_den F - w_num G.
inline long preimage_count(const RationalMapQ& phi, const ProjPointQ& w) {
    const BinForm h = phi.numerator() * w.y() - phi.denominator() * w.x();
    detail::ensure(!h.is_identically_zero(), "preimage_count: degenerate fiber form");
    long count = 0;
    if (h.coeffs().front() == 0) ++count;  // the point at infinity
    const IntPoly affine = h.to_poly();
    if (affine.degree() >= 1)
        count += affine.degree() - poly_gcd(affine, affine.derivative()).degree();
    return count;
}

}  // namespace orbitgrowth

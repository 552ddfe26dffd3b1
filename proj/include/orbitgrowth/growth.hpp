#pragma once

// Counting bounded-weight words in a free semigroup on r generators with
// integer weights d_1, ..., d_r >= 2 (the weight of a word is the product of
// its letters' weights), plus the analytic companions:
//
//   * the growth exponent rho, the unique real solution of
//     G(s) = sum d_i^(-s) = 1,
//   * the cyclic/acyclic classification of the weight vector (all d_i powers
//     of one base versus some multiplicatively independent pair),
//   * asymptotic constants for both regimes, and partial sums of the
//     Dirichlet series sum a_n n^(-s) = 1/(1 - G(s)).
//
// Exact counts use the recurrence a_1 = [empty word], a_n = sum over i with
// d_i | n of a_(n/d_i).  Only weights that are products of the d_i can be
// nonzero, so the table is built over that sparse support (enumerated
// breadth-first and deduplicated) instead of a dense 1..X array; counts are
// exact big integers.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "int_types.hpp"

namespace orbitgrowth {

using WeightVector = std::vector<std::uint64_t>;

namespace detail {

inline void validate_weights(const WeightVector& d) {
    require(!d.empty(), "weight vector is empty");
    for (const auto x : d)
        require(x >= 2, "every weight must be >= 2");
}

constexpr std::int64_t kMaxCountCutoff = 100000000;  // 10^8

}  // namespace detail

// --------------------------------------------------------------- exponent

struct GrowthExponent {
    double rho = 0.0;
    double residual = 0.0;  ///< |G(rho) - 1|
};

/// G(s) = sum d_i^(-s), evaluated in a fixed order for determinism.
inline double weight_zeta(const WeightVector& d, double s) {
    double g = 0.0;
    for (const auto x : d) g += std::pow(static_cast<double>(x), -s);
    return g;
}

/// Unique s with G(s) = 1, by bracketed bisection on [0, ln r / ln min d]:
/// G(0) = r > 1 and G is strictly decreasing with G(right endpoint) <= 1
/// (the term with the smallest weight alone already reaches 1/r^... there).
inline GrowthExponent solve_rho(const WeightVector& d, double tol = 1e-12) {
    detail::validate_weights(d);
    detail::require(d.size() >= 2, "solve_rho: need at least two generators");
    detail::require(tol > 0, "solve_rho: tolerance must be positive");
    const std::uint64_t dmin = *std::min_element(d.begin(), d.end());
    double lo = 0.0;
    double hi = std::log(static_cast<double>(d.size())) / std::log(static_cast<double>(dmin));
    double mid = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        mid = 0.5 * (lo + hi);
        const double g = weight_zeta(d, mid);
        if (g > 1.0)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-15 && std::abs(g - 1.0) <= tol) break;
    }
    mid = 0.5 * (lo + hi);
    GrowthExponent out{mid, std::abs(weight_zeta(d, mid) - 1.0)};
    detail::ensure(out.residual <= std::max(tol, 1e-12),
                   "solve_rho: bisection failed to meet tolerance");
    return out;
}

// ----------------------------------------------------------------- counts

/// Sparse exact count table over the weights that actually occur.
struct CountTable {
    std::int64_t cutoff = 0;
    bool include_identity = true;
    /// (n, a_n) for every n <= cutoff with a_n != 0, ascending in n.
    std::vector<std::pair<std::int64_t, BigInt>> weights;
    /// Exact number of words of weight <= cutoff (empty word included iff
    /// include_identity).
    BigInt total = 0;
};

inline CountTable count_table(const WeightVector& d, std::int64_t X,
                              bool include_identity = true) {
    detail::validate_weights(d);
    detail::require(X >= 1, "count_table: cutoff must be >= 1");
    if (X > detail::kMaxCountCutoff)
        throw resource_limit_error(
            "count_table: cutoff exceeds the 10^8 table limit");

    // distinct weights actually used (duplicates contribute multiplicity)
    std::vector<std::pair<std::int64_t, int>> gens;
    {
        std::map<std::uint64_t, int> mult;
        for (const auto x : d)
            if (static_cast<std::int64_t>(x) <= X) ++mult[x];
        for (const auto& [w, m] : mult) gens.emplace_back(static_cast<std::int64_t>(w), m);
    }

    // supports: all products of generators that stay <= X, via BFS + dedup
    std::map<std::int64_t, BigInt> table;
    table[1] = 1;  // the empty word
    std::vector<std::int64_t> frontier{1};
    while (!frontier.empty()) {
        std::vector<std::int64_t> next;
        for (const std::int64_t n : frontier) {
            for (const auto& [w, m] : gens) {
                (void)m;
                if (n > X / w) continue;  // n * w would exceed X
                const std::int64_t nw = n * w;
                if (table.emplace(nw, BigInt(0)).second) next.push_back(nw);
            }
        }
        frontier = std::move(next);
    }

    // recurrence in increasing weight order (std::map iterates sorted)
    for (auto& [n, count] : table) {
        if (n == 1) continue;
        BigInt c = 0;
        for (const auto& [w, m] : gens) {
            if (n % w != 0) continue;
            const auto it = table.find(n / w);
            if (it != table.end()) c += it->second * m;
        }
        count = std::move(c);
    }

    CountTable out;
    out.cutoff = X;
    out.include_identity = include_identity;
    for (auto& [n, count] : table) {
        if (count == 0) continue;  // unreachable weight (can't happen, but safe)
        if (n == 1 && !include_identity) continue;
        out.total += count;
        out.weights.emplace_back(n, std::move(count));
    }
    return out;
}

/// Exact number of words of weight <= X.
inline BigInt count_exact(const WeightVector& d, std::int64_t X,
                          bool include_identity = true) {
    return count_table(d, X, include_identity).total;
}

// ----------------------------------------------------------- classification

struct CyclicClassification {
    bool cyclic = false;
    std::uint64_t base = 0;                ///< cyclic only: base >= 2
    std::vector<std::uint64_t> exponents;  ///< cyclic only: d_i = base^(a_i), gcd = 1
};

namespace detail {

inline std::map<std::uint64_t, std::uint64_t> factorize64(std::uint64_t n) {
    std::map<std::uint64_t, std::uint64_t> out;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2) ? 1 : 2) {
        while (n % p == 0) {
            ++out[p];
            n /= p;
        }
    }
    if (n > 1) ++out[n];
    return out;
}

}  // namespace detail

/// Cyclic iff the weights are all powers of one integer base >= 2, decided
/// by exact factorization: the exponent vectors must share their prime
/// support and be pairwise proportional.  The base is pinned by requiring
/// gcd of the exponents to be 1.
inline CyclicClassification classify(const WeightVector& d) {
    detail::validate_weights(d);
    const auto f0 = detail::factorize64(d[0]);
    std::vector<std::uint64_t> primes, e0;
    for (const auto& [p, e] : f0) {
        primes.push_back(p);
        e0.push_back(e);
    }
    // primitive direction vector u = e0 / gcd(e0)
    std::uint64_t g0 = 0;
    for (const auto e : e0) g0 = std::gcd(g0, e);
    std::vector<std::uint64_t> u(e0.size());
    for (std::size_t i = 0; i < e0.size(); ++i) u[i] = e0[i] / g0;

    std::vector<std::uint64_t> mult(d.size());
    mult[0] = g0;
    for (std::size_t k = 1; k < d.size(); ++k) {
        const auto fk = detail::factorize64(d[k]);
        if (fk.size() != primes.size()) return {};
        std::size_t i = 0;
        std::uint64_t m = 0;
        for (const auto& [p, e] : fk) {
            if (p != primes[i]) return {};           // support mismatch
            if (e % u[i] != 0) return {};            // not proportional
            const std::uint64_t mi = e / u[i];
            if (i == 0)
                m = mi;
            else if (mi != m)
                return {};                           // not proportional
            ++i;
        }
        mult[k] = m;
    }

    // base = prod p^u; re-base so that gcd of the exponents is 1
    std::uint64_t g = 0;
    for (const auto m : mult) g = std::gcd(g, m);
    CyclicClassification out;
    out.cyclic = true;
    out.base = 1;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        std::uint64_t pe = 1;
        for (std::uint64_t e = 0; e < u[i] * g; ++e) pe *= primes[i];
        out.base *= pe;
    }
    out.exponents.resize(d.size());
    for (std::size_t k = 0; k < d.size(); ++k) out.exponents[k] = mult[k] / g;
    return out;
}

// ------------------------------------------------------------- asymptotics

/// Acyclic leading constant: count_exact(X) ~ c X^rho with
/// c = 1 / (rho * sum ln(d_i) d_i^(-rho)), from the residue of the Dirichlet
/// series at s = rho.
inline double acyclic_constant(const WeightVector& d, const GrowthExponent& rho) {
    detail::validate_weights(d);
    detail::require(!classify(d).cyclic, "acyclic_constant: weight vector is cyclic");
    double gp = 0.0;
    for (const auto x : d)
        gp += std::log(static_cast<double>(x)) *
              std::pow(static_cast<double>(x), -rho.rho);
    return 1.0 / (rho.rho * gp);
}

struct CyclicGrowth {
    double theta = 0.0;  ///< unique root of 1 - sum x^(a_i) in (0, 1)
    double C = 0.0;      ///< count(<= base^L) / theta^(-L) -> C
    double rho = 0.0;    ///< -ln theta / ln base, equals solve_rho
};

/// Asymptotics along powers of the base in the cyclic case.  Needs at least
/// two generators: with one generator the counts grow linearly in the level,
/// not geometrically, and no constant C exists.
inline CyclicGrowth cyclic_growth(const WeightVector& d) {
    detail::require(d.size() >= 2, "cyclic_growth: need at least two generators");
    const CyclicClassification cls = classify(d);
    detail::require(cls.cyclic, "cyclic_growth: weight vector is acyclic");
    const auto& a = cls.exponents;
    auto g = [&](double x) {
        double s = 1.0;
        for (const auto ai : a) s -= std::pow(x, static_cast<double>(ai));
        return s;
    };
    double lo = 0.0, hi = 1.0;  // g(0) = 1 > 0 > 1 - r = g(1)
    for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (g(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    CyclicGrowth out;
    out.theta = 0.5 * (lo + hi);
    out.rho = -std::log(out.theta) / std::log(static_cast<double>(cls.base));
    double gp = 0.0;  // -g'(theta) = sum a_i theta^(a_i - 1)
    for (const auto ai : a)
        gp += static_cast<double>(ai) * std::pow(out.theta, static_cast<double>(ai) - 1.0);
    out.C = 1.0 / (out.theta * (1.0 - out.theta) * gp);
    return out;
}

/// Exact count of words of weight <= base^L in the cyclic case, via the
/// recurrence b_L = 1 + sum b_(L - a_i), b_(<0) = 0 (so b_0 = 1).
inline BigInt cyclic_counts(const WeightVector& d, std::int64_t L) {
    const CyclicClassification cls = classify(d);
    detail::require(cls.cyclic, "cyclic_counts: weight vector is acyclic");
    detail::require(L >= 0, "cyclic_counts: level must be >= 0");
    if (L > 1000000)
        throw resource_limit_error("cyclic_counts: level exceeds the 10^6 limit");
    std::vector<BigInt> b(static_cast<std::size_t>(L) + 1);
    for (std::int64_t l = 0; l <= L; ++l) {
        BigInt v = 1;
        for (const auto ai : cls.exponents)
            if (l >= static_cast<std::int64_t>(ai))
                v += b[static_cast<std::size_t>(l - static_cast<std::int64_t>(ai))];
        b[static_cast<std::size_t>(l)] = std::move(v);
    }
    return b[static_cast<std::size_t>(L)];
}

/// Partial sum sum_(n <= N) a_n n^(-s) of the weight Dirichlet series;
/// converges to 1/(1 - G(s)) for s above the growth exponent.
inline double dirichlet_eval(const WeightVector& d, double s, std::int64_t N) {
    detail::validate_weights(d);
    detail::require(d.size() >= 2, "dirichlet_eval: need at least two generators");
    const GrowthExponent rho = solve_rho(d);
    detail::require(s > rho.rho, "dirichlet_eval: s must exceed the growth exponent");
    const CountTable table = count_table(d, N, true);
    double sum = 0.0;
    for (const auto& [n, count] : table.weights)
        sum += count.convert_to<double>() * std::pow(static_cast<double>(n), -s);
    return sum;
}

}  // namespace orbitgrowth

#pragma once

// Orbit enumeration for a semigroup of rational self-maps of P^1(Q).
//
// Everything here rests on the escape threshold 2*C_S from semigroup.hpp:
// once a point's height exceeds it, every image under every generator is
// strictly higher, so
//
//   * a census of {f : h(f(P)) <= X} may prune a branch exactly when the
//     current height exceeds max(X, 2*C_S) -- no pruned branch can ever
//     re-enter the census window (completeness);
//   * preperiodicity is decidable: any cycle must live entirely inside the
//     finite region {h <= 2*C_S}, so a breadth-first search of that region
//     plus a cycle search on the resulting finite graph settles the verdict;
//   * a non-preperiodic point has an infinite orbit (a finite forward orbit
//     would force a repeated node along some branch, i.e. a cycle).
//
// Threshold comparisons against 2*C_S are exact integer comparisons; the
// real-valued cutoff X is delta-inclusive as described in semigroup.hpp.
// Exploration is breadth-first by word length with generators in input
// order, so all outputs are deterministic.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "growth.hpp"
#include "semigroup.hpp"

namespace orbitgrowth {

// --------------------------------------------------------- preperiodicity

struct PreperiodicityReport {
    bool preperiodic = false;
    /// When preperiodic: words (f, g) with g(f(P)) = f(P), both nonempty,
    /// re-verified by evaluation.
    std::optional<std::pair<Word, Word>> witness;
};

/// Decide whether some orbit point Q = f(P) is fixed by a nonempty word g.
/// Complete: any cycle lies inside the finite set V = {h <= 2*C_S}, which is
/// explored exhaustively (leaving V is irreversible).
inline PreperiodicityReport is_preperiodic(const SemigroupSystem& S,
                                           const ProjPointQ& P,
                                           std::size_t node_budget = 1000000) {
    if (S.escaped(P)) return {};  // heights strictly increase forever

    // breadth-first closure of the low-height region reachable from P
    std::vector<ProjPointQ> pts{P};
    std::unordered_map<ProjPointQ, std::size_t, ProjPointHash> id{{P, 0}};
    std::vector<std::vector<std::pair<std::uint32_t, std::size_t>>> out_edges(1);
    for (std::size_t u = 0; u < pts.size(); ++u) {
        for (std::uint32_t l = 0; l < S.size(); ++l) {
            ProjPointQ q = S.apply(l, pts[u]);
            if (S.escaped(q)) continue;
            auto [it, fresh] = id.try_emplace(std::move(q), pts.size());
            if (fresh) {
                if (pts.size() >= node_budget)
                    throw resource_limit_error(
                        "is_preperiodic: low-height region exceeds the node budget");
                pts.push_back(it->first);
                out_edges.emplace_back();
            }
            out_edges[u].emplace_back(l, it->second);
        }
    }

    // depth-first search for a cycle reachable from P (node 0)
    std::vector<int> color(pts.size(), 0);  // 0 new, 1 on stack, 2 done
    // stack frames: (node, next out-edge index, letter used to enter node)
    std::vector<std::tuple<std::size_t, std::size_t, std::uint32_t>> stack;
    stack.emplace_back(0, 0, 0);
    color[0] = 1;
    while (!stack.empty()) {
        auto& [u, next, letter_in] = stack.back();
        (void)letter_in;
        if (next >= out_edges[u].size()) {
            color[u] = 2;
            stack.pop_back();
            continue;
        }
        const auto [l, v] = out_edges[u][next++];
        if (color[v] == 2) continue;
        if (color[v] == 0) {
            color[v] = 1;
            stack.emplace_back(v, 0, l);
            continue;
        }
        // back edge u --l--> v with v on the stack: a cycle
        std::size_t j = 0;
        while (std::get<0>(stack[j]) != v) ++j;
        Word f, g;
        for (std::size_t k = 1; k <= j; ++k)
            f.letters.push_back(std::get<2>(stack[k]));
        for (std::size_t k = j + 1; k < stack.size(); ++k)
            g.letters.push_back(std::get<2>(stack[k]));
        g.letters.push_back(l);
        if (f.letters.empty()) f = g;  // the cycle passes through P itself
        const ProjPointQ q = S.apply_word(f, P);
        detail::ensure(S.apply_word(g, q) == q,
                       "is_preperiodic: witness failed re-verification");
        return {true, std::make_pair(std::move(f), std::move(g))};
    }
    return {};
}

// ------------------------------------------------------------------ census

struct CensusOptions {
    /// Cap on word length (exploration depth); unlimited by default.
    std::size_t max_len = std::numeric_limits<std::size_t>::max();
    /// Cap on explored nodes; exceeding it returns a census flagged
    /// budget_exhausted instead of throwing, so partial output survives.
    std::size_t node_budget = 5000000;
};

struct CensusEntry {
    Word word;
    ProjPointQ point;
    double height;
};

struct PointRecord {
    ProjPointQ point;
    Word witness;  ///< first word reaching the point (shortest, input order)
    double height;
    std::size_t fiber = 1;  ///< number of census words landing here
};

struct OrbitCensus {
    double cutoff = 0.0;
    bool preperiodic = false;
    /// Set with `preperiodic`: the function count is infinite (a cycle lies
    /// inside the census window's reach), so `entries` is left empty.
    bool functions_infinite = false;
    bool budget_exhausted = false;
    std::optional<std::pair<Word, Word>> cycle_witness;

    std::vector<CensusEntry> entries;  ///< all words with h(f(P)) <= cutoff
    std::vector<PointRecord> distinct_points;
    std::vector<std::tuple<Word, Word, ProjPointQ>> collisions;
    std::size_t fiber_max = 0;

    /// #{f : h(f(P)) <= x}, certified and delta-inclusive.
    std::size_t n_funcs(double x) const {
        std::size_t n = 0;
        for (const auto& e : entries)
            if (height_leq(e.point.height_arg(), x)) ++n;
        return n;
    }
    /// #{Q in the censused orbit : h(Q) <= x}.
    std::size_t n_points(double x) const {
        std::size_t n = 0;
        for (const auto& p : distinct_points)
            if (height_leq(p.point.height_arg(), x)) ++n;
        return n;
    }
    std::vector<double> func_heights() const {
        std::vector<double> h;
        h.reserve(entries.size());
        for (const auto& e : entries) h.push_back(e.height);
        std::sort(h.begin(), h.end());
        return h;
    }
    std::vector<double> point_heights() const {
        std::vector<double> h;
        h.reserve(distinct_points.size());
        for (const auto& p : distinct_points) h.push_back(p.height);
        std::sort(h.begin(), h.end());
        return h;
    }
};

namespace detail {

struct CensusNode {
    ProjPointQ point;
    std::int64_t parent;  // -1 for the root
    std::uint32_t letter;
};

inline Word reconstruct_word(const std::vector<CensusNode>& arena,
                             std::size_t idx) {
    Word w;
    for (std::int64_t i = static_cast<std::int64_t>(idx);
         arena[static_cast<std::size_t>(i)].parent >= 0;
         i = arena[static_cast<std::size_t>(i)].parent)
        w.letters.push_back(arena[static_cast<std::size_t>(i)].letter);
    std::reverse(w.letters.begin(), w.letters.end());
    return w;
}

}  // namespace detail

/// Enumerate every word f with h(f(P)) <= X.  A branch is pruned at a node Q
/// exactly when h(Q) > max(X, 2*C_S); by the escape property no pruned
/// branch can contribute an entry, so the census is complete.  A preperiodic
/// basepoint is detected up front and reported via the flags instead of
/// looping forever.
inline OrbitCensus orbit_census(const SemigroupSystem& S, const ProjPointQ& P,
                                double X, const CensusOptions& opts = {}) {
    detail::require(X > 0, "orbit_census: cutoff must be positive");
    OrbitCensus census;
    census.cutoff = X;

    const PreperiodicityReport rep = is_preperiodic(S, P, opts.node_budget);
    if (rep.preperiodic) {
        census.preperiodic = true;
        census.functions_infinite = true;
        census.cycle_witness = rep.witness;
        return census;
    }

    auto keep = [&](const BigInt& arg) {
        return arg <= S.escape_arg() || height_leq(arg, X);
    };

    std::vector<detail::CensusNode> arena;
    std::vector<std::size_t> entry_ids;
    arena.push_back({P, -1, 0});
    std::vector<std::size_t> frontier;
    if (keep(P.height_arg())) frontier.push_back(0);

    for (std::size_t depth = 0;
         !frontier.empty() && depth < opts.max_len && !census.budget_exhausted;
         ++depth) {
        std::vector<std::size_t> next;
        for (const std::size_t u : frontier) {
            for (std::uint32_t l = 0; l < S.size() && !census.budget_exhausted;
                 ++l) {
                ProjPointQ q = S.apply(l, arena[u].point);
                const BigInt& arg = q.height_arg();
                const bool entry = height_leq(arg, X);
                if (!entry && arg > S.escape_arg()) continue;  // prune
                if (arena.size() >= opts.node_budget) {
                    census.budget_exhausted = true;
                    break;
                }
                arena.push_back({std::move(q), static_cast<std::int64_t>(u), l});
                if (entry) entry_ids.push_back(arena.size() - 1);
                next.push_back(arena.size() - 1);
            }
            if (census.budget_exhausted) break;
        }
        frontier = std::move(next);
    }

    // materialize entries, deduplicate points, record collisions
    std::unordered_map<ProjPointQ, std::size_t, ProjPointHash> point_id;
    std::vector<std::vector<std::size_t>> fibers;  // entry indices per point
    for (const std::size_t idx : entry_ids) {
        Word w = detail::reconstruct_word(arena, idx);
        const ProjPointQ& pt = arena[idx].point;
        const double hgt = log_cert(pt.height_arg()).value;
        auto [it, fresh] = point_id.emplace(pt, census.distinct_points.size());
        if (fresh) {
            census.distinct_points.push_back({pt, w, hgt, 1});
            fibers.emplace_back();
        } else {
            ++census.distinct_points[it->second].fiber;
        }
        fibers[it->second].push_back(census.entries.size());
        census.entries.push_back({std::move(w), pt, hgt});
    }
    for (std::size_t pi = 0; pi < fibers.size(); ++pi) {
        const auto& fiber = fibers[pi];
        census.fiber_max = std::max(census.fiber_max, fiber.size());
        for (std::size_t i = 0; i < fiber.size(); ++i)
            for (std::size_t j = i + 1; j < fiber.size(); ++j)
                census.collisions.emplace_back(census.entries[fiber[i]].word,
                                               census.entries[fiber[j]].word,
                                               census.distinct_points[pi].point);
    }
    return census;
}

/// #{f in M_S : h(f(P)) <= X}, exact.
inline BigInt count_functions_by_height(const SemigroupSystem& S,
                                        const ProjPointQ& P, double X,
                                        const CensusOptions& opts = {}) {
    const OrbitCensus census = orbit_census(S, P, X, opts);
    detail::require(!census.functions_infinite,
                    "count_functions_by_height: preperiodic basepoint, count is infinite");
    if (census.budget_exhausted)
        throw resource_limit_error(
            "count_functions_by_height: node budget exhausted before completion");
    return BigInt(census.entries.size());
}

/// Theta(X) = N_funcs(X) / X^rho on a grid of cutoffs (one census at the
/// largest grid point powers all of them).
inline std::vector<std::pair<double, double>> theta_ratio(
    const SemigroupSystem& S, const ProjPointQ& P,
    const std::vector<double>& X_grid, const CensusOptions& opts = {}) {
    detail::require(!X_grid.empty(), "theta_ratio: empty grid");
    for (const double x : X_grid)
        detail::require(x > 0, "theta_ratio: grid cutoffs must be positive");
    const double rho = solve_rho(S.degrees()).rho;
    const double xmax = *std::max_element(X_grid.begin(), X_grid.end());
    const OrbitCensus census = orbit_census(S, P, xmax, opts);
    detail::require(!census.functions_infinite,
                    "theta_ratio: preperiodic basepoint");
    if (census.budget_exhausted)
        throw resource_limit_error("theta_ratio: node budget exhausted");
    std::vector<std::pair<double, double>> out;
    out.reserve(X_grid.size());
    for (const double x : X_grid)
        out.emplace_back(
            x, static_cast<double>(census.n_funcs(x)) / std::pow(x, rho));
    return out;
}

// -------------------------------------------------------------- collisions

/// All pairs f != g of words of length <= max_depth with f(P) = g(P),
/// by exhaustive (unpruned) enumeration.
inline std::vector<std::tuple<Word, Word, ProjPointQ>> find_collisions(
    const SemigroupSystem& S, const ProjPointQ& P, std::size_t max_depth,
    std::size_t node_budget = 200000) {
    detail::require(max_depth >= 1, "find_collisions: depth must be >= 1");
    // node count = sum of r^k for k <= max_depth; pre-check against budget
    {
        double total = 0.0, level = 1.0;
        for (std::size_t k = 1; k <= max_depth; ++k) {
            level *= static_cast<double>(S.size());
            total += level;
            if (total > static_cast<double>(node_budget))
                throw resource_limit_error(
                    "find_collisions: word count exceeds the node budget");
        }
    }

    std::vector<detail::CensusNode> arena;
    arena.push_back({P, -1, 0});
    std::vector<std::size_t> frontier{0};
    for (std::size_t depth = 0; depth < max_depth; ++depth) {
        std::vector<std::size_t> next;
        for (const std::size_t u : frontier)
            for (std::uint32_t l = 0; l < S.size(); ++l) {
                arena.push_back({S.apply(l, arena[u].point),
                                 static_cast<std::int64_t>(u), l});
                next.push_back(arena.size() - 1);
            }
        frontier = std::move(next);
    }

    std::unordered_map<ProjPointQ, std::vector<std::size_t>, ProjPointHash>
        fibers;
    std::vector<ProjPointQ> seen_order;
    for (std::size_t i = 1; i < arena.size(); ++i) {
        auto [it, fresh] = fibers.try_emplace(arena[i].point);
        if (fresh) seen_order.push_back(arena[i].point);
        it->second.push_back(i);
    }
    std::vector<std::tuple<Word, Word, ProjPointQ>> out;
    for (const auto& pt : seen_order) {
        const auto& fiber = fibers.at(pt);
        for (std::size_t i = 0; i < fiber.size(); ++i)
            for (std::size_t j = i + 1; j < fiber.size(); ++j) {
                out.emplace_back(detail::reconstruct_word(arena, fiber[i]),
                                 detail::reconstruct_word(arena, fiber[j]), pt);
                const auto& [f, g, q] = out.back();
                detail::ensure(S.apply_word(f, P) == q && S.apply_word(g, P) == q,
                               "find_collisions: collision failed re-verification");
            }
    }
    return out;
}

// ------------------------------------------------------------ decomposition

/// Split of an infinite orbit at level B: the (finite) set of points of
/// {P} union Orb_S(P) with h <= B, and the frontier T = {Q : B < h(Q) <= 2dB}
/// with d the largest generator degree.  Every orbit point above B lies in
/// the orbit of some frontier point.
struct OrbitDecomposition {
    double B = 0.0;
    std::vector<ProjPointQ> low_set;    ///< h <= B
    std::vector<ProjPointQ> frontier;   ///< B < h <= 2dB
};

inline OrbitDecomposition decompose_orbit(const SemigroupSystem& S,
                                          const ProjPointQ& P, double B,
                                          const CensusOptions& opts = {}) {
    detail::require(B > 0, "decompose_orbit: level must be positive");
    const double d = static_cast<double>(
        *std::max_element(S.degrees().begin(), S.degrees().end()));
    const OrbitCensus census = orbit_census(S, P, 2.0 * d * B, opts);
    detail::require(!census.preperiodic,
                    "decompose_orbit: orbit is finite or preperiodic");
    if (census.budget_exhausted)
        throw resource_limit_error("decompose_orbit: node budget exhausted");
    OrbitDecomposition out;
    out.B = B;
    // The basepoint belongs to the covered set; a non-preperiodic orbit can
    // never revisit it, so there is no duplicate to worry about.
    if (height_leq(P.height_arg(), B))
        out.low_set.push_back(P);
    else if (height_leq(P.height_arg(), 2.0 * d * B))
        out.frontier.push_back(P);
    for (const auto& rec : census.distinct_points) {
        if (height_leq(rec.point.height_arg(), B))
            out.low_set.push_back(rec.point);
        else
            out.frontier.push_back(rec.point);
    }
    return out;
}

}  // namespace orbitgrowth

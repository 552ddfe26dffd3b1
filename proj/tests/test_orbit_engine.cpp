#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "orbitgrowth/errors.hpp"
#include "orbitgrowth/orbit.hpp"

using namespace orbitgrowth;
using Catch::Matchers::WithinAbs;

namespace {
RationalMapQ mk(const std::vector<long>& num, const std::vector<long>& den) {
    std::vector<BigInt> n(num.begin(), num.end()), d(den.begin(), den.end());
    return RationalMapQ::from_coeff_lists(n, d);
}
// power system: x^2 and x^3 acting on 2, heights are exact multiples of ln 2
SemigroupSystem sys_pow() {
    return SemigroupSystem({mk({1, 0, 0}, {1}), mk({1, 0, 0, 0}, {1})});
}
// monomial degree-8 system: 2x^8 and 3x^8 acting on 1
SemigroupSystem sys_mono8() {
    return SemigroupSystem({mk({2, 0, 0, 0, 0, 0, 0, 0, 0}, {1}),
                            mk({3, 0, 0, 0, 0, 0, 0, 0, 0}, {1})});
}
const double LN2 = std::log(2.0);
}  // namespace

TEST_CASE("preperiodicity detection", "[orbit][preperiodic]") {
    {
        // fixed point of x^2
        const SemigroupSystem S({mk({1, 0, 0}, {1})});
        const PreperiodicityReport r = is_preperiodic(S, ProjPointQ(1, 1));
        CHECK(r.preperiodic);
        REQUIRE(r.witness);
        const ProjPointQ q = S.apply_word(r.witness->first, ProjPointQ(1, 1));
        CHECK(S.apply_word(r.witness->second, q) == q);
    }
    {
        // 0 -> -1 -> 0 under x^2 - 1
        const SemigroupSystem S({mk({1, 0, -1}, {1}), mk({1, 0, 0}, {1})});
        const PreperiodicityReport r = is_preperiodic(S, ProjPointQ(0, 1));
        CHECK(r.preperiodic);
        REQUIRE(r.witness);
        const ProjPointQ q = S.apply_word(r.witness->first, ProjPointQ(0, 1));
        CHECK(S.apply_word(r.witness->second, q) == q);
    }
    {
        // 0 -> 1 -> 2 -> 5 -> 26 -> ... under x^2 + 1: strictly wandering
        const SemigroupSystem S({mk({1, 0, 1}, {1})});
        CHECK_FALSE(is_preperiodic(S, ProjPointQ(0, 1)).preperiodic);
    }
    {
        // 1 is fixed by every power map
        CHECK(is_preperiodic(sys_pow(), ProjPointQ(1, 1)).preperiodic);
        // 2 wanders
        CHECK_FALSE(is_preperiodic(sys_pow(), ProjPointQ(2, 1)).preperiodic);
    }
    // budget too small for the low-height closure
    CHECK_THROWS_AS(is_preperiodic(sys_pow(), ProjPointQ(2, 1), 2),
                    resource_limit_error);
}

TEST_CASE("orbit census on the power system", "[orbit][census]") {
    const SemigroupSystem S = sys_pow();
    const ProjPointQ P(2, 1);
    const OrbitCensus c = orbit_census(S, P, 10.0 * LN2);

    CHECK_FALSE(c.preperiodic);
    CHECK_FALSE(c.budget_exhausted);
    // words realizing degrees 2, 3, 4, 6 (twice), 8, 9
    CHECK(c.entries.size() == 7);
    CHECK(c.distinct_points.size() == 6);
    CHECK(c.fiber_max == 2);
    REQUIRE(c.collisions.size() == 1);
    {
        const auto& [f, g, q] = c.collisions[0];
        CHECK(q == ProjPointQ(64, 1));
        CHECK(f.str() == "1.2");
        CHECK(g.str() == "2.1");
    }
    // every entry is the word's actual image and sits below the cutoff
    for (const CensusEntry& e : c.entries) {
        CHECK(S.apply_word(e.word, P) == e.point);
        CHECK(height_leq(e.point.height_arg(), c.cutoff));
        CHECK_THAT(e.height, WithinAbs(e.point.height(), 1e-12));
    }
    // nested cutoffs
    CHECK(c.n_funcs(10.0 * LN2) == 7);
    CHECK(c.n_funcs(9.0 * LN2) == 7);   // degree 9 sits exactly on the cutoff
    CHECK(c.n_funcs(8.5 * LN2) == 6);   // ... and drops out just below it
    CHECK(c.n_funcs(2.0 * LN2) == 1);
    CHECK(c.n_funcs(1.0) == 0);
    CHECK(c.n_points(10.0 * LN2) == 6);

    // the bigger window from the same system
    const OrbitCensus c2 = orbit_census(S, P, 100.0 * LN2);
    CHECK(c2.entries.size() == 53);
    CHECK(c2.distinct_points.size() == 19);
    CHECK(count_functions_by_height(S, P, 100.0 * LN2) == 53);
}

TEST_CASE("orbit census is deterministic", "[orbit][census]") {
    const SemigroupSystem S = sys_pow();
    const OrbitCensus a = orbit_census(S, ProjPointQ(2, 1), 40.0);
    const OrbitCensus b = orbit_census(S, ProjPointQ(2, 1), 40.0);
    REQUIRE(a.entries.size() == b.entries.size());
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        CHECK(a.entries[i].word == b.entries[i].word);
        CHECK(a.entries[i].point == b.entries[i].point);
    }
}

TEST_CASE("orbit census on the degree-8 monomial system", "[orbit][census]") {
    const SemigroupSystem S = sys_mono8();
    const ProjPointQ P(1, 1);
    CHECK_THAT(S.C_S(), WithinAbs(8.0 * std::log(3.0), 1e-12));

    const OrbitCensus c = orbit_census(S, P, 50000.0);
    // all words of length <= 6 land below the cutoff; length 7 is far above
    CHECK(c.entries.size() == 126);
    CHECK(c.distinct_points.size() == 126);  // no collisions here
    CHECK(c.collisions.empty());
    CHECK(c.fiber_max == 1);

    // pinned level-2 heights
    const std::vector<double> expect2 = {6.23832462504, 6.64378973315,
                                         9.4820454899, 9.88751059801};
    std::vector<double> level2;
    for (const CensusEntry& e : c.entries)
        if (e.word.length() == 2) level2.push_back(e.height);
    std::sort(level2.begin(), level2.end());
    REQUIRE(level2.size() == 4);
    for (std::size_t i = 0; i < 4; ++i)
        CHECK_THAT(level2[i], WithinAbs(expect2[i], 1e-9));

    CHECK(c.n_funcs(std::log(3.0)) == 2);  // delta-inclusive boundary hit
    CHECK(c.n_funcs(7.0) == 4);
}

TEST_CASE("theta ratio jump analysis", "[orbit][theta]") {
    const SemigroupSystem S = sys_mono8();
    const ProjPointQ P(1, 1);
    const OrbitCensus c = orbit_census(S, P, 50000.0);
    const std::vector<double> h = c.func_heights();
    REQUIRE(h.size() == 126);

    // evaluate just past each jump; all 126 heights are distinct here
    std::vector<double> grid;
    for (const double x : h) grid.push_back(x + 1e-12);
    const auto pts = theta_ratio(S, P, grid);
    REQUIRE(pts.size() == 126);
    double lo = 1e300, hi = 0.0;
    for (std::size_t k = 0; k < pts.size(); ++k) {
        // theta at the k-th jump is (k+1) / X^rho with rho = 1/3
        CHECK_THAT(pts[k].second,
                   WithinAbs(static_cast<double>(k + 1) /
                                 std::pow(pts[k].first, 1.0 / 3.0),
                             1e-9));
        lo = std::min(lo, pts[k].second);
        hi = std::max(hi, pts[k].second);
    }
    CHECK_THAT(lo, WithinAbs(1.12994727634, 1e-6));
    CHECK_THAT(hi, WithinAbs(3.64985534623, 1e-6));
    CHECK_THAT(hi / lo, WithinAbs(3.23011119427, 1e-6));
}

TEST_CASE("census flags preperiodic base points", "[orbit][census][preperiodic]") {
    const SemigroupSystem S = sys_pow();
    const OrbitCensus c = orbit_census(S, ProjPointQ(1, 1), 5.0);
    CHECK(c.preperiodic);
    CHECK(c.functions_infinite);
    CHECK(c.entries.empty());
    REQUIRE(c.cycle_witness);
    const ProjPointQ q = S.apply_word(c.cycle_witness->first, ProjPointQ(1, 1));
    CHECK(S.apply_word(c.cycle_witness->second, q) == q);

    CHECK_THROWS_AS(count_functions_by_height(S, ProjPointQ(1, 1), 5.0),
                    invalid_input_error);
    CHECK_THROWS_AS(theta_ratio(S, ProjPointQ(1, 1), {5.0}), invalid_input_error);
}

TEST_CASE("census budget exhaustion is flagged, not thrown", "[orbit][census]") {
    const SemigroupSystem S = sys_pow();
    CensusOptions opts;
    opts.node_budget = 10;
    const OrbitCensus c = orbit_census(S, ProjPointQ(2, 1), 100.0 * LN2, opts);
    CHECK(c.budget_exhausted);
    CHECK(c.entries.size() < 53);  // partial prefix only
    CHECK_THROWS_AS(count_functions_by_height(S, ProjPointQ(2, 1), 100.0 * LN2, opts),
                    resource_limit_error);
}

TEST_CASE("collision search", "[orbit][collisions]") {
    const SemigroupSystem S = sys_pow();
    const ProjPointQ P(2, 1);
    {
        const auto cols = find_collisions(S, P, 2);
        REQUIRE(cols.size() == 1);
        const auto& [f, g, q] = cols[0];
        CHECK(f.str() == "1.2");
        CHECK(g.str() == "2.1");
        CHECK(q == ProjPointQ(64, 1));
        CHECK(S.apply_word(f, P) == q);
        CHECK(S.apply_word(g, P) == q);
    }
    {
        // depth 3 adds the two three-letter fibers of size three
        const auto cols = find_collisions(S, P, 3);
        CHECK(cols.size() == 1 + 3 + 3);
        std::set<ProjPointQ> pts;
        for (const auto& [f, g, q] : cols) {
            (void)f;
            (void)g;
            pts.insert(q);
        }
        CHECK(pts.size() == 3);  // 2^6, 2^12, 2^18
    }
    // the monomial degree-8 system stays collision-free to depth 4
    CHECK(find_collisions(sys_mono8(), ProjPointQ(1, 1), 4).empty());
    // budget precheck rejects absurd depths outright
    CHECK_THROWS_AS(find_collisions(S, P, 60), resource_limit_error);
}

TEST_CASE("orbit decomposition", "[orbit][decompose]") {
    const SemigroupSystem S({mk({1, 0, 1}, {1})});  // x^2 + 1
    const ProjPointQ P(0, 1);
    const double B = 2.0 * std::log(3.0);
    const OrbitDecomposition d = decompose_orbit(S, P, B);
    REQUIRE(d.low_set.size() == 4);
    CHECK(d.low_set[0] == ProjPointQ(0, 1));  // base point first
    CHECK(d.low_set[1] == ProjPointQ(1, 1));
    CHECK(d.low_set[2] == ProjPointQ(2, 1));
    CHECK(d.low_set[3] == ProjPointQ(5, 1));
    REQUIRE(d.frontier.size() == 2);
    CHECK(d.frontier[0] == ProjPointQ(26, 1));
    CHECK(d.frontier[1] == ProjPointQ(677, 1));
    // every frontier point sits in (B, 2dB]
    for (const ProjPointQ& q : d.frontier) {
        CHECK_FALSE(height_leq(q.height_arg(), B));
        CHECK(height_leq(q.height_arg(), 2.0 * 2.0 * B));
    }
    // preperiodic base points are rejected
    const SemigroupSystem Ssq({mk({1, 0, 0}, {1})});
    CHECK_THROWS_AS(decompose_orbit(Ssq, ProjPointQ(1, 1), 3.0), invalid_input_error);
}

#pragma once

// A finitely generated semigroup of rational self-maps of P^1(Q), acting on
// points by composition.  This header holds the value types shared by the
// orbit machinery:
//
//   * Word       -- a composition of generators, stored innermost-first,
//   * SemigroupSystem -- the generator list together with the derived
//     constants: C_S (the largest height offset of a generator), d_S (the
//     smallest degree), b_S = C_S/(d_S - 1), and the escape threshold 2*C_S.
//
// Once a point's height exceeds 2*C_S, every further image strictly
// increases in height (h(phi(Q)) >= d*h(Q) - C_S > h(Q)), so no branch can
// re-enter a bounded-height region.  That single fact powers complete
// pruning, preperiodicity detection, and the beta tail bounds downstream.
//
// Heights are natural logarithms of exact integers, so threshold tests
// against 2*C_S reduce to integer comparisons (the threshold is ln(M^2) for
// the exact integer M realising C_S = ln M).  Tests against a real-valued
// cutoff X use a certified float bracket first and a 50-digit refinement
// when the bracket straddles the cutoff; cutoffs are delta-inclusive with
// delta = 1e-9 so that a cutoff specified in double precision (for example
// X = 10*ln 2) keeps the orbit points lying exactly on it.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "growth.hpp"
#include "int_types.hpp"
#include "p1_map.hpp"
#include "p1_point.hpp"

namespace orbitgrowth {

/// Inclusive slack for real-valued height cutoffs, in nats.
inline constexpr double kHeightDelta = 1e-9;

/// True iff ln(arg) <= bound + delta, decided by a certified double bracket
/// with a 50-digit refinement for near-ties.  arg must be >= 1 (it is
/// max(|x|, |y|) of a normalized projective point).
inline bool height_leq(const BigInt& arg, double bound,
                       double delta = kHeightDelta) {
    const double cutoff = bound + delta;
    const CertValue h = log_cert(arg);
    if (h.hi() <= cutoff) return true;
    if (h.lo() > cutoff) return false;
    return log_refined(arg) <= BigFloat(cutoff);
}

// -------------------------------------------------------------------- word

/// A nonempty composition of generators.  letters[0] is applied first
/// (innermost); letters.back() is the outermost map.  Indices are 0-based
/// positions in the generator list.
struct Word {
    std::vector<std::uint32_t> letters;

    std::size_t length() const { return letters.size(); }

    bool operator==(const Word& o) const { return letters == o.letters; }
    bool operator!=(const Word& o) const { return letters != o.letters; }

    /// 1-based letters in application order, e.g. "2.1" = first generator 2,
    /// then generator 1.
    std::string str() const {
        std::string out;
        for (std::size_t i = 0; i < letters.size(); ++i) {
            if (i) out += '.';
            out += std::to_string(letters[i] + 1);
        }
        return out;
    }
};

// ------------------------------------------------------------------ system

class SemigroupSystem {
  public:
    explicit SemigroupSystem(std::vector<RationalMapQ> maps)
        : maps_(std::move(maps)) {
        detail::require(!maps_.empty(), "semigroup needs at least one generator");
        degrees_.reserve(maps_.size());
        offset_arg_ = 0;
        for (const auto& m : maps_) {
            degrees_.push_back(static_cast<std::uint64_t>(m.degree()));
            if (m.height_offset_arg() > offset_arg_) offset_arg_ = m.height_offset_arg();
        }
        threshold_arg_ = offset_arg_ * offset_arg_;
    }

    std::size_t size() const { return maps_.size(); }
    const std::vector<RationalMapQ>& maps() const { return maps_; }
    const RationalMapQ& map(std::size_t i) const { return maps_[i]; }
    const WeightVector& degrees() const { return degrees_; }

    /// Exact integer M with C_S = ln M (largest generator height offset).
    const BigInt& offset_arg() const { return offset_arg_; }
    /// Exact integer M^2 with escape_threshold = ln M^2.
    const BigInt& escape_arg() const { return threshold_arg_; }

    double C_S() const { return log_cert(offset_arg_).value; }
    /// Smallest generator degree.
    std::uint64_t d_S() const {
        std::uint64_t m = degrees_[0];
        for (const auto d : degrees_) m = std::min(m, d);
        return m;
    }
    /// One-step height distortion bound: |h(phi(Q))/deg(phi) - h(Q)| <= b_S.
    double b_S() const { return C_S() / static_cast<double>(d_S() - 1); }
    double escape_threshold() const { return 2.0 * C_S(); }
    BigFloat escape_threshold_refined() const {
        return log_refined(threshold_arg_);
    }

    /// True iff h(Q) > 2*C_S, exactly (integer comparison, no rounding).
    bool escaped(const ProjPointQ& q) const {
        return q.height_arg() > threshold_arg_;
    }

    ProjPointQ apply(std::uint32_t letter, const ProjPointQ& p) const {
        return maps_[letter].evaluate(p);
    }

    ProjPointQ apply_word(const Word& w, const ProjPointQ& p) const {
        detail::require(!w.letters.empty(), "cannot apply the empty word");
        ProjPointQ q = p;
        for (const auto letter : w.letters) {
            detail::require(letter < maps_.size(), "word letter out of range");
            q = maps_[letter].evaluate(q);
        }
        return q;
    }

    /// Product of the letter degrees (the degree of the composition).
    BigInt word_degree(const Word& w) const {
        BigInt d = 1;
        for (const auto letter : w.letters) {
            detail::require(letter < maps_.size(), "word letter out of range");
            d *= degrees_[letter];
        }
        return d;
    }

  private:
    std::vector<RationalMapQ> maps_;
    WeightVector degrees_;
    BigInt offset_arg_;
    BigInt threshold_arg_;
};

}  // namespace orbitgrowth

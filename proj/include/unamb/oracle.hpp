#pragma once

// Brute-force cross-checks: exhaustive sweeps at a size bound and seeded
// random sweeps. Every sweep is deterministic in its parameters.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "unamb/grammar.hpp"
#include "unamb/semilinear.hpp"
#include "unamb/witness.hpp"

namespace unamb {

struct Mismatch {
    std::string subject;
    std::string expected;
    std::string actual;

    friend bool operator==(const Mismatch&, const Mismatch&) = default;
    friend auto operator<=>(const Mismatch&, const Mismatch&) = default;
};

struct SweepReport {
    std::string domain_description;
    std::size_t points_checked = 0;
    std::vector<Mismatch> mismatches;

    bool passed() const noexcept { return mismatches.empty(); }
};

/// Report text: description, count, one line per mismatch, then `PASS` or
/// `FAIL n mismatches`. The tsv variant writes `subject<TAB>expected<TAB>actual`.
std::string format_report(const SweepReport& report, bool tsv = false);

/// 64-bit LCG, x' = 6364136223846793005 x + 1442695040888963407 (mod 2^64),
/// seeded with x0 = seed. Each draw advances once and uses bits 63..32.
class Lcg {
public:
    explicit Lcg(std::uint64_t seed) : state_(seed) {}

    std::uint32_t next();
    /// Uniform-ish in [lo, hi] by reduction modulo the range width.
    std::int64_t uniform(std::int64_t lo, std::int64_t hi);

private:
    std::uint64_t state_;
};

/// Every sorted word over a1..a9 with length <= max_length, in length-then-
/// lexicographic order of exponent vectors.
std::vector<Word> sorted_words(std::size_t max_length);

/// Either one component or the whole language L.
using MembershipTarget = std::optional<ComponentId>;

SweepReport sweep_grammar_vs_predicate(const Grammar& grammar, MembershipTarget target,
                                       std::size_t max_length);
SweepReport sweep_disjointness(std::int64_t max_coord);
/// The one coordinate pair compared in both components with opposite senses,
/// or nullopt when the comparison tables do not have exactly one shared pair.
std::optional<std::pair<int, int>> separating_pair(ComponentId a, ComponentId b);
SweepReport sweep_separation_pairs(std::int64_t max_coord);

struct RandomUnionParams {
    std::size_t max_sets = 5;
    std::size_t max_basis = 6;
    std::int64_t max_coord = 4;
};

/// Sets: count uniform in [0, max_sets]. Shift: each coordinate uniform in
/// [0, max_coord]. Basis: count uniform in [0, max_basis]; each vector picks 1
/// or 2 distinct positions uniformly and values uniform in [1, max_coord].
/// With max_coord = 0 every vector is zero.
SemilinearUnion random_light_union(Lcg& rng, const RandomUnionParams& params,
                                   std::size_t dimension = kWitnessDimension);

SweepReport sweep_refuter(std::size_t trials, const RandomUnionParams& params, std::uint64_t seed);

/// Exhaustive enumeration of coefficient tuples with each c_i at most the
/// largest coordinate of the point. Independent of member().
bool member_brute_force(const LinearSet& set, const ExponentVector& point);

/// member() against member_brute_force() on random (set, point) pairs with
/// dimension in [1, max_dim], up to max_basis vectors and coordinates up to
/// max_coord. Half of the points are built as members.
SweepReport sweep_member_oracle(std::size_t queries, std::size_t max_dim, std::size_t max_basis,
                                std::int64_t max_coord, std::uint64_t seed);

/// is_stratified against a direct reading of the crossing condition over all
/// index quadruples, on random sets; also checks is_stratified => is_light.
SweepReport sweep_stratified(std::size_t trials, std::size_t dimension, std::size_t max_basis,
                             std::uint64_t seed);

}  // namespace unamb

#pragma once

// Linear sets {shift + sum c_i * basis_i : c_i in N} over N^k and finite
// unions of them.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "unamb/exponent_vector.hpp"

namespace unamb {

struct LinearSet {
    ExponentVector shift;
    std::vector<ExponentVector> basis;

    std::size_t dimension() const noexcept { return shift.dimension(); }

    /// Throws DimensionError when a basis vector's length differs from the shift's.
    void check_dimensions() const;

    friend bool operator==(const LinearSet&, const LinearSet&) = default;
};

struct SemilinearUnion {
    std::size_t dimension = 0;
    std::vector<LinearSet> sets;

    /// Throws DimensionError when a member set disagrees with `dimension`.
    void check_dimensions() const;

    friend bool operator==(const SemilinearUnion&, const SemilinearUnion&) = default;
};

/// set_index is 0-based; text output numbers sets from 1.
struct MembershipWitness {
    std::size_t set_index = 0;
    std::vector<std::int64_t> coefficients;

    friend bool operator==(const MembershipWitness&, const MembershipWitness&) = default;
};

/// Drops zero basis vectors and repeated ones, keeping first occurrences.
LinearSet normalize(const LinearSet& set);
SemilinearUnion normalize(const SemilinearUnion& u);

/// Coefficients aligned with set.basis such that shift + sum c_i basis_i
/// equals point, or nullopt. Exhaustive: the answer is nullopt only when no
/// representation exists. Zero basis vectors get coefficient 0.
/// Throws DimensionError.
std::optional<std::vector<std::int64_t>> member(const LinearSet& set, const ExponentVector& point);

/// Witness for the first set in list order that contains the point.
std::optional<MembershipWitness> member_union(const SemilinearUnion& u, const ExponentVector& point);

/// shift + sum c_i basis_i, with checked arithmetic. Throws DimensionError
/// if the coefficient count does not match the basis.
ExponentVector evaluate(const LinearSet& set, const std::vector<std::int64_t>& coefficients);

/// Every basis vector has at most two nonzero coordinates.
bool is_light(const LinearSet& set);

/// Light, and no two basis vectors cross: there are no positions
/// j1 < j2 < j3 < j4 with one vector nonzero at j1, j3 and another at j2, j4.
bool is_stratified(const LinearSet& set);

// Union text format: one set per block, blocks separated by blank lines.
//
//   # comment
//   alpha: 1 0 0 0 0 0 0 0 0
//   beta: 2 1 0 0 0 0 0 0 0
//
// The dimension comes from the first vector (or expected_dimension when
// given) and is enforced for every later vector.

/// Throws FormatError. An empty text yields an empty union whose dimension
/// is expected_dimension (or 0).
SemilinearUnion parse_union(std::string_view text,
                            std::optional<std::size_t> expected_dimension = std::nullopt);
std::string format_linear_set(const LinearSet& set);
std::string format_union(const SemilinearUnion& u);

}  // namespace unamb

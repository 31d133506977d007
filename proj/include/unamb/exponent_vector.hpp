#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace unamb {

/// Checked arithmetic on coordinates; throws OverflowError instead of wrapping.
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_sub(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

/// A point of N^k. Coordinates are stored 0-based; documentation and text
/// output number them from 1.
class ExponentVector {
public:
    ExponentVector() = default;
    /// All-zero vector of the given dimension.
    explicit ExponentVector(std::size_t dimension);
    /// Throws std::invalid_argument on a negative coordinate.
    explicit ExponentVector(std::vector<std::int64_t> coords);
    ExponentVector(std::initializer_list<std::int64_t> coords);

    std::size_t dimension() const noexcept { return coords_.size(); }
    std::int64_t operator[](std::size_t i) const { return coords_[i]; }
    /// 1-based access, matching the i_1..i_k notation.
    std::int64_t at1(std::size_t j) const { return coords_.at(j - 1); }
    std::span<const std::int64_t> coords() const noexcept { return coords_; }

    /// Throws std::invalid_argument if value is negative.
    void set(std::size_t i, std::int64_t value);

    std::size_t nonzero_count() const noexcept;
    bool is_zero() const noexcept { return nonzero_count() == 0; }
    std::int64_t max_coordinate() const noexcept;

    /// this + factor * other with checked arithmetic. Throws
    /// std::invalid_argument if a coordinate would become negative.
    ExponentVector add_scaled(const ExponentVector& other, std::int64_t factor) const;
    /// As add_scaled, but returns false (leaving out untouched) when a
    /// coordinate would become negative.
    bool try_add_scaled(const ExponentVector& other, std::int64_t factor,
                        ExponentVector& out) const;

    friend bool operator==(const ExponentVector&, const ExponentVector&) = default;
    friend auto operator<=>(const ExponentVector&, const ExponentVector&) = default;

private:
    std::vector<std::int64_t> coords_;
};

/// `(1 3 2 2 1 2 2 1 1)`
std::string format_point(const ExponentVector& point);
/// Inverse of format_point; throws FormatError.
ExponentVector parse_point(std::string_view text);
/// Space-separated coordinates without parentheses, as used in union files.
std::string format_coords(const ExponentVector& point);

/// Throws DimensionError unless v has the expected dimension.
void require_dimension(const ExponentVector& v, std::size_t expected, std::string_view what);

}  // namespace unamb

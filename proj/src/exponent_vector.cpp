#include "unamb/exponent_vector.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

#include "unamb/errors.hpp"

namespace unamb {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in addition");
    return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("integer overflow in subtraction");
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in multiplication");
    return r;
}

ExponentVector::ExponentVector(std::size_t dimension) : coords_(dimension, 0) {}

ExponentVector::ExponentVector(std::vector<std::int64_t> coords) : coords_(std::move(coords)) {
    for (auto c : coords_) {
        if (c < 0) throw std::invalid_argument("exponent vector coordinates must be non-negative");
    }
}

ExponentVector::ExponentVector(std::initializer_list<std::int64_t> coords)
    : ExponentVector(std::vector<std::int64_t>(coords)) {}

void ExponentVector::set(std::size_t i, std::int64_t value) {
    if (value < 0) throw std::invalid_argument("exponent vector coordinates must be non-negative");
    coords_.at(i) = value;
}

std::size_t ExponentVector::nonzero_count() const noexcept {
    return static_cast<std::size_t>(std::count_if(coords_.begin(), coords_.end(),
                                                  [](std::int64_t c) { return c != 0; }));
}

std::int64_t ExponentVector::max_coordinate() const noexcept {
    return coords_.empty() ? 0 : *std::max_element(coords_.begin(), coords_.end());
}

bool ExponentVector::try_add_scaled(const ExponentVector& other, std::int64_t factor,
                                    ExponentVector& out) const {
    require_dimension(other, dimension(), "vector");
    std::vector<std::int64_t> result(coords_.size());
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        result[i] = checked_add(coords_[i], checked_mul(factor, other.coords_[i]));
        if (result[i] < 0) return false;
    }
    out.coords_ = std::move(result);
    return true;
}

ExponentVector ExponentVector::add_scaled(const ExponentVector& other, std::int64_t factor) const {
    ExponentVector out;
    if (!try_add_scaled(other, factor, out)) {
        throw std::invalid_argument("vector arithmetic left N^k");
    }
    return out;
}

std::string format_coords(const ExponentVector& point) {
    std::ostringstream os;
    for (std::size_t i = 0; i < point.dimension(); ++i) {
        if (i) os << ' ';
        os << point[i];
    }
    return os.str();
}

std::string format_point(const ExponentVector& point) {
    return "(" + format_coords(point) + ")";
}

ExponentVector parse_point(std::string_view text) {
    auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
    while (!text.empty() && is_space(text.front())) text.remove_prefix(1);
    while (!text.empty() && is_space(text.back())) text.remove_suffix(1);
    if (text.size() < 2 || text.front() != '(' || text.back() != ')') {
        throw FormatError("point must be written as (i1 ... ik)");
    }
    text = text.substr(1, text.size() - 2);

    std::vector<std::int64_t> coords;
    std::size_t pos = 0;
    while (pos < text.size()) {
        if (is_space(text[pos])) {
            ++pos;
            continue;
        }
        std::size_t end = pos;
        while (end < text.size() && !is_space(text[end])) ++end;
        std::string_view token = text.substr(pos, end - pos);
        std::int64_t value = 0;
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (ec == std::errc::result_out_of_range) {
            throw FormatError("coordinate out of range: " + std::string(token));
        }
        if (ec != std::errc() || ptr != token.data() + token.size() || value < 0) {
            throw FormatError("bad coordinate: " + std::string(token));
        }
        coords.push_back(value);
        pos = end;
    }
    return ExponentVector(std::move(coords));
}

void require_dimension(const ExponentVector& v, std::size_t expected, std::string_view what) {
    if (v.dimension() != expected) {
        throw DimensionError(std::string(what) + " has dimension " + std::to_string(v.dimension()) +
                             ", expected " + std::to_string(expected));
    }
}

}  // namespace unamb

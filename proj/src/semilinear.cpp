#include "unamb/semilinear.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>
#include <unordered_set>

#include "unamb/errors.hpp"

namespace unamb {

void LinearSet::check_dimensions() const {
    for (const auto& b : basis) require_dimension(b, shift.dimension(), "basis vector");
}

void SemilinearUnion::check_dimensions() const {
    for (const auto& s : sets) {
        require_dimension(s.shift, dimension, "shift vector");
        s.check_dimensions();
    }
}

LinearSet normalize(const LinearSet& set) {
    set.check_dimensions();
    LinearSet out{set.shift, {}};
    for (const auto& b : set.basis) {
        if (b.is_zero()) continue;
        if (std::find(out.basis.begin(), out.basis.end(), b) != out.basis.end()) continue;
        out.basis.push_back(b);
    }
    return out;
}

SemilinearUnion normalize(const SemilinearUnion& u) {
    SemilinearUnion out{u.dimension, {}};
    for (const auto& s : u.sets) out.sets.push_back(normalize(s));
    return out;
}

ExponentVector evaluate(const LinearSet& set, const std::vector<std::int64_t>& coefficients) {
    if (coefficients.size() != set.basis.size()) {
        throw DimensionError("coefficient count does not match the basis");
    }
    ExponentVector point = set.shift;
    for (std::size_t i = 0; i < coefficients.size(); ++i) {
        if (coefficients[i] < 0) throw std::invalid_argument("coefficients must be non-negative");
        point = point.add_scaled(set.basis[i], coefficients[i]);
    }
    return point;
}

namespace {

// Depth-first search over coefficients, largest first, for the nonzero basis
// vectors in `order`. covered_after[k][j] says whether some vector at
// position >= k of `order` is nonzero at coordinate j.
class CoefficientSearch {
public:
    CoefficientSearch(const LinearSet& set, std::vector<std::size_t> order)
        : set_(set), order_(std::move(order)), dim_(set.dimension()) {
        covered_after_.assign(order_.size() + 1, std::vector<char>(dim_, 0));
        for (std::size_t k = order_.size(); k-- > 0;) {
            covered_after_[k] = covered_after_[k + 1];
            const auto& b = set_.basis[order_[k]];
            for (std::size_t j = 0; j < dim_; ++j) {
                if (b[j] != 0) covered_after_[k][j] = 1;
            }
        }
        chosen_.assign(order_.size(), 0);
    }

    bool run(std::vector<std::int64_t> residual) { return descend(0, residual); }

    const std::vector<std::int64_t>& chosen() const { return chosen_; }

private:
    bool descend(std::size_t k, std::vector<std::int64_t>& residual) {
        for (std::size_t j = 0; j < dim_; ++j) {
            if (residual[j] != 0 && !covered_after_[k][j]) return false;
        }
        if (k == order_.size()) return true;

        // The outcome depends only on (k, residual); skip states already refuted.
        std::vector<std::int64_t> key(residual);
        key.push_back(static_cast<std::int64_t>(k));
        if (failed_.contains(key)) return false;
        if (explore(k, residual)) return true;
        if (failed_.size() < kMemoLimit) failed_.insert(std::move(key));
        return false;
    }

    bool explore(std::size_t k, std::vector<std::int64_t>& residual) {
        const auto& b = set_.basis[order_[k]];
        std::int64_t high = -1;
        std::int64_t forced = -1;
        for (std::size_t j = 0; j < dim_; ++j) {
            if (b[j] == 0) continue;
            const std::int64_t bound = residual[j] / b[j];
            high = high < 0 ? bound : std::min(high, bound);
            // Nothing later can fill coordinate j, so this coefficient must do it exactly.
            if (!covered_after_[k + 1][j]) {
                if (residual[j] % b[j] != 0) return false;
                const std::int64_t exact = residual[j] / b[j];
                if (forced >= 0 && forced != exact) return false;
                forced = exact;
            }
        }
        std::int64_t low = 0;
        if (forced >= 0) {
            if (forced > high) return false;
            low = high = forced;
        }
        for (std::int64_t c = high; c >= low; --c) {
            for (std::size_t j = 0; j < dim_; ++j) residual[j] -= c * b[j];
            chosen_[k] = c;
            if (descend(k + 1, residual)) return true;
            for (std::size_t j = 0; j < dim_; ++j) residual[j] += c * b[j];
        }
        chosen_[k] = 0;
        return false;
    }

    const LinearSet& set_;
    std::vector<std::size_t> order_;
    std::size_t dim_;
    std::vector<std::vector<char>> covered_after_;
    std::vector<std::int64_t> chosen_;

    struct KeyHash {
        std::size_t operator()(const std::vector<std::int64_t>& v) const noexcept {
            std::size_t h = 0xcbf29ce484222325ULL;
            for (auto x : v) h = (h ^ static_cast<std::size_t>(x)) * 0x100000001b3ULL;
            return h;
        }
    };
    static constexpr std::size_t kMemoLimit = 1u << 21;
    std::unordered_set<std::vector<std::int64_t>, KeyHash> failed_;
};

}  // namespace

std::optional<std::vector<std::int64_t>> member(const LinearSet& set, const ExponentVector& point) {
    set.check_dimensions();
    require_dimension(point, set.dimension(), "point");

    std::vector<std::int64_t> residual(point.dimension());
    for (std::size_t j = 0; j < point.dimension(); ++j) {
        residual[j] = point[j] - set.shift[j];
        if (residual[j] < 0) return std::nullopt;
    }
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < set.basis.size(); ++i) {
        if (!set.basis[i].is_zero()) order.push_back(i);
    }
    CoefficientSearch search(set, order);
    if (!search.run(std::move(residual))) return std::nullopt;

    std::vector<std::int64_t> coefficients(set.basis.size(), 0);
    for (std::size_t k = 0; k < order.size(); ++k) coefficients[order[k]] = search.chosen()[k];
    return coefficients;
}

std::optional<MembershipWitness> member_union(const SemilinearUnion& u, const ExponentVector& point) {
    require_dimension(point, u.dimension, "point");
    for (std::size_t s = 0; s < u.sets.size(); ++s) {
        if (auto coefficients = member(u.sets[s], point)) {
            return MembershipWitness{s, std::move(*coefficients)};
        }
    }
    return std::nullopt;
}

bool is_light(const LinearSet& set) {
    return std::all_of(set.basis.begin(), set.basis.end(),
                       [](const ExponentVector& b) { return b.nonzero_count() <= 2; });
}

namespace {

std::vector<std::size_t> support(const ExponentVector& v) {
    std::vector<std::size_t> positions;
    for (std::size_t j = 0; j < v.dimension(); ++j) {
        if (v[j] != 0) positions.push_back(j);
    }
    return positions;
}

// Some j1 < j2 < j3 < j4 with j1, j3 in first and j2, j4 in second.
bool crosses(const std::vector<std::size_t>& first, const std::vector<std::size_t>& second) {
    for (auto j1 : first)
        for (auto j2 : second)
            for (auto j3 : first)
                for (auto j4 : second)
                    if (j1 < j2 && j2 < j3 && j3 < j4) return true;
    return false;
}

}  // namespace

bool is_stratified(const LinearSet& set) {
    if (!is_light(set)) return false;
    std::vector<std::vector<std::size_t>> supports;
    for (const auto& b : set.basis) supports.push_back(support(b));
    for (const auto& first : supports) {
        for (const auto& second : supports) {
            if (crosses(first, second)) return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Text format
// ---------------------------------------------------------------------------

namespace {

std::string_view trim(std::string_view s) {
    auto space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
    while (!s.empty() && space(s.front())) s.remove_prefix(1);
    while (!s.empty() && space(s.back())) s.remove_suffix(1);
    return s;
}

ExponentVector parse_coords(std::string_view text, const std::string& where) {
    std::vector<std::int64_t> coords;
    std::istringstream in{std::string(text)};
    std::string token;
    while (in >> token) {
        std::int64_t value = 0;
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (ec != std::errc() || ptr != token.data() + token.size() || value < 0) {
            throw FormatError(where + "bad coordinate '" + token + "'");
        }
        coords.push_back(value);
    }
    if (coords.empty()) throw FormatError(where + "empty vector");
    return ExponentVector(std::move(coords));
}

}  // namespace

SemilinearUnion parse_union(std::string_view text, std::optional<std::size_t> expected_dimension) {
    SemilinearUnion u;
    std::optional<std::size_t> dimension = expected_dimension;
    bool block_open = false;

    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = trim(raw);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            const bool comment_only = trim(line.substr(0, hash)).empty();
            line = trim(line.substr(0, hash));
            if (comment_only) continue;
        }
        const std::string where = "line " + std::to_string(line_no) + ": ";
        if (line.empty()) {
            block_open = false;
            continue;
        }
        const bool is_alpha = line.starts_with("alpha:");
        const bool is_beta = line.starts_with("beta:");
        if (!is_alpha && !is_beta) throw FormatError(where + "expected 'alpha:' or 'beta:'");
        ExponentVector v = parse_coords(line.substr(is_alpha ? 6 : 5), where);
        if (!dimension) dimension = v.dimension();
        if (v.dimension() != *dimension) {
            throw FormatError(where + "vector has dimension " + std::to_string(v.dimension()) +
                              ", expected " + std::to_string(*dimension));
        }
        if (is_alpha) {
            if (block_open) throw FormatError(where + "'alpha:' must start a new block after a blank line");
            u.sets.push_back(LinearSet{std::move(v), {}});
            block_open = true;
        } else {
            if (!block_open) throw FormatError(where + "'beta:' line outside an alpha block");
            u.sets.back().basis.push_back(std::move(v));
        }
    }
    u.dimension = dimension.value_or(0);
    return u;
}

std::string format_linear_set(const LinearSet& set) {
    std::string out = "alpha: " + format_coords(set.shift) + "\n";
    for (const auto& b : set.basis) out += "beta: " + format_coords(b) + "\n";
    return out;
}

std::string format_union(const SemilinearUnion& u) {
    std::string out;
    for (std::size_t s = 0; s < u.sets.size(); ++s) {
        if (s) out += "\n";
        out += format_linear_set(u.sets[s]);
    }
    return out;
}

}  // namespace unamb

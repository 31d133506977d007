#include "unamb/oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "unamb/errors.hpp"
#include "unamb/refutation.hpp"

namespace unamb {

std::string format_report(const SweepReport& report, bool tsv) {
    std::ostringstream os;
    std::vector<Mismatch> sorted = report.mismatches;
    std::sort(sorted.begin(), sorted.end());
    if (tsv) {
        os << "subject\texpected\tactual\n";
        for (const auto& m : sorted) os << m.subject << '\t' << m.expected << '\t' << m.actual << '\n';
    } else {
        os << report.domain_description << '\n';
        os << "checked: " << report.points_checked << '\n';
        for (const auto& m : sorted) {
            os << "mismatch: " << m.subject << " expected=" << m.expected << " actual=" << m.actual
               << '\n';
        }
    }
    if (report.passed()) {
        os << "PASS\n";
    } else {
        os << "FAIL " << report.mismatches.size() << " mismatches\n";
    }
    return os.str();
}

std::uint32_t Lcg::next() {
    state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<std::uint32_t>(state_ >> 32);
}

std::int64_t Lcg::uniform(std::int64_t lo, std::int64_t hi) {
    if (hi < lo) throw std::invalid_argument("empty range");
    const auto width = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(next() % width);
}

namespace {

// Calls visit(point) for every point of [0, max_coord]^dimension, odometer order.
void for_each_point(std::size_t dimension, std::int64_t max_coord,
                    const std::function<void(const ExponentVector&)>& visit) {
    std::vector<std::int64_t> coords(dimension, 0);
    while (true) {
        visit(ExponentVector(coords));
        std::size_t j = 0;
        while (j < dimension && coords[j] == max_coord) coords[j++] = 0;
        if (j == dimension) return;
        ++coords[j];
    }
}

std::string quoted(const Word& w) { return "\"" + format_word(w) + "\""; }

std::string bool_text(bool b) { return b ? "true" : "false"; }

}  // namespace

std::vector<Word> sorted_words(std::size_t max_length) {
    std::vector<Word> words;
    for (std::size_t length = 0; length <= max_length; ++length) {
        std::vector<std::int64_t> counts(kWitnessDimension, 0);
        // Compositions of `length` into 9 parts, lexicographically decreasing in
        // (i1, i2, ...), which is lexicographic order on the words themselves.
        std::function<void(std::size_t, std::int64_t)> place = [&](std::size_t j, std::int64_t left) {
            if (j + 1 == kWitnessDimension) {
                counts[j] = left;
                words.push_back(psi_inverse(ExponentVector(counts)));
                return;
            }
            for (std::int64_t c = left; c >= 0; --c) {
                counts[j] = c;
                place(j + 1, left - c);
            }
        };
        place(0, static_cast<std::int64_t>(length));
    }
    return words;
}

SweepReport sweep_grammar_vs_predicate(const Grammar& grammar, MembershipTarget target,
                                       std::size_t max_length) {
    const std::string target_name = target ? component_name(*target) : "L";
    SweepReport report;
    report.domain_description = "grammar vs psi(" + target_name + ") predicate over sorted words of length <= " +
                                std::to_string(max_length);
    const ChartParser parser(grammar);
    for (const Word& w : sorted_words(max_length)) {
        const ExponentVector p = psi(w);
        const bool expected = target ? member_component(p, *target) : member_L(p);
        bool actual = false;
        try {
            actual = parser.recognize(w);
        } catch (const UndeclaredTerminal&) {
            actual = false;
        }
        ++report.points_checked;
        if (actual != expected) report.mismatches.push_back({quoted(w), bool_text(expected), bool_text(actual)});
    }
    return report;
}

SweepReport sweep_disjointness(std::int64_t max_coord) {
    SweepReport report;
    report.domain_description = "pairwise disjointness of psi(L1..L4) over [0, " +
                                std::to_string(max_coord) + "]^9";
    for_each_point(kWitnessDimension, max_coord, [&](const ExponentVector& p) {
        ++report.points_checked;
        std::string containing;
        int count = 0;
        for (auto t : kComponents) {
            if (member_component(p, t)) {
                containing += (count++ ? "," : "") + component_name(t);
            }
        }
        if (count >= 2) report.mismatches.push_back({format_point(p), "at most one component", containing});
    });
    return report;
}

std::optional<std::pair<int, int>> separating_pair(ComponentId a, ComponentId b) {
    int shared = 0;
    std::optional<std::pair<int, int>> found;
    for (const auto& ca : comparisons(a)) {
        for (const auto& cb : comparisons(b)) {
            if (ca.left != cb.left || ca.right != cb.right) continue;
            ++shared;
            if (ca.strict != cb.strict) found = std::pair{ca.left, ca.right};
        }
    }
    if (shared != 1) return std::nullopt;
    return found;
}

SweepReport sweep_separation_pairs(std::int64_t max_coord) {
    SweepReport report;
    std::ostringstream description;
    description << "separating coordinate pairs, confirmed over [0, " << max_coord << "]^2:";
    for (std::size_t x = 0; x < kComponents.size(); ++x) {
        for (std::size_t y = x + 1; y < kComponents.size(); ++y) {
            const ComponentId a = kComponents[x];
            const ComponentId b = kComponents[y];
            const std::string subject = component_name(a) + "/" + component_name(b);
            const auto pair = separating_pair(a, b);
            if (!pair) {
                report.mismatches.push_back({subject, "exactly one shared pair with opposite senses", "none"});
                continue;
            }
            description << ' ' << subject << "=(" << pair->first << "," << pair->second << ")";

            const Comparison* ca = nullptr;
            const Comparison* cb = nullptr;
            for (const auto& c : comparisons(a)) {
                if (c.left == pair->first && c.right == pair->second) ca = &c;
            }
            for (const auto& c : comparisons(b)) {
                if (c.left == pair->first && c.right == pair->second) cb = &c;
            }
            for (std::int64_t i = 0; i <= max_coord; ++i) {
                for (std::int64_t k = 0; k <= max_coord; ++k) {
                    ExponentVector p(kWitnessDimension);
                    p.set(static_cast<std::size_t>(pair->first - 1), i);
                    p.set(static_cast<std::size_t>(pair->second - 1), k);
                    ++report.points_checked;
                    if (ca->holds(p) && cb->holds(p)) {
                        report.mismatches.push_back({subject + " at " + format_point(p),
                                                     "one comparison fails", "both hold"});
                    }
                }
            }
        }
    }
    report.domain_description = description.str();
    return report;
}

SemilinearUnion random_light_union(Lcg& rng, const RandomUnionParams& params, std::size_t dimension) {
    SemilinearUnion u;
    u.dimension = dimension;
    const auto sets = rng.uniform(0, static_cast<std::int64_t>(params.max_sets));
    for (std::int64_t s = 0; s < sets; ++s) {
        LinearSet set{ExponentVector(dimension), {}};
        for (std::size_t j = 0; j < dimension; ++j) set.shift.set(j, rng.uniform(0, params.max_coord));
        const auto basis = rng.uniform(0, static_cast<std::int64_t>(params.max_basis));
        for (std::int64_t b = 0; b < basis; ++b) {
            ExponentVector v(dimension);
            const auto positions = rng.uniform(1, dimension >= 2 ? 2 : 1);
            const auto first = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(dimension) - 1));
            std::size_t second = first;
            if (positions == 2) {
                // Uniform over the other dimension - 1 positions.
                second = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(dimension) - 2));
                if (second >= first) ++second;
            }
            if (params.max_coord >= 1) {
                v.set(first, rng.uniform(1, params.max_coord));
                if (second != first) v.set(second, rng.uniform(1, params.max_coord));
            }
            set.basis.push_back(std::move(v));
        }
        u.sets.push_back(std::move(set));
    }
    return u;
}

SweepReport sweep_refuter(std::size_t trials, const RandomUnionParams& params, std::uint64_t seed) {
    SweepReport report;
    Lcg rng(seed);
    std::map<std::string, std::size_t> outcomes;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        const SemilinearUnion u = random_light_union(rng, params);
        const std::string subject = "trial " + std::to_string(trial + 1);
        ++report.points_checked;
        try {
            const RefutationResult result = refute(u);
            ++outcomes[to_string(result.kind) + "/" + to_string(result.trace.fired_step)];
            if (!verify_result(u, result)) {
                report.mismatches.push_back({subject, "verified counterexample", format_result_line(result)});
            }
        } catch (const InternalInconsistency& e) {
            report.mismatches.push_back({subject, "counterexample", std::string("internal: ") + e.what()});
        } catch (const std::exception& e) {
            report.mismatches.push_back({subject, "counterexample", std::string("error: ") + e.what()});
        }
    }
    std::ostringstream description;
    description << trials << " random light unions (sets <= " << params.max_sets << ", basis <= "
                << params.max_basis << ", coordinates <= " << params.max_coord << ", seed " << seed << ")";
    for (const auto& [outcome, count] : outcomes) description << "; " << outcome << " " << count;
    report.domain_description = description.str();
    return report;
}

bool member_brute_force(const LinearSet& set, const ExponentVector& point) {
    if (point.dimension() != set.dimension()) throw DimensionError("point/set dimension mismatch");
    const std::int64_t bound = point.max_coordinate();
    const std::size_t m = set.basis.size();
    // Enumerate c_0..c_{m-1} in [0, bound], abandoning a prefix once its
    // partial sum overshoots the point.
    std::function<bool(std::size_t, const std::vector<std::int64_t>&)> search =
        [&](std::size_t i, const std::vector<std::int64_t>& partial) {
            for (std::size_t j = 0; j < point.dimension(); ++j) {
                if (partial[j] > point[j]) return false;
            }
            if (i == m) {
                for (std::size_t j = 0; j < point.dimension(); ++j) {
                    if (partial[j] != point[j]) return false;
                }
                return true;
            }
            const bool zero = set.basis[i].is_zero();
            for (std::int64_t c = 0; c <= (zero ? 0 : bound); ++c) {
                std::vector<std::int64_t> next = partial;
                bool over = false;
                for (std::size_t j = 0; j < point.dimension(); ++j) {
                    next[j] += c * set.basis[i][j];
                    if (next[j] > point[j]) over = true;
                }
                if (over) break;
                if (search(i + 1, next)) return true;
            }
            return false;
        };
    const auto shift = set.shift.coords();
    return search(0, std::vector<std::int64_t>(shift.begin(), shift.end()));
}

SweepReport sweep_member_oracle(std::size_t queries, std::size_t max_dim, std::size_t max_basis,
                                std::int64_t max_coord, std::uint64_t seed) {
    SweepReport report;
    std::ostringstream description;
    Lcg rng(seed);
    std::size_t members = 0;
    for (std::size_t q = 0; q < queries; ++q) {
        const auto dimension = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(max_dim)));
        LinearSet set{ExponentVector(dimension), {}};
        for (std::size_t j = 0; j < dimension; ++j) set.shift.set(j, rng.uniform(0, max_coord));
        const auto m = rng.uniform(0, static_cast<std::int64_t>(max_basis));
        for (std::int64_t b = 0; b < m; ++b) {
            ExponentVector v(dimension);
            for (std::size_t j = 0; j < dimension; ++j) v.set(j, rng.uniform(0, max_coord));
            set.basis.push_back(std::move(v));
        }
        ExponentVector point(dimension);
        if (rng.uniform(0, 1) == 0) {
            point = set.shift;
            for (const auto& b : set.basis) point = point.add_scaled(b, rng.uniform(0, 2));
        } else {
            for (std::size_t j = 0; j < dimension; ++j) point.set(j, rng.uniform(0, 3 * max_coord));
        }

        ++report.points_checked;
        const bool expected = member_brute_force(set, point);
        const auto found = member(set, point);
        bool actual = found.has_value();
        if (found && evaluate(set, *found) != point) actual = false;
        if (expected) ++members;
        if (actual != expected) {
            report.mismatches.push_back({format_linear_set(set) + " point " + format_point(point),
                                         bool_text(expected), bool_text(actual)});
        }
    }
    description << queries << " random membership queries (dimension <= " << max_dim << ", basis <= "
                << max_basis << ", coordinates <= " << max_coord << ", seed " << seed << "); members "
                << members;
    report.domain_description = description.str();
    return report;
}

namespace {

bool crossing_by_quadruples(const LinearSet& set) {
    const std::size_t k = set.dimension();
    for (const auto& b1 : set.basis) {
        for (const auto& b2 : set.basis) {
            for (std::size_t j1 = 0; j1 < k; ++j1)
                for (std::size_t j2 = j1 + 1; j2 < k; ++j2)
                    for (std::size_t j3 = j2 + 1; j3 < k; ++j3)
                        for (std::size_t j4 = j3 + 1; j4 < k; ++j4)
                            if (b1[j1] != 0 && b2[j2] != 0 && b1[j3] != 0 && b2[j4] != 0) return true;
        }
    }
    return false;
}

}  // namespace

SweepReport sweep_stratified(std::size_t trials, std::size_t dimension, std::size_t max_basis,
                             std::uint64_t seed) {
    SweepReport report;
    report.domain_description = std::to_string(trials) + " random sets in dimension " +
                                std::to_string(dimension) + " (basis <= " + std::to_string(max_basis) +
                                ", seed " + std::to_string(seed) + ")";
    Lcg rng(seed);
    for (std::size_t trial = 0; trial < trials; ++trial) {
        LinearSet set{ExponentVector(dimension), {}};
        const auto m = rng.uniform(0, static_cast<std::int64_t>(max_basis));
        for (std::int64_t b = 0; b < m; ++b) {
            ExponentVector v(dimension);
            const auto nonzero = rng.uniform(1, std::min<std::int64_t>(3, static_cast<std::int64_t>(dimension)));
            for (std::int64_t n = 0; n < nonzero; ++n) {
                v.set(static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(dimension) - 1)), 1);
            }
            set.basis.push_back(std::move(v));
        }
        ++report.points_checked;
        const bool light = std::all_of(set.basis.begin(), set.basis.end(),
                                       [](const ExponentVector& v) { return v.nonzero_count() <= 2; });
        const bool expected = light && !crossing_by_quadruples(set);
        const bool actual = is_stratified(set);
        if (actual != expected || (actual && !is_light(set))) {
            report.mismatches.push_back({format_linear_set(set), bool_text(expected), bool_text(actual)});
        }
    }
    return report;
}

}  // namespace unamb

#pragma once

// Test-only reference for parse-tree counts: enumerates leftmost derivations
// (which are in bijection with parse trees) up to a step bound. Deliberately
// naive and independent of the chart parser; memoized on
// (sentential form, matched prefix, steps left).

#include <cstdint>
#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "unamb/grammar.hpp"

namespace unamb::testing {

class DerivationOracle {
public:
    explicit DerivationOracle(const Grammar& grammar) : grammar_(grammar) {
        for (const Rule& r : grammar_.rules) by_lhs_[r.lhs].push_back(&r);
        // Least number of terminals each nonterminal can yield (huge if none).
        for (const auto& n : grammar_.nonterminals) min_yield_[n] = kUnproductive;
        for (bool changed = true; changed;) {
            changed = false;
            for (const Rule& r : grammar_.rules) {
                std::size_t total = 0;
                for (const Symbol& s : r.rhs) total += s.is_terminal() ? 1 : min_yield_[s.name];
                if (total < min_yield_[r.lhs]) {
                    min_yield_[r.lhs] = total;
                    changed = true;
                }
            }
        }
    }

    /// Leftmost derivations of `word` using at most max_steps rule applications.
    std::uint64_t count_bounded(const Word& word, int max_steps) const {
        memo_.clear();
        word_ = word;
        return expand({Symbol::nonterminal(grammar_.start)}, 0, max_steps);
    }

    /// Exact count if the bounded counts stabilise between max_steps and
    /// 2 * max_steps; nullopt when they keep growing (unbounded).
    std::optional<std::uint64_t> count(const Word& word, int max_steps = 40) const {
        const auto a = count_bounded(word, max_steps);
        const auto b = count_bounded(word, 2 * max_steps);
        if (a != b) return std::nullopt;
        return a;
    }

private:
    static constexpr std::size_t kUnproductive = 1u << 20;

    std::uint64_t expand(const std::vector<Symbol>& form, std::size_t matched, int steps) const {
        std::size_t k = 0;
        while (k < form.size() && form[k].is_terminal()) {
            if (matched >= word_.size() || word_[matched] != form[k].name) return 0;
            ++matched;
            ++k;
        }
        std::size_t needed = 0;
        for (std::size_t i = k; i < form.size(); ++i) {
            needed += form[i].is_terminal() ? 1 : min_yield_.at(form[i].name);
        }
        if (matched + needed > word_.size()) return 0;
        if (k == form.size()) return matched == word_.size() ? 1 : 0;
        if (steps == 0) return 0;

        std::vector<Symbol> rest(form.begin() + static_cast<std::ptrdiff_t>(k), form.end());
        auto key = std::make_tuple(rest, matched, steps);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;

        std::uint64_t total = 0;
        if (auto it = by_lhs_.find(rest.front().name); it != by_lhs_.end()) {
            for (const Rule* r : it->second) {
                std::vector<Symbol> next(r->rhs);
                next.insert(next.end(), rest.begin() + 1, rest.end());
                total += expand(next, matched, steps - 1);
            }
        }
        memo_.emplace(std::move(key), total);
        return total;
    }

    Grammar grammar_;
    std::map<std::string, std::vector<const Rule*>> by_lhs_;
    std::map<std::string, std::size_t> min_yield_;
    mutable Word word_;
    mutable std::map<std::tuple<std::vector<Symbol>, std::size_t, int>, std::uint64_t> memo_;
};

}  // namespace unamb::testing

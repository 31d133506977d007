#include "unamb/witness.hpp"

#include <stdexcept>

#include "unamb/errors.hpp"

namespace unamb {

ComponentId component_from_index(int index) {
    if (index < 1 || index > 4) {
        throw std::invalid_argument("component index must be 1..4, got " + std::to_string(index));
    }
    return static_cast<ComponentId>(index);
}

std::string component_name(ComponentId t) { return "L" + std::to_string(index_of(t)); }

bool Comparison::holds(const ExponentVector& point) const {
    const auto lhs = point.at1(static_cast<std::size_t>(left));
    const auto rhs = point.at1(static_cast<std::size_t>(right));
    return strict ? lhs > rhs : lhs <= rhs;
}

std::string Comparison::describe() const {
    return "i" + std::to_string(left) + (strict ? " > " : " <= ") + "i" + std::to_string(right);
}

const std::array<Comparison, 3>& comparisons(ComponentId t) {
    static const std::array<std::array<Comparison, 3>, 4> table = {{
        {{{1, 9, false}, {2, 7, false}, {3, 5, false}}},
        {{{1, 9, true}, {2, 6, false}, {3, 4, false}}},
        {{{1, 8, false}, {2, 7, true}, {3, 4, true}}},
        {{{1, 8, true}, {2, 6, true}, {3, 5, true}}},
    }};
    return table.at(static_cast<std::size_t>(index_of(t) - 1));
}

std::string letter(int j) { return "a" + std::to_string(j); }

namespace {

int letter_index(const std::string& token) {
    if (token.size() == 2 && token[0] == 'a' && token[1] >= '1' && token[1] <= '9') {
        return token[1] - '0';
    }
    return 0;
}

}  // namespace

bool is_sorted_word(const Word& word) {
    int previous = 1;
    for (const auto& token : word) {
        const int j = letter_index(token);
        if (j == 0 || j < previous) return false;
        previous = j;
    }
    return true;
}

ExponentVector psi(const Word& word) {
    std::vector<std::int64_t> counts(kWitnessDimension, 0);
    int previous = 1;
    for (const auto& token : word) {
        const int j = letter_index(token);
        if (j == 0) throw FormatError("'" + token + "' is not one of a1..a9");
        if (j < previous) throw FormatError("not in a1*...a9*: " + format_word(word));
        previous = j;
        counts[static_cast<std::size_t>(j - 1)] = checked_add(counts[static_cast<std::size_t>(j - 1)], 1);
    }
    return ExponentVector(std::move(counts));
}

Word psi_inverse(const ExponentVector& point) {
    require_dimension(point, kWitnessDimension, "point");
    Word word;
    for (std::size_t j = 0; j < kWitnessDimension; ++j) {
        word.insert(word.end(), static_cast<std::size_t>(point[j]), letter(static_cast<int>(j + 1)));
    }
    return word;
}

bool member_component(const ExponentVector& point, ComponentId t) {
    require_dimension(point, kWitnessDimension, "point");
    for (const auto& c : comparisons(t)) {
        if (!c.holds(point)) return false;
    }
    return true;
}

bool member_L(const ExponentVector& point) {
    for (auto t : kComponents) {
        if (member_component(point, t)) return true;
    }
    return false;
}

std::vector<Comparison> failed_comparisons(const ExponentVector& point, ComponentId t) {
    require_dimension(point, kWitnessDimension, "point");
    std::vector<Comparison> failed;
    for (const auto& c : comparisons(t)) {
        if (!c.holds(point)) failed.push_back(c);
    }
    return failed;
}

namespace {

// Layers of a component grammar from the outside in. A string
// a1^i1 ... a9^i9 is generated by peeling matched pairs (a_p ... a_q) and
// pumping every other letter at the position where it sits in the nesting.
enum class Layer { Pump, PairAtMost, PairGreater, Surplus };

struct Stage {
    Layer layer;
    int p;  // left letter for pairs and surpluses, pumped letter for Pump
    int q;
};

struct Naming {
    std::string pair_prefix;
    std::string pump_prefix;

    std::string name(const Stage& s) const {
        switch (s.layer) {
            case Layer::Pump:
                return pump_prefix + std::to_string(s.p);
            case Layer::PairAtMost:
            case Layer::PairGreater:
                return pair_prefix + "{" + std::to_string(s.p) + "," + std::to_string(s.q) + "}";
            case Layer::Surplus:
                return "Y_" + std::to_string(s.p);
        }
        return {};
    }
};

std::vector<Stage> stages_for(ComponentId t) {
    std::vector<Stage> stages;
    int outer = static_cast<int>(kWitnessDimension) + 1;
    for (const auto& c : comparisons(t)) {
        // Letters strictly between this pair's right letter and the enclosing one.
        for (int j = outer - 1; j > c.right; --j) stages.push_back({Layer::Pump, j, 0});
        if (c.strict) {
            stages.push_back({Layer::PairGreater, c.left, c.right});
            stages.push_back({Layer::Surplus, c.left, 0});
        } else {
            stages.push_back({Layer::PairAtMost, c.left, c.right});
            stages.push_back({Layer::Pump, c.right, 0});
        }
        outer = c.right;
    }
    // Letters between a3 and the innermost right letter.
    for (int j = outer - 1; j > 3; --j) stages.push_back({Layer::Pump, j, 0});
    return stages;
}

}  // namespace

Grammar build_component_grammar(ComponentId t) {
    const Naming naming = t == ComponentId::L1 ? Naming{"A_", "A_"} : Naming{"X_", "F_"};
    const auto stages = stages_for(t);

    Grammar g;
    for (int j = 1; j <= static_cast<int>(kWitnessDimension); ++j) g.terminals.insert(letter(j));
    g.start = "S_" + std::to_string(index_of(t));
    g.nonterminals.insert(g.start);

    auto nt = [](const std::string& name) { return Symbol::nonterminal(name); };
    auto tm = [](int j) { return Symbol::terminal(letter(j)); };

    g.rules.push_back({g.start, {nt(naming.name(stages.front()))}});
    for (std::size_t k = 0; k < stages.size(); ++k) {
        const Stage& s = stages[k];
        const std::string self = naming.name(s);
        g.nonterminals.insert(self);
        std::vector<Symbol> next;
        if (k + 1 < stages.size()) next.push_back(nt(naming.name(stages[k + 1])));

        switch (s.layer) {
            case Layer::Pump:
                g.rules.push_back({self, {nt(self), tm(s.p)}});
                g.rules.push_back({self, next});
                break;
            case Layer::PairAtMost:
                g.rules.push_back({self, {tm(s.p), nt(self), tm(s.q)}});
                g.rules.push_back({self, next});
                break;
            case Layer::PairGreater: {
                g.rules.push_back({self, {tm(s.p), nt(self), tm(s.q)}});
                std::vector<Symbol> surplus{tm(s.p)};
                surplus.insert(surplus.end(), next.begin(), next.end());
                g.rules.push_back({self, surplus});
                break;
            }
            case Layer::Surplus: {
                g.rules.push_back({self, {tm(s.p), nt(self)}});
                g.rules.push_back({self, next});
                break;
            }
        }
    }
    return g;
}

Grammar build_union_grammar() {
    Grammar g;
    for (int j = 1; j <= static_cast<int>(kWitnessDimension); ++j) g.terminals.insert(letter(j));
    g.start = "S";
    g.nonterminals.insert(g.start);
    for (auto t : kComponents) {
        g.rules.push_back({g.start, {Symbol::nonterminal("S_" + std::to_string(index_of(t)))}});
    }
    for (auto t : kComponents) {
        const Grammar component = build_component_grammar(t);
        const std::string suffix = "^" + std::to_string(index_of(t));
        auto rename = [&](const std::string& name) {
            return name == component.start ? name : name + suffix;
        };
        for (const auto& name : component.nonterminals) g.nonterminals.insert(rename(name));
        for (const Rule& rule : component.rules) {
            Rule renamed{rename(rule.lhs), {}};
            for (const Symbol& s : rule.rhs) {
                renamed.rhs.push_back(s.is_terminal() ? s : Symbol::nonterminal(rename(s.name)));
            }
            g.rules.push_back(std::move(renamed));
        }
    }
    return g;
}

}  // namespace unamb

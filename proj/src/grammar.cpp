#include "unamb/grammar.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <unordered_map>

#include "unamb/errors.hpp"

namespace unamb {

DerivationCount operator+(DerivationCount a, DerivationCount b) noexcept {
    if (a.infinite_ || b.infinite_) return DerivationCount::infinite();
    std::uint64_t sum;
    if (__builtin_add_overflow(a.value_, b.value_, &sum)) {
        sum = std::numeric_limits<std::uint64_t>::max();
    }
    return DerivationCount(sum);
}

DerivationCount operator*(DerivationCount a, DerivationCount b) noexcept {
    if (a.is_zero() || b.is_zero()) return DerivationCount(0);
    if (a.infinite_ || b.infinite_) return DerivationCount::infinite();
    std::uint64_t product;
    if (__builtin_mul_overflow(a.value_, b.value_, &product)) {
        product = std::numeric_limits<std::uint64_t>::max();
    }
    return DerivationCount(product);
}

std::string to_string(const DerivationCount& count) {
    return count.is_infinite() ? "INFINITE" : std::to_string(count.value());
}

std::vector<std::string> validate(const Grammar& grammar) {
    std::vector<std::string> diagnostics;
    for (const auto& t : grammar.terminals) {
        if (t.empty()) diagnostics.push_back("terminal with empty name");
        if (grammar.nonterminals.contains(t)) {
            diagnostics.push_back("symbol '" + t + "' is declared both terminal and nonterminal");
        }
    }
    for (const auto& n : grammar.nonterminals) {
        if (n.empty()) diagnostics.push_back("nonterminal with empty name");
    }
    if (!grammar.nonterminals.contains(grammar.start)) {
        diagnostics.push_back("start symbol '" + grammar.start + "' is not a declared nonterminal");
    }
    for (std::size_t r = 0; r < grammar.rules.size(); ++r) {
        const Rule& rule = grammar.rules[r];
        const std::string where = "rule " + std::to_string(r + 1) + ": ";
        if (!grammar.nonterminals.contains(rule.lhs)) {
            diagnostics.push_back(where + "lhs '" + rule.lhs + "' is not a declared nonterminal");
        }
        for (const Symbol& s : rule.rhs) {
            const auto& declared = s.is_terminal() ? grammar.terminals : grammar.nonterminals;
            if (!declared.contains(s.name)) {
                diagnostics.push_back(where + (s.is_terminal() ? "terminal '" : "nonterminal '") +
                                      s.name + "' is not declared");
            }
        }
        for (std::size_t earlier = 0; earlier < r; ++earlier) {
            if (grammar.rules[earlier] == rule) {
                diagnostics.push_back(where + "duplicate of rule " + std::to_string(earlier + 1));
                break;
            }
        }
    }
    return diagnostics;
}

namespace {

void require_valid(const Grammar& grammar) {
    auto diagnostics = validate(grammar);
    if (!diagnostics.empty()) throw InvalidGrammar("invalid grammar: " + diagnostics.front());
}

}  // namespace

bool is_linear(const Grammar& grammar) {
    require_valid(grammar);
    return std::all_of(grammar.rules.begin(), grammar.rules.end(), [](const Rule& rule) {
        return std::count_if(rule.rhs.begin(), rule.rhs.end(),
                             [](const Symbol& s) { return !s.is_terminal(); }) <= 1;
    });
}

// ---------------------------------------------------------------------------
// Chart parser
// ---------------------------------------------------------------------------

namespace {

struct CompiledSymbol {
    bool terminal;
    int id;
};

struct CompiledRule {
    int lhs;
    std::vector<CompiledSymbol> rhs;
    std::size_t terminal_count;
    int first_terminal = -1;  // terminal id if rhs starts with a terminal
    int last_terminal = -1;   // terminal id if rhs ends with a terminal
};

/// lhs += coeff * prod(vars)
struct Term {
    int lhs;
    DerivationCount coeff;
    std::vector<int> vars;
};

/// Least solution in N u {INFINITE} of x[A] = constants[A] + sum of terms.
/// A variable is INFINITE exactly when it reaches, through terms whose every
/// factor is nonzero, a variable on a cycle or an INFINITE constant.
std::vector<DerivationCount> solve_system(std::vector<DerivationCount> constants,
                                          const std::vector<Term>& terms) {
    const std::size_t n = constants.size();
    std::vector<char> nonzero(n);
    for (std::size_t a = 0; a < n; ++a) nonzero[a] = !constants[a].is_zero();

    auto all_vars_nonzero = [&](const Term& t) {
        return std::all_of(t.vars.begin(), t.vars.end(), [&](int v) { return nonzero[v] != 0; });
    };
    for (bool changed = true; changed;) {
        changed = false;
        for (const Term& t : terms) {
            if (!nonzero[t.lhs] && !t.coeff.is_zero() && all_vars_nonzero(t)) {
                nonzero[t.lhs] = 1;
                changed = true;
            }
        }
    }

    std::vector<std::vector<int>> successors(n);
    std::vector<std::vector<const Term*>> positive(n);
    std::vector<char> direct_infinite(n);
    for (std::size_t a = 0; a < n; ++a) direct_infinite[a] = constants[a].is_infinite();
    bool any_positive = false;
    for (const Term& t : terms) {
        if (t.coeff.is_zero() || !all_vars_nonzero(t)) continue;
        any_positive = true;
        positive[t.lhs].push_back(&t);
        if (t.coeff.is_infinite()) direct_infinite[t.lhs] = 1;
        for (int v : t.vars) successors[t.lhs].push_back(v);
    }
    if (!any_positive) return constants;

    // Tarjan's SCCs; components are emitted with their successors first.
    std::vector<int> index(n, -1), low(n, 0), stack;
    std::vector<char> on_stack(n);
    std::vector<std::vector<int>> components;
    int counter = 0;
    std::function<void(int)> strongconnect = [&](int a) {
        index[a] = low[a] = counter++;
        stack.push_back(a);
        on_stack[a] = 1;
        for (int b : successors[a]) {
            if (index[b] < 0) {
                strongconnect(b);
                low[a] = std::min(low[a], low[b]);
            } else if (on_stack[b]) {
                low[a] = std::min(low[a], index[b]);
            }
        }
        if (low[a] == index[a]) {
            std::vector<int> component;
            int b;
            do {
                b = stack.back();
                stack.pop_back();
                on_stack[b] = 0;
                component.push_back(b);
            } while (b != a);
            components.push_back(std::move(component));
        }
    };
    for (std::size_t a = 0; a < n; ++a) {
        if (nonzero[a] && index[a] < 0) strongconnect(static_cast<int>(a));
    }

    std::vector<DerivationCount> result(n);
    std::vector<char> infinite(n);
    for (const auto& component : components) {
        bool is_infinite = component.size() > 1;
        for (int a : component) {
            if (direct_infinite[a]) is_infinite = true;
            for (int b : successors[a]) {
                if (b == a || infinite[b]) is_infinite = true;
            }
        }
        if (is_infinite) {
            for (int a : component) {
                infinite[a] = 1;
                result[a] = DerivationCount::infinite();
            }
            continue;
        }
        // Acyclic singleton whose successors are all finite and already solved.
        int a = component.front();
        DerivationCount value = constants[a];
        for (const Term* t : positive[a]) {
            DerivationCount product = t->coeff;
            for (int v : t->vars) product = product * result[v];
            value += product;
        }
        result[a] = value;
    }
    return result;
}

}  // namespace

struct ChartParser::Impl {
    std::vector<std::string> nonterminal_names;
    std::unordered_map<std::string, int> terminal_ids;
    std::vector<CompiledRule> rules;
    int start = 0;
    std::vector<DerivationCount> epsilon;  // parse trees of the empty word, per nonterminal
    std::vector<Term> unit_terms;          // same-span dependencies with their multipliers

    explicit Impl(const Grammar& grammar) {
        require_valid(grammar);
        std::map<std::string, int> nonterminal_ids;
        for (const auto& name : grammar.nonterminals) {
            nonterminal_ids.emplace(name, static_cast<int>(nonterminal_names.size()));
            nonterminal_names.push_back(name);
        }
        int next_terminal = 0;
        for (const auto& name : grammar.terminals) terminal_ids.emplace(name, next_terminal++);
        start = nonterminal_ids.at(grammar.start);

        for (const Rule& rule : grammar.rules) {
            CompiledRule compiled{nonterminal_ids.at(rule.lhs), {}, 0};
            for (const Symbol& s : rule.rhs) {
                if (s.is_terminal()) {
                    compiled.rhs.push_back({true, terminal_ids.at(s.name)});
                    ++compiled.terminal_count;
                } else {
                    compiled.rhs.push_back({false, nonterminal_ids.at(s.name)});
                }
            }
            if (!compiled.rhs.empty() && compiled.rhs.front().terminal) {
                compiled.first_terminal = compiled.rhs.front().id;
            }
            if (!compiled.rhs.empty() && compiled.rhs.back().terminal) {
                compiled.last_terminal = compiled.rhs.back().id;
            }
            rules.push_back(std::move(compiled));
        }

        std::vector<Term> epsilon_terms;
        for (const CompiledRule& rule : rules) {
            if (rule.terminal_count > 0) continue;
            Term t{rule.lhs, DerivationCount(1), {}};
            for (const auto& s : rule.rhs) t.vars.push_back(s.id);
            epsilon_terms.push_back(std::move(t));
        }
        epsilon = solve_system(std::vector<DerivationCount>(nonterminal_names.size()), epsilon_terms);

        for (const CompiledRule& rule : rules) {
            if (rule.terminal_count > 0) continue;
            for (std::size_t k = 0; k < rule.rhs.size(); ++k) {
                DerivationCount multiplier(1);
                for (std::size_t l = 0; l < rule.rhs.size(); ++l) {
                    if (l != k) multiplier = multiplier * epsilon[rule.rhs[l].id];
                }
                if (!multiplier.is_zero()) {
                    unit_terms.push_back({rule.lhs, multiplier, {rule.rhs[k].id}});
                }
            }
        }
    }

    std::vector<int> encode(const Word& input) const {
        std::vector<int> ids;
        ids.reserve(input.size());
        for (const auto& token : input) {
            auto it = terminal_ids.find(token);
            if (it == terminal_ids.end()) {
                throw UndeclaredTerminal("terminal '" + token + "' is not declared by the grammar");
            }
            ids.push_back(it->second);
        }
        return ids;
    }

    DerivationCount count(const Word& input) const {
        const std::vector<int> w = encode(input);
        const std::size_t n = w.size();
        if (n == 0) return epsilon[start];

        const std::size_t nonterminals = nonterminal_names.size();
        // chart[(a * (n + 1) + i) * (n + 1) + j] for i < j.
        std::vector<DerivationCount> chart(nonterminals * (n + 1) * (n + 1));
        auto cell = [&](int a, std::size_t i, std::size_t j) -> DerivationCount& {
            return chart[(static_cast<std::size_t>(a) * (n + 1) + i) * (n + 1) + j];
        };

        std::vector<DerivationCount> prefix, next;
        for (std::size_t length = 1; length <= n; ++length) {
            for (std::size_t i = 0; i + length <= n; ++i) {
                const std::size_t j = i + length;
                std::vector<DerivationCount> constants(nonterminals);
                for (const CompiledRule& rule : rules) {
                    if (rule.terminal_count > length) continue;
                    if (rule.first_terminal >= 0 && rule.first_terminal != w[i]) continue;
                    if (rule.last_terminal >= 0 && rule.last_terminal != w[j - 1]) continue;
                    // prefix[p - i]: ways the symbols so far derive w[i, p), excluding
                    // splits where one nonterminal spans all of w[i, j).
                    prefix.assign(length + 1, DerivationCount(0));
                    prefix[0] = DerivationCount(1);
                    bool alive = true;
                    for (const CompiledSymbol& s : rule.rhs) {
                        next.assign(length + 1, DerivationCount(0));
                        alive = false;
                        for (std::size_t q = i; q <= j; ++q) {
                            const DerivationCount ways = prefix[q - i];
                            if (ways.is_zero()) continue;
                            if (s.terminal) {
                                if (q < j && w[q] == s.id) {
                                    next[q + 1 - i] += ways;
                                    alive = true;
                                }
                                continue;
                            }
                            for (std::size_t p = q; p <= j; ++p) {
                                DerivationCount sub;
                                if (p == q) {
                                    sub = epsilon[s.id];
                                } else if (q == i && p == j) {
                                    continue;
                                } else {
                                    sub = cell(s.id, q, p);
                                }
                                if (sub.is_zero()) continue;
                                next[p - i] += ways * sub;
                                alive = true;
                            }
                        }
                        prefix.swap(next);
                        if (!alive) break;
                    }
                    if (alive) constants[rule.lhs] += prefix[length];
                }
                auto solved = solve_system(std::move(constants), unit_terms);
                for (std::size_t a = 0; a < nonterminals; ++a) cell(static_cast<int>(a), i, j) = solved[a];
            }
        }
        return cell(start, 0, n);
    }
};

ChartParser::ChartParser(const Grammar& grammar) : impl_(std::make_unique<Impl>(grammar)) {}
ChartParser::~ChartParser() = default;
ChartParser::ChartParser(ChartParser&&) noexcept = default;
ChartParser& ChartParser::operator=(ChartParser&&) noexcept = default;

bool ChartParser::recognize(const Word& input) const { return !impl_->count(input).is_zero(); }

DerivationCount ChartParser::count_parses(const Word& input) const { return impl_->count(input); }

bool recognize(const Grammar& grammar, const Word& input) {
    return ChartParser(grammar).recognize(input);
}

DerivationCount count_parses(const Grammar& grammar, const Word& input) {
    return ChartParser(grammar).count_parses(input);
}

// ---------------------------------------------------------------------------
// Bounded enumeration
// ---------------------------------------------------------------------------

std::set<Word> enumerate_language(const Grammar& grammar, std::size_t max_length) {
    require_valid(grammar);
    using Ids = std::vector<int>;
    std::map<std::string, int> nonterminal_ids;
    for (const auto& name : grammar.nonterminals) {
        nonterminal_ids.emplace(name, static_cast<int>(nonterminal_ids.size()));
    }
    std::vector<std::string> terminal_names(grammar.terminals.begin(), grammar.terminals.end());
    std::map<std::string, int> terminal_ids;
    for (std::size_t t = 0; t < terminal_names.size(); ++t) {
        terminal_ids.emplace(terminal_names[t], static_cast<int>(t));
    }

    const std::size_t nonterminals = nonterminal_ids.size();
    // Semi-naive fixpoint: each round only combinations that use at least one
    // word discovered in the previous round are formed.
    std::vector<std::set<Ids>> full(nonterminals), delta(nonterminals);

    auto concat_into = [&](const std::set<Ids>& left, const std::set<Ids>& right, std::set<Ids>& out) {
        for (const Ids& l : left) {
            for (const Ids& r : right) {
                if (l.size() + r.size() > max_length) continue;
                Ids joined = l;
                joined.insert(joined.end(), r.begin(), r.end());
                out.insert(std::move(joined));
            }
        }
    };

    const std::set<Ids> empty_only{Ids{}};
    bool first_round = true;
    while (true) {
        std::vector<std::set<Ids>> discovered(nonterminals);
        for (const Rule& rule : grammar.rules) {
            const int lhs = nonterminal_ids.at(rule.lhs);
            // Positions holding nonterminals; terminal positions are fixed singletons.
            std::vector<std::set<Ids>> fixed(rule.rhs.size());
            std::vector<int> nt_at(rule.rhs.size(), -1);
            for (std::size_t k = 0; k < rule.rhs.size(); ++k) {
                if (rule.rhs[k].is_terminal()) {
                    fixed[k].insert(Ids{terminal_ids.at(rule.rhs[k].name)});
                } else {
                    nt_at[k] = nonterminal_ids.at(rule.rhs[k].name);
                }
            }
            const bool has_nonterminal =
                std::any_of(nt_at.begin(), nt_at.end(), [](int id) { return id >= 0; });
            if (!has_nonterminal) {
                if (!first_round) continue;
                std::set<Ids> acc = empty_only;
                for (const auto& piece : fixed) {
                    std::set<Ids> joined;
                    concat_into(acc, piece, joined);
                    acc.swap(joined);
                }
                for (auto& word : acc) {
                    if (!full[lhs].contains(word)) discovered[lhs].insert(word);
                }
                continue;
            }
            // Sum over the position k that takes a new word: positions before k
            // use old words only, positions after k use all words.
            for (std::size_t k = 0; k < rule.rhs.size(); ++k) {
                if (nt_at[k] < 0 || delta[nt_at[k]].empty()) continue;
                std::set<Ids> acc = empty_only;
                for (std::size_t l = 0; l < rule.rhs.size() && !acc.empty(); ++l) {
                    std::set<Ids> old_words;
                    const std::set<Ids>* piece;
                    if (nt_at[l] < 0) {
                        piece = &fixed[l];
                    } else if (l < k) {
                        for (const auto& word : full[nt_at[l]]) {
                            if (!delta[nt_at[l]].contains(word)) old_words.insert(word);
                        }
                        piece = &old_words;
                    } else if (l == k) {
                        piece = &delta[nt_at[l]];
                    } else {
                        piece = &full[nt_at[l]];
                    }
                    std::set<Ids> joined;
                    concat_into(acc, *piece, joined);
                    acc.swap(joined);
                }
                for (auto& word : acc) {
                    if (!full[lhs].contains(word)) discovered[lhs].insert(word);
                }
            }
        }
        first_round = false;
        bool any = false;
        for (std::size_t a = 0; a < nonterminals; ++a) {
            for (const auto& word : discovered[a]) full[a].insert(word);
            if (!discovered[a].empty()) any = true;
            delta[a] = std::move(discovered[a]);
        }
        if (!any) break;
    }

    std::set<Word> language;
    for (const Ids& ids : full[nonterminal_ids.at(grammar.start)]) {
        Word word;
        for (int id : ids) word.push_back(terminal_names[id]);
        language.insert(std::move(word));
    }
    return language;
}

}  // namespace unamb

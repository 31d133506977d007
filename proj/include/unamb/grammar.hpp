#pragma once

// Context-free grammars: representation, validation, chart-based recognition,
// parse-tree counting and length-bounded enumeration.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace unamb {

enum class SymbolKind { Terminal, Nonterminal };

struct Symbol {
    SymbolKind kind = SymbolKind::Terminal;
    std::string name;

    static Symbol terminal(std::string name) { return {SymbolKind::Terminal, std::move(name)}; }
    static Symbol nonterminal(std::string name) { return {SymbolKind::Nonterminal, std::move(name)}; }

    bool is_terminal() const noexcept { return kind == SymbolKind::Terminal; }

    friend bool operator==(const Symbol&, const Symbol&) = default;
    friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

/// lhs -> rhs. An empty rhs is the epsilon rule.
struct Rule {
    std::string lhs;
    std::vector<Symbol> rhs;

    friend bool operator==(const Rule&, const Rule&) = default;
};

/// G = (terminals, nonterminals, rules, start). Rule order is kept because it
/// drives serialization; it carries no semantic weight.
struct Grammar {
    std::set<std::string> terminals;
    std::set<std::string> nonterminals;
    std::vector<Rule> rules;
    std::string start;
    friend bool operator==(const Grammar&, const Grammar&) = default;
};

/// A terminal string, one token per terminal occurrence.
using Word = std::vector<std::string>;

/// Number of parse trees: a saturating count (capped at UINT64_MAX) or INFINITE.
class DerivationCount {
public:
    constexpr DerivationCount() = default;
    constexpr explicit DerivationCount(std::uint64_t value) : value_(value) {}

    static constexpr DerivationCount infinite() {
        DerivationCount c;
        c.infinite_ = true;
        return c;
    }

    constexpr bool is_infinite() const noexcept { return infinite_; }
    constexpr bool is_zero() const noexcept { return !infinite_ && value_ == 0; }
    /// Meaningless when is_infinite().
    constexpr std::uint64_t value() const noexcept { return value_; }

    friend DerivationCount operator+(DerivationCount a, DerivationCount b) noexcept;
    /// 0 * INFINITE = 0.
    friend DerivationCount operator*(DerivationCount a, DerivationCount b) noexcept;
    DerivationCount& operator+=(DerivationCount other) noexcept { return *this = *this + other; }

    friend constexpr bool operator==(const DerivationCount&, const DerivationCount&) = default;

private:
    std::uint64_t value_ = 0;
    bool infinite_ = false;
};

/// Decimal value or `INFINITE`.
std::string to_string(const DerivationCount& count);

/// One human-readable diagnostic per violated Grammar invariant; empty iff valid.
std::vector<std::string> validate(const Grammar& grammar);

/// True iff no right-hand side holds more than one nonterminal occurrence.
/// Throws InvalidGrammar.
bool is_linear(const Grammar& grammar);

/// Chart parser compiled once from a grammar and reusable across inputs.
/// Handles epsilon rules, unit rules and cycles through them.
class ChartParser {
public:
    /// Throws InvalidGrammar.
    explicit ChartParser(const Grammar& grammar);
    ~ChartParser();
    ChartParser(ChartParser&&) noexcept;
    ChartParser& operator=(ChartParser&&) noexcept;

    /// Throws UndeclaredTerminal.
    bool recognize(const Word& input) const;
    /// Exact parse-tree count of input from the start symbol. Throws UndeclaredTerminal.
    DerivationCount count_parses(const Word& input) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

bool recognize(const Grammar& grammar, const Word& input);
DerivationCount count_parses(const Grammar& grammar, const Word& input);

/// Every word of L(grammar) with at most max_length terminals. Throws InvalidGrammar.
std::set<Word> enumerate_language(const Grammar& grammar, std::size_t max_length);

// Text format.
//
//   # comment
//   start: S                 (optional; otherwise the first lhs is the start)
//   terminals: a1 a2 ...     (optional; declares terminals no rule mentions)
//   S -> a1 S a9 | A
//   A -> epsilon
//
// Terminals are tokens matching a[0-9]+ or double-quoted literals; every
// other token on a right-hand side is a nonterminal.

/// Throws FormatError. The result is not validated.
Grammar parse_grammar(std::string_view text);
/// Rules grouped by lhs in order of first appearance; parse_grammar inverts it.
std::string format_grammar(const Grammar& grammar);

/// Tokens separated by single spaces; the empty word is the empty string.
std::string format_word(const Word& word);
/// Splits on whitespace and strips double quotes around literal tokens.
Word parse_word(std::string_view text);

}  // namespace unamb

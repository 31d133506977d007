#include <doctest.h>

#include <algorithm>
#include <random>

#include "derivation_oracle.hpp"
#include "unamb/errors.hpp"
#include "unamb/grammar.hpp"
#include "unamb/oracle.hpp"
#include "unamb/witness.hpp"

using namespace unamb;

namespace {

// The grammar for L1 exactly as it is usually displayed.
constexpr const char* kL1Text = R"(# L1 = { i1 <= i9, i2 <= i7, i3 <= i5 }
S_1 -> A_{1,9}
A_{1,9} -> a1 A_{1,9} a9 | A_9
A_9 -> A_9 a9 | A_8
A_8 -> A_8 a8 | A_{2,7}
A_{2,7} -> a2 A_{2,7} a7 | A_7
A_7 -> A_7 a7 | A_6
A_6 -> A_6 a6 | A_{3,5}
A_{3,5} -> a3 A_{3,5} a5 | A_5
A_5 -> A_5 a5 | A_4
A_4 -> A_4 a4 | epsilon
)";

Grammar l1() { return build_component_grammar(ComponentId::L1); }

Word w(std::string_view text) { return parse_word(text); }

}  // namespace

TEST_CASE("DerivationCount arithmetic saturates and absorbs") {
    const auto max = DerivationCount(~std::uint64_t{0});
    CHECK((max + DerivationCount(1)) == max);
    CHECK((max * DerivationCount(2)) == max);
    CHECK((DerivationCount(0) * DerivationCount::infinite()).is_zero());
    CHECK((DerivationCount(3) * DerivationCount::infinite()).is_infinite());
    CHECK((DerivationCount(3) + DerivationCount::infinite()).is_infinite());
    CHECK(to_string(DerivationCount::infinite()) == "INFINITE");
    CHECK(to_string(DerivationCount(7)) == "7");
}

TEST_CASE("validate") {
    SUBCASE("the L1 grammar is valid") { CHECK(validate(l1()).empty()); }

    SUBCASE("undeclared start symbol gives one diagnostic") {
        Grammar g = l1();
        g.start = "Nowhere";
        CHECK(validate(g).size() == 1);
    }

    SUBCASE("no rules with a declared start is valid and defines the empty language") {
        Grammar g{{"a1"}, {"S"}, {}, "S"};
        CHECK(validate(g).empty());
        CHECK(enumerate_language(g, 5).empty());
        CHECK_FALSE(recognize(g, {}));
    }

    SUBCASE("each violated invariant is reported") {
        Grammar g{{"a1", "S"}, {"S"}, {}, "S"};
        g.rules.push_back({"S", {Symbol::terminal("a2")}});
        g.rules.push_back({"T", {}});
        g.rules.push_back({"S", {Symbol::nonterminal("U")}});
        g.rules.push_back({"S", {Symbol::terminal("a2")}});
        // overlap S, undeclared a2 (twice), undeclared lhs T, undeclared U, duplicate
        CHECK(validate(g).size() == 6);
    }
}

TEST_CASE("is_linear") {
    CHECK(is_linear(l1()));

    Grammar two{{"a1"}, {"S"}, {}, "S"};
    two.rules.push_back({"S", {Symbol::nonterminal("S"), Symbol::nonterminal("S")}});
    two.rules.push_back({"S", {}});
    CHECK_FALSE(is_linear(two));

    Grammar terminal_only{{"a1", "a2"}, {"S"}, {}, "S"};
    terminal_only.rules.push_back({"S", {Symbol::terminal("a1"), Symbol::terminal("a2")}});
    terminal_only.rules.push_back({"S", {Symbol::terminal("a2")}});
    CHECK(is_linear(terminal_only));

    Grammar invalid = l1();
    invalid.start = "";
    CHECK_THROWS_AS(is_linear(invalid), InvalidGrammar);
}

TEST_CASE("is_linear is stable under rule reordering") {
    std::mt19937 rng(7);
    Grammar nonlinear = l1();
    nonlinear.rules.push_back({"A_4", {Symbol::nonterminal("A_4"), Symbol::nonterminal("A_5")}});
    for (int trial = 0; trial < 50; ++trial) {
        Grammar a = l1();
        Grammar b = nonlinear;
        std::shuffle(a.rules.begin(), a.rules.end(), rng);
        std::shuffle(b.rules.begin(), b.rules.end(), rng);
        CHECK(is_linear(a));
        CHECK_FALSE(is_linear(b));
    }
}

TEST_CASE("recognize on the L1 grammar") {
    const Grammar g = l1();
    CHECK(recognize(g, {}));
    CHECK_FALSE(recognize(g, w("a1")));
    CHECK(recognize(g, w("a3 a5")));
    CHECK(recognize(g, w("a1 a2 a3 a5 a7 a9")));
    CHECK_FALSE(recognize(g, w("a5 a3")));
    CHECK_THROWS_AS(recognize(g, w("b")), UndeclaredTerminal);
}

TEST_CASE("count_parses") {
    SUBCASE("the empty word has one parse in L1, agreeing with derivation enumeration") {
        CHECK(count_parses(l1(), {}) == DerivationCount(1));
        CHECK(testing::DerivationOracle(l1()).count({}) == std::optional<std::uint64_t>(1));
    }

    SUBCASE("a1 a9 has one parse in the union grammar") {
        CHECK(count_parses(build_union_grammar(), w("a1 a9")) == DerivationCount(1));
    }

    SUBCASE("a unit cycle makes the count infinite") {
        Grammar g{{}, {"S"}, {}, "S"};
        g.rules.push_back({"S", {Symbol::nonterminal("S")}});
        g.rules.push_back({"S", {}});
        CHECK(count_parses(g, {}).is_infinite());
        CHECK(recognize(g, {}));
    }

    SUBCASE("S -> S S | a counts binary bracketings") {
        Grammar g{{"a1"}, {"S"}, {}, "S"};
        g.rules.push_back({"S", {Symbol::nonterminal("S"), Symbol::nonterminal("S")}});
        g.rules.push_back({"S", {Symbol::terminal("a1")}});
        const std::uint64_t catalan[] = {1, 1, 2, 5, 14, 42};
        for (std::size_t n = 1; n <= 6; ++n) {
            const Word word(n, "a1");
            CHECK(count_parses(g, word) == DerivationCount(catalan[n - 1]));
        }
        CHECK(count_parses(g, {}).is_zero());
    }

    SUBCASE("S -> S S | epsilon is infinite on the empty word") {
        Grammar g{{}, {"S"}, {}, "S"};
        g.rules.push_back({"S", {Symbol::nonterminal("S"), Symbol::nonterminal("S")}});
        g.rules.push_back({"S", {}});
        CHECK(count_parses(g, {}).is_infinite());
    }

    SUBCASE("a cycle only matters for inputs whose parses can reach it") {
        // S -> a1 | B a2 ; B -> B | a2
        Grammar g{{"a1", "a2"}, {"S", "B"}, {}, "S"};
        g.rules.push_back({"S", {Symbol::terminal("a1")}});
        g.rules.push_back({"S", {Symbol::nonterminal("B"), Symbol::terminal("a2")}});
        g.rules.push_back({"B", {Symbol::nonterminal("B")}});
        g.rules.push_back({"B", {Symbol::terminal("a2")}});
        CHECK(count_parses(g, w("a1")) == DerivationCount(1));
        CHECK(count_parses(g, w("a2 a2")).is_infinite());
        CHECK(count_parses(g, w("a2")).is_zero());
    }

    SUBCASE("nullable symbols around a unit position multiply the count") {
        // S -> N a1 N ; N -> epsilon | M ; M -> epsilon
        // N derives the empty word in two ways on each side.
        Grammar g{{"a1"}, {"S", "N", "M"}, {}, "S"};
        g.rules.push_back({"S", {Symbol::nonterminal("N"), Symbol::terminal("a1"), Symbol::nonterminal("N")}});
        g.rules.push_back({"N", {}});
        g.rules.push_back({"N", {Symbol::nonterminal("M")}});
        g.rules.push_back({"M", {}});
        CHECK(count_parses(g, w("a1")) == DerivationCount(4));
        CHECK(testing::DerivationOracle(g).count(w("a1")) == std::optional<std::uint64_t>(4));
    }
}

TEST_CASE("enumerate_language") {
    const Grammar g = l1();
    CHECK(enumerate_language(g, 0) == std::set<Word>{Word{}});
    const std::set<Word> expected{{},           w("a4"), w("a5"), w("a6"),
                                  w("a7"),      w("a8"), w("a9")};
    CHECK(enumerate_language(g, 1) == expected);

    SUBCASE("length 2 agrees with the predicate sweep") {
        std::set<Word> by_predicate;
        for (const Word& word : sorted_words(2)) {
            if (member_component(psi(word), ComponentId::L1)) by_predicate.insert(word);
        }
        CHECK(enumerate_language(g, 2) == by_predicate);
    }

    SUBCASE("monotone in the bound, every listed word is recognized") {
        const ChartParser parser(g);
        std::set<Word> previous;
        for (std::size_t n = 0; n <= 5; ++n) {
            const auto current = enumerate_language(g, n);
            CHECK(std::includes(current.begin(), current.end(), previous.begin(), previous.end()));
            for (const Word& word : current) CHECK(parser.recognize(word));
            previous = current;
        }
    }
}

TEST_CASE("count_parses on L1 is 0 or 1 for every sorted word up to length 10") {
    const ChartParser parser(l1());
    std::size_t checked = 0;
    for (const Word& word : sorted_words(10)) {
        const auto count = parser.count_parses(word);
        const bool member = member_component(psi(word), ComponentId::L1);
        if (count != DerivationCount(member ? 1 : 0)) {
            FAIL_CHECK("count " << to_string(count) << " for " << format_word(word));
        }
        ++checked;
    }
    CHECK(checked == 92378);
}

TEST_CASE("count_parses on L1 is 0 for unsorted words") {
    const ChartParser parser(l1());
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> letter_dist(1, 9), length_dist(2, 10);
    int unsorted = 0;
    for (int trial = 0; trial < 2000; ++trial) {
        Word word(static_cast<std::size_t>(length_dist(rng)));
        for (auto& token : word) token = letter(letter_dist(rng));
        if (is_sorted_word(word)) continue;
        ++unsorted;
        CHECK(parser.count_parses(word).is_zero());
    }
    CHECK(unsorted > 1000);
}

TEST_CASE("random small grammars: chart agrees with derivation enumeration and enumeration") {
    // Grammars over {a1, a2} with nonterminals S, A, B; rules drawn at random
    // with short right-hand sides, epsilon and unit rules included.
    std::mt19937 rng(2024);
    const std::vector<std::string> nts{"S", "A", "B"};
    const std::vector<std::string> ts{"a1", "a2"};
    int finite_compared = 0;
    int infinite_seen = 0;
    for (int trial = 0; trial < 300; ++trial) {
        Grammar g{{ts.begin(), ts.end()}, {nts.begin(), nts.end()}, {}, "S"};
        const int rule_count = std::uniform_int_distribution<int>(1, 6)(rng);
        for (int r = 0; r < rule_count; ++r) {
            Rule rule{nts[std::uniform_int_distribution<std::size_t>(0, 2)(rng)], {}};
            const int len = std::uniform_int_distribution<int>(0, 3)(rng);
            for (int k = 0; k < len; ++k) {
                if (std::uniform_int_distribution<int>(0, 1)(rng)) {
                    rule.rhs.push_back(Symbol::terminal(ts[std::uniform_int_distribution<std::size_t>(0, 1)(rng)]));
                } else {
                    rule.rhs.push_back(Symbol::nonterminal(nts[std::uniform_int_distribution<std::size_t>(0, 2)(rng)]));
                }
            }
            if (std::find(g.rules.begin(), g.rules.end(), rule) == g.rules.end()) g.rules.push_back(rule);
        }
        const ChartParser parser(g);
        const testing::DerivationOracle oracle(g);
        const auto language = enumerate_language(g, 3);

        std::vector<Word> words{{}};
        for (std::size_t n = 1; n <= 3; ++n) {
            for (int mask = 0; mask < (1 << n); ++mask) {
                Word word;
                for (std::size_t k = 0; k < n; ++k) word.push_back(ts[(mask >> k) & 1]);
                words.push_back(word);
            }
        }
        for (const Word& word : words) {
            const auto count = parser.count_parses(word);
            CHECK(parser.recognize(word) == !count.is_zero());
            CHECK(language.contains(word) == !count.is_zero());
            const auto reference = oracle.count(word, 12);
            if (count.is_infinite()) {
                ++infinite_seen;
                CHECK_FALSE(reference.has_value());
            } else if (reference) {
                ++finite_compared;
                CHECK(count.value() == *reference);
            }
        }
    }
    CHECK(finite_compared > 1000);
    CHECK(infinite_seen > 0);
}

TEST_CASE("grammar text format") {
    SUBCASE("the displayed L1 grammar parses to the built one") {
        const Grammar parsed = parse_grammar(kL1Text);
        const Grammar built = l1();
        CHECK(parsed.start == built.start);
        CHECK(parsed.nonterminals == built.nonterminals);
        CHECK(parsed.terminals == built.terminals);
        CHECK(parsed.rules == built.rules);
        CHECK(format_grammar(built) == std::string(kL1Text).substr(std::string(kL1Text).find('\n') + 1));
    }

    SUBCASE("format then parse reproduces built grammars") {
        for (const Grammar& g : {l1(), build_component_grammar(ComponentId::L3), build_union_grammar()}) {
            const Grammar again = parse_grammar(format_grammar(g));
            CHECK(again.start == g.start);
            CHECK(again.rules == g.rules);
            CHECK(again.terminals == g.terminals);
            CHECK(again.nonterminals == g.nonterminals);
        }
    }

    SUBCASE("start and terminals headers, quoted literals") {
        const Grammar g = parse_grammar("start: T\nterminals: a7\nS -> \"x y\" S | epsilon\nT -> S a1\n");
        CHECK(g.start == "T");
        CHECK(g.terminals == std::set<std::string>{"a1", "a7", "x y"});
        CHECK(recognize(g, {"x y", "a1"}));
        const Grammar again = parse_grammar(format_grammar(g));
        CHECK(again.start == "T");
        CHECK(again.terminals == g.terminals);
        CHECK(again.rules == g.rules);
    }

    SUBCASE("a start header alone declares an empty grammar") {
        const Grammar g = parse_grammar("start: S\n");
        CHECK(validate(g).empty());
        CHECK(g.rules.empty());
        CHECK(parse_grammar(format_grammar(g)).start == "S");
    }

    SUBCASE("malformed input") {
        CHECK_THROWS_AS(parse_grammar(""), FormatError);
        CHECK_THROWS_AS(parse_grammar("S a1\n"), FormatError);
        CHECK_THROWS_AS(parse_grammar("S -> a1 |\n"), FormatError);
        CHECK_THROWS_AS(parse_grammar("S -> epsilon a1\n"), FormatError);
        CHECK_THROWS_AS(parse_grammar("a1 -> S\n"), FormatError);
        CHECK_THROWS_AS(parse_grammar("S -> \"open\n"), FormatError);
        CHECK_THROWS_AS(parse_grammar("start: S T\nS -> a1\n"), FormatError);
    }

    SUBCASE("words") {
        CHECK(parse_word("  a1   a2 ") == Word{"a1", "a2"});
        CHECK(parse_word("").empty());
        CHECK(format_word(Word{"a1", "a2", "a2"}) == "a1 a2 a2");
        CHECK(parse_word(format_word(Word{"x", "a3"})) == Word{"x", "a3"});
    }
}

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "unamb/errors.hpp"
#include "unamb/grammar.hpp"

namespace unamb {

namespace {

constexpr std::string_view kEpsilon = "epsilon";

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

bool looks_like_terminal(std::string_view token) {
    return token.size() >= 2 && token[0] == 'a' &&
           std::all_of(token.begin() + 1, token.end(),
                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; });
}

struct Token {
    std::string text;
    bool quoted = false;
};

std::vector<Token> tokenize(std::string_view line, std::size_t line_no) {
    std::vector<Token> tokens;
    std::size_t pos = 0;
    while (pos < line.size()) {
        if (is_space(line[pos])) {
            ++pos;
            continue;
        }
        if (line[pos] == '"') {
            std::size_t close = line.find('"', pos + 1);
            if (close == std::string_view::npos) {
                throw FormatError("line " + std::to_string(line_no) + ": unterminated quoted literal");
            }
            if (close == pos + 1) {
                throw FormatError("line " + std::to_string(line_no) + ": empty quoted literal");
            }
            tokens.push_back({std::string(line.substr(pos + 1, close - pos - 1)), true});
            pos = close + 1;
            continue;
        }
        std::size_t end = pos;
        while (end < line.size() && !is_space(line[end])) ++end;
        tokens.push_back({std::string(line.substr(pos, end - pos)), false});
        pos = end;
    }
    return tokens;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

bool starts_with(std::string_view s, std::string_view prefix) {
    return s.substr(0, prefix.size()) == prefix;
}

bool plain_nonterminal_name(std::string_view name) {
    return !name.empty() && !looks_like_terminal(name) && name != kEpsilon && name != "->" &&
           name != "|" && name.front() != '"' && name.front() != '#' &&
           std::none_of(name.begin(), name.end(), is_space) && name.back() != ':';
}

std::string format_terminal(const std::string& name) {
    if (looks_like_terminal(name)) return name;
    if (name.find('"') != std::string::npos) {
        throw FormatError("terminal '" + name + "' cannot be written in the text format");
    }
    return "\"" + name + "\"";
}

}  // namespace

Grammar parse_grammar(std::string_view text) {
    Grammar grammar;
    std::string header_start;
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        const std::string where = "line " + std::to_string(line_no) + ": ";

        if (starts_with(line, "start:")) {
            auto tokens = tokenize(line.substr(6), line_no);
            if (tokens.size() != 1 || tokens[0].quoted || !plain_nonterminal_name(tokens[0].text)) {
                throw FormatError(where + "start header needs exactly one nonterminal name");
            }
            if (!header_start.empty()) throw FormatError(where + "duplicate start header");
            header_start = tokens[0].text;
            grammar.nonterminals.insert(header_start);
            continue;
        }
        if (starts_with(line, "terminals:")) {
            for (const auto& token : tokenize(line.substr(10), line_no)) {
                if (!token.quoted && !looks_like_terminal(token.text)) {
                    throw FormatError(where + "'" + token.text + "' is not a terminal token");
                }
                grammar.terminals.insert(token.text);
            }
            continue;
        }

        auto tokens = tokenize(line, line_no);
        if (tokens.size() < 2 || tokens[1].quoted || tokens[1].text != "->") {
            throw FormatError(where + "expected 'A -> ...'");
        }
        if (tokens[0].quoted || !plain_nonterminal_name(tokens[0].text)) {
            throw FormatError(where + "'" + tokens[0].text + "' cannot be a left-hand side");
        }
        const std::string lhs = tokens[0].text;
        grammar.nonterminals.insert(lhs);

        std::vector<std::vector<Token>> alternatives(1);
        for (std::size_t k = 2; k < tokens.size(); ++k) {
            if (!tokens[k].quoted && tokens[k].text == "|") {
                alternatives.emplace_back();
            } else {
                alternatives.back().push_back(tokens[k]);
            }
        }
        for (const auto& alternative : alternatives) {
            if (alternative.empty()) {
                throw FormatError(where + "empty alternative (write 'epsilon' for the empty string)");
            }
            Rule rule{lhs, {}};
            const bool is_epsilon = alternative.size() == 1 && !alternative[0].quoted &&
                                    alternative[0].text == kEpsilon;
            if (!is_epsilon) {
                for (const auto& token : alternative) {
                    if (!token.quoted && token.text == kEpsilon) {
                        throw FormatError(where + "'epsilon' must stand alone in its alternative");
                    }
                    if (!token.quoted && token.text == "->") {
                        throw FormatError(where + "unexpected '->'");
                    }
                    if (token.quoted || looks_like_terminal(token.text)) {
                        grammar.terminals.insert(token.text);
                        rule.rhs.push_back(Symbol::terminal(token.text));
                    } else {
                        grammar.nonterminals.insert(token.text);
                        rule.rhs.push_back(Symbol::nonterminal(token.text));
                    }
                }
            }
            grammar.rules.push_back(std::move(rule));
        }
    }

    if (!header_start.empty()) {
        grammar.start = header_start;
    } else if (!grammar.rules.empty()) {
        grammar.start = grammar.rules.front().lhs;
    } else {
        throw FormatError("grammar has no rules and no start header");
    }
    return grammar;
}

std::string format_grammar(const Grammar& grammar) {
    std::ostringstream os;
    for (const auto& name : grammar.nonterminals) {
        if (!plain_nonterminal_name(name)) {
            throw FormatError("nonterminal '" + name + "' cannot be written in the text format");
        }
    }
    if (grammar.rules.empty() || grammar.rules.front().lhs != grammar.start) {
        os << "start: " << grammar.start << '\n';
    }
    std::set<std::string> used;
    for (const Rule& rule : grammar.rules) {
        for (const Symbol& s : rule.rhs) {
            if (s.is_terminal()) used.insert(s.name);
        }
    }
    std::vector<std::string> unused;
    std::set_difference(grammar.terminals.begin(), grammar.terminals.end(), used.begin(), used.end(),
                        std::back_inserter(unused));
    if (!unused.empty()) {
        os << "terminals:";
        for (const auto& t : unused) os << ' ' << format_terminal(t);
        os << '\n';
    }

    std::vector<std::string> order;
    std::map<std::string, std::vector<const Rule*>> by_lhs;
    for (const Rule& rule : grammar.rules) {
        auto& group = by_lhs[rule.lhs];
        if (group.empty()) order.push_back(rule.lhs);
        group.push_back(&rule);
    }
    for (const auto& lhs : order) {
        os << lhs << " ->";
        bool first = true;
        for (const Rule* rule : by_lhs[lhs]) {
            if (!first) os << " |";
            first = false;
            if (rule->rhs.empty()) {
                os << ' ' << kEpsilon;
                continue;
            }
            for (const Symbol& s : rule->rhs) {
                os << ' ' << (s.is_terminal() ? format_terminal(s.name) : s.name);
            }
        }
        os << '\n';
    }
    return os.str();
}

std::string format_word(const Word& word) {
    std::string out;
    for (const auto& token : word) {
        if (!out.empty()) out += ' ';
        out += looks_like_terminal(token) ? token : "\"" + token + "\"";
    }
    return out;
}

Word parse_word(std::string_view text) {
    Word word;
    for (auto& token : tokenize(text, 1)) word.push_back(std::move(token.text));
    return word;
}

}  // namespace unamb

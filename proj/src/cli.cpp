#include "unamb/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

#include "unamb/errors.hpp"
#include "unamb/grammar.hpp"
#include "unamb/oracle.hpp"
#include "unamb/refutation.hpp"
#include "unamb/semilinear.hpp"
#include "unamb/witness.hpp"

namespace unamb::cli {

namespace {

/// Thrown by command bodies for bad arguments; maps to exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw UsageError("cannot write '" + path + "'");
}

/// "1".."4" or "union".
Grammar grammar_for_component(const std::string& which) {
    if (which == "union" || which == "L") return build_union_grammar();
    std::string digits = which;
    if (!digits.empty() && digits.front() == 'L') digits.erase(0, 1);
    if (digits.size() == 1 && digits[0] >= '1' && digits[0] <= '4') {
        return build_component_grammar(component_from_index(digits[0] - '0'));
    }
    throw UsageError("component must be 1..4 or union, got '" + which + "'");
}

Grammar load_grammar(const std::string& file, const std::string& component) {
    if (!file.empty() && !component.empty()) throw UsageError("give either --grammar or --component");
    if (file.empty() && component.empty()) throw UsageError("--grammar or --component is required");
    Grammar g = file.empty() ? grammar_for_component(component) : parse_grammar(read_file(file));
    auto diagnostics = validate(g);
    if (!diagnostics.empty()) {
        std::string message = "invalid grammar:";
        for (const auto& d : diagnostics) message += "\n  " + d;
        throw UsageError(message);
    }
    return g;
}

struct GrammarOptions {
    std::string component;
    std::string file;
    std::string out;
    std::string input;
    std::size_t max_len = 0;
};

struct MemberOptions {
    std::string point;
    std::string target;
    std::string union_file;
};

struct RefuteOptions {
    std::string file;
    bool trace = false;
    bool verify = false;
};

struct SweepOptions {
    std::string component = "union";
    std::size_t max_len = 8;
    std::int64_t max_coord = 3;
    std::size_t trials = 1000;
    std::size_t max_sets = 5;
    std::size_t max_basis = 6;
    std::int64_t union_max_coord = 4;
    std::uint64_t seed = 42;
    std::size_t dim = 9;
    std::size_t queries = 10000;
    std::string format = "text";
};

CommandOutcome grammar_build(const GrammarOptions& o) {
    if (o.component.empty()) throw UsageError("--component is required");
    const std::string text = format_grammar(grammar_for_component(o.component));
    if (!o.out.empty()) {
        write_file(o.out, text);
        return {kExitOk, ""};
    }
    return {kExitOk, text};
}

CommandOutcome grammar_parse(const GrammarOptions& o) {
    const ChartParser parser(load_grammar(o.file, o.component));
    const bool accepted = parser.recognize(parse_word(o.input));
    return {accepted ? kExitOk : kExitNegative, accepted ? "true\n" : "false\n"};
}

CommandOutcome grammar_count(const GrammarOptions& o) {
    const ChartParser parser(load_grammar(o.file, o.component));
    return {kExitOk, to_string(parser.count_parses(parse_word(o.input))) + "\n"};
}

CommandOutcome grammar_enum(const GrammarOptions& o) {
    std::string out;
    for (const Word& w : enumerate_language(load_grammar(o.file, o.component), o.max_len)) {
        out += (w.empty() ? "epsilon" : format_word(w)) + "\n";
    }
    return {kExitOk, out};
}

CommandOutcome grammar_check_linear(const GrammarOptions& o) {
    const bool linear = is_linear(load_grammar(o.file, o.component));
    return {linear ? kExitOk : kExitNegative, linear ? "true\n" : "false\n"};
}

CommandOutcome member_command(const MemberOptions& o) {
    const ExponentVector point = parse_point(o.point);
    if (!o.union_file.empty()) {
        if (!o.target.empty()) throw UsageError("give either --in or --union");
        const SemilinearUnion u = parse_union(read_file(o.union_file), point.dimension());
        const auto witness = member_union(u, point);
        if (!witness) return {kExitNegative, "non-member\n"};
        std::ostringstream os;
        os << "member set=" << witness->set_index + 1 << " coeffs=[";
        for (std::size_t i = 0; i < witness->coefficients.size(); ++i) {
            os << (i ? " " : "") << witness->coefficients[i];
        }
        os << "]\n";
        return {kExitOk, os.str()};
    }
    if (o.target.empty()) throw UsageError("--in or --union is required");
    bool is_member = false;
    if (o.target == "L") {
        is_member = member_L(point);
    } else if (o.target.size() == 2 && o.target[0] == 'L' && o.target[1] >= '1' && o.target[1] <= '4') {
        is_member = member_component(point, component_from_index(o.target[1] - '0'));
    } else {
        throw UsageError("--in must be L or L1..L4");
    }
    return {is_member ? kExitOk : kExitNegative, is_member ? "member\n" : "non-member\n"};
}

CommandOutcome refute_command(const RefuteOptions& o) {
    const SemilinearUnion u = parse_union(read_file(o.file), kWitnessDimension);
    const RefutationResult result = refute(u);
    std::string out = format_result_line(result) + "\n";
    if (o.trace) {
        out += format_trace(result);
        out += "# union (normalized)\n";
        out += format_union(normalize(u));
        out += "# end union\n";
    }
    int code = kExitOk;
    if (o.verify) {
        const bool ok = verify_result(u, result);
        out += std::string("verify: ") + (ok ? "true" : "false") + "\n";
        if (!ok) code = kExitInternal;
    }
    return {code, out};
}

CommandOutcome sweep_outcome(const SweepReport& report, const SweepOptions& o) {
    return {report.passed() ? kExitOk : kExitNegative, format_report(report, o.format == "tsv")};
}

}  // namespace

CommandOutcome run(const std::vector<std::string>& args) {
    CLI::App app{"Witness language tools: grammars, membership, refutation and oracle sweeps", "unamb"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    std::function<CommandOutcome()> action;
    GrammarOptions g;
    MemberOptions m;
    RefuteOptions r;
    SweepOptions s;

    auto* grammar = app.add_subcommand("grammar", "Build, parse, count and enumerate grammars");
    grammar->require_subcommand(1);
    auto add_source = [&](CLI::App* cmd) {
        cmd->add_option("--grammar", g.file, "Grammar file");
        cmd->add_option("--component", g.component, "Built-in grammar: 1..4 or union");
    };
    auto* build = grammar->add_subcommand("build", "Write a built-in grammar in text format");
    build->add_option("--component", g.component, "1..4 or union")->required();
    build->add_option("--out", g.out, "Output file (default: stdout)");
    build->callback([&] { action = [&] { return grammar_build(g); }; });

    auto* parse = grammar->add_subcommand("parse", "Recognize a word");
    add_source(parse);
    parse->add_option("--input", g.input, "Word, e.g. \"a1 a9\"")->required();
    parse->callback([&] { action = [&] { return grammar_parse(g); }; });

    auto* count = grammar->add_subcommand("count", "Count parse trees of a word");
    add_source(count);
    count->add_option("--input", g.input, "Word, e.g. \"a1 a9\"")->required();
    count->callback([&] { action = [&] { return grammar_count(g); }; });

    auto* enumerate = grammar->add_subcommand("enum", "List the language up to a length");
    add_source(enumerate);
    enumerate->add_option("--max-len", g.max_len, "Maximum word length")->required();
    enumerate->callback([&] { action = [&] { return grammar_enum(g); }; });

    auto* linear = grammar->add_subcommand("check-linear", "Test linearity");
    add_source(linear);
    linear->callback([&] { action = [&] { return grammar_check_linear(g); }; });

    auto* member = app.add_subcommand("member", "Membership of a point in psi(L), psi(Lt) or a union");
    member->add_option("point", m.point, "Point, e.g. \"(1 3 2 2 1 2 2 1 1)\"")->required();
    member->add_option("--in", m.target, "L or L1..L4");
    member->add_option("--union", m.union_file, "Union file");
    member->callback([&] { action = [&] { return member_command(m); }; });

    auto* refute_cmd = app.add_subcommand("refute", "Find a counterexample to a claimed complement");
    refute_cmd->add_option("union_file", r.file, "Union file")->required();
    refute_cmd->add_flag("--trace", r.trace, "Print the replayable trace");
    refute_cmd->add_flag("--verify", r.verify, "Re-check the result independently");
    refute_cmd->callback([&] { action = [&] { return refute_command(r); }; });

    auto* sweep = app.add_subcommand("sweep", "Run an oracle sweep");
    sweep->require_subcommand(1);
    sweep->add_option("--format", s.format, "text or tsv")
        ->check(CLI::IsMember({"text", "tsv"}))
        ->capture_default_str();
    sweep->fallthrough();

    auto* sweep_grammar = sweep->add_subcommand("grammar", "Grammar vs predicate over sorted words");
    sweep_grammar->add_option("--component", s.component, "1..4 or union")->capture_default_str();
    sweep_grammar->add_option("--max-len", s.max_len, "Maximum word length")->capture_default_str();
    sweep_grammar->callback([&] {
        action = [&] {
            MembershipTarget target;
            if (s.component != "union" && s.component != "L") {
                target = component_from_index(std::stoi(s.component.substr(s.component.front() == 'L')));
            }
            return sweep_outcome(
                sweep_grammar_vs_predicate(grammar_for_component(s.component), target, s.max_len), s);
        };
    });

    auto* sweep_disjoint = sweep->add_subcommand("disjoint", "Pairwise disjointness of the components");
    sweep_disjoint->add_option("--max-coord", s.max_coord, "Largest coordinate")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    sweep_disjoint->callback([&] { action = [&] { return sweep_outcome(sweep_disjointness(s.max_coord), s); }; });

    auto* sweep_pairs = sweep->add_subcommand("pairs", "Separating coordinate pairs");
    sweep_pairs->add_option("--max-coord", s.max_coord, "Largest coordinate")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    sweep_pairs->callback([&] { action = [&] { return sweep_outcome(sweep_separation_pairs(s.max_coord), s); }; });

    auto* sweep_refute = sweep->add_subcommand("refuter", "Refute random light unions and verify");
    sweep_refute->add_option("--trials", s.trials)->check(CLI::PositiveNumber)->capture_default_str();
    sweep_refute->add_option("--max-sets", s.max_sets)->capture_default_str();
    sweep_refute->add_option("--max-basis", s.max_basis)->capture_default_str();
    sweep_refute->add_option("--max-coord", s.union_max_coord)->check(CLI::NonNegativeNumber)->capture_default_str();
    sweep_refute->add_option("--seed", s.seed)->capture_default_str();
    sweep_refute->callback([&] {
        action = [&] {
            return sweep_outcome(
                sweep_refuter(s.trials, {s.max_sets, s.max_basis, s.union_max_coord}, s.seed), s);
        };
    });

    auto* sweep_strat = sweep->add_subcommand("stratified", "is_stratified vs the crossing condition");
    sweep_strat->add_option("--trials", s.trials)->check(CLI::PositiveNumber)->capture_default_str();
    sweep_strat->add_option("--dim", s.dim)->check(CLI::PositiveNumber)->capture_default_str();
    sweep_strat->add_option("--max-basis", s.max_basis)->capture_default_str();
    sweep_strat->add_option("--seed", s.seed)->capture_default_str();
    sweep_strat->callback([&] {
        action = [&] { return sweep_outcome(sweep_stratified(s.trials, s.dim, s.max_basis, s.seed), s); };
    });

    auto* sweep_member = sweep->add_subcommand("member-oracle", "Membership solver vs brute force");
    sweep_member->add_option("--queries", s.queries)->check(CLI::PositiveNumber)->capture_default_str();
    sweep_member->add_option("--max-dim", s.dim)->check(CLI::PositiveNumber)->capture_default_str();
    sweep_member->add_option("--max-basis", s.max_basis)->capture_default_str();
    sweep_member->add_option("--max-coord", s.union_max_coord)->check(CLI::NonNegativeNumber)->capture_default_str();
    sweep_member->add_option("--seed", s.seed)->capture_default_str();
    sweep_member->callback([&] {
        action = [&] {
            return sweep_outcome(sweep_member_oracle(s.queries, s.dim, s.max_basis, s.union_max_coord, s.seed), s);
        };
    });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        std::ostringstream out, err;
        const int code = app.exit(e, out, err);
        if (code == 0) return {kExitOk, out.str()};
        return {kExitUsage, err.str() + out.str()};
    }
    if (!action) return {kExitUsage, app.help()};

    try {
        return action();
    } catch (const InternalInconsistency& e) {
        return {kExitInternal, std::string("internal inconsistency: ") + e.what() + "\n"};
    } catch (const NotLightError& e) {
        return {kExitUsage, std::string("not light: ") + e.what() + "\n"};
    } catch (const std::exception& e) {
        return {kExitUsage, std::string("error: ") + e.what() + "\n"};
    }
}

}  // namespace unamb::cli

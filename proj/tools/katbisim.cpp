#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "kat/automaton_io.hpp"
#include "kat/derivative_automaton.hpp"
#include "kat/derivatives.hpp"
#include "kat/equivalence.hpp"
#include "kat/error.hpp"
#include "kat/language.hpp"
#include "kat/normal_form.hpp"
#include "kat/typing.hpp"
#include "kat/while_frontend.hpp"

namespace {

using namespace kat;

enum class Exit { equivalent = 0, inequivalent = 1, usage = 2, state_cap = 3 };

struct Options {
    std::string tests;
    std::string programs;
    std::string config;
    std::string type;
    std::string format = "text";
    std::string by;
    std::string pending;
    std::string import_path;
    std::size_t max_len = 4;
    std::size_t state_cap = default_state_cap;
    bool parallel = false;
    std::vector<std::string> inputs;
};

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Inputs naming an existing file are read from it; anything else is inline text.
std::string source_text(const std::string& arg) {
    std::error_code ec;
    if (std::filesystem::is_regular_file(arg, ec)) return read_file(arg);
    return arg;
}

Alphabet make_alphabet(const Options& o) {
    std::vector<std::string> tests = split_list(o.tests), programs = split_list(o.programs);
    if (!o.config.empty()) {
        const auto doc = nlohmann::json::parse(read_file(o.config));
        if (o.tests.empty() && doc.contains("tests")) tests = doc["tests"].get<std::vector<std::string>>();
        if (o.programs.empty() && doc.contains("programs")) programs = doc["programs"].get<std::vector<std::string>>();
    }
    return Alphabet(tests, programs);
}

Execution execution(const Options& o) { return o.parallel ? Execution::parallel : Execution::serial; }

ExprType equation_type(const Alphabet& alpha, const Options& o) {
    if (o.type.empty()) throw InvalidInput("--type is required");
    return parse_type(alpha, o.type);
}

Symbol parse_symbol(const Alphabet& alpha, const std::string& s) {
    if (auto p = alpha.find_program(s)) return *p;
    const bool negative = !s.empty() && s[0] == '~';
    if (auto b = alpha.find_test(negative ? s.substr(1) : s)) return Literal{static_cast<std::uint8_t>(*b), !negative};
    throw InvalidInput("unknown symbol '" + s + "'");
}

Exit cmd_equiv(const Options& o) {
    if (o.inputs.size() != 2) throw InvalidInput("equiv takes two expressions");
    const Alphabet alpha = make_alphabet(o);
    const ExprType t = equation_type(alpha, o);
    const Expr e1 = parse_expr(alpha, source_text(o.inputs[0]));
    const Expr e2 = parse_expr(alpha, source_text(o.inputs[1]));
    const auto verdict = decide_equiv(alpha, e1, e2, t, o.state_cap, execution(o));
    if (const auto* eq = std::get_if<Equivalent>(&verdict)) {
        if (o.format == "json") {
            std::cout << certificate_json(eq->certificate);
        } else {
            const auto& cert = eq->certificate;
            std::cout << "equivalent at " << format_type(alpha, t) << " (" << cert.size() << " pairs)\n";
            for (std::uint32_t a = alpha.subset_count(); a-- > 0;)
                for (const auto& [x, y] : cert.pairs[a])
                    std::cout << alpha.format(TestSet(a)) << "  " << format(alpha, x) << "  ~  " << format(alpha, y)
                              << "\n";
        }
        return Exit::equivalent;
    }
    const auto& neq = std::get<Inequivalent>(verdict);
    const std::string side = neq.side == Side::left ? "left" : "right";
    if (o.format == "json") {
        nlohmann::json doc{{"verdict", "inequivalent"},
                           {"counterexample", format(alpha, neq.counterexample)},
                           {"accepted_by", side}};
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << "inequivalent at " << format_type(alpha, t) << "\ncounterexample: "
                  << format(alpha, neq.counterexample) << "\naccepted by: " << side << "\n";
    }
    return Exit::inequivalent;
}

Exit cmd_derive(const Options& o) {
    if (o.inputs.size() != 1) throw InvalidInput("derive takes one expression");
    if (o.by.empty()) throw InvalidInput("--by is required");
    const Alphabet alpha = make_alphabet(o);
    const ExprType t = equation_type(alpha, o);
    const Expr e = parse_expr(alpha, source_text(o.inputs[0]));
    std::cout << format(alpha, normalized_derivative(alpha, e, t, parse_symbol(alpha, o.by))) << "\n";
    return Exit::equivalent;
}

Exit cmd_automaton(const Options& o) {
    MixedAutomaton m{Alphabet{}};
    StateLabels labels;
    if (!o.import_path.empty()) {
        m = from_json(read_file(o.import_path));
        if (auto v = validate(m)) throw InvalidInput("imported automaton is invalid: " + v->describe(m));
    } else {
        if (o.inputs.size() != 1) throw InvalidInput("automaton takes one expression");
        const Alphabet alpha = make_alphabet(o);
        const ExprType t = equation_type(alpha, o);
        auto d = derivative_automaton(alpha, parse_expr(alpha, source_text(o.inputs[0])), t, o.state_cap,
                                      execution(o));
        for (const auto& row : d.exprs) {
            labels.emplace_back();
            for (const auto& e : row) labels.back().push_back(format(alpha, e));
        }
        m = std::move(d.automaton);
    }
    if (o.format == "json") {
        std::cout << to_json(m, labels);
    } else if (o.format == "dot") {
        std::cout << to_dot(m, labels);
    } else {
        const auto& alpha = m.alphabet();
        for (std::uint32_t a = alpha.subset_count(); a-- > 0;) {
            for (StateRef s : m.states(TestSet(a))) {
                std::cout << m.name(s) << " " << alpha.format(TestSet(a));
                if (s.subset.empty()) std::cout << (m.output(s) ? " accepting" : " rejecting");
                if (!labels.empty()) std::cout << " " << labels[a][s.index];
                std::cout << "\n";
            }
        }
    }
    return Exit::equivalent;
}

Exit cmd_enum(const Options& o) {
    if (o.inputs.size() != 1) throw InvalidInput("enum takes one expression");
    const Alphabet alpha = make_alphabet(o);
    const ExprType t = equation_type(alpha, o);
    const auto lang = bounded_language(alpha, parse_expr(alpha, source_text(o.inputs[0])), t, o.max_len);
    for (const auto& line : listing(alpha, lang)) std::cout << line << "\n";
    return Exit::equivalent;
}

Exit cmd_compile(const Options& o, bool pending_given) {
    if (o.inputs.size() != 1) throw InvalidInput("compile takes one program");
    const Alphabet alpha = make_alphabet(o);
    const TestSet pending = !pending_given ? alpha.all_tests() : alpha.parse_list(o.pending);
    const auto prog = parse_program(alpha, source_text(o.inputs[0]));
    const auto r = compile(alpha, prog, pending);
    const ExprType t{pending, r.out_pending};
    if (!infer_types(alpha, r.expr).contains(t))
        throw InternalInvariantViolation("compiled expression lacks type " + format_type(alpha, t));
    std::cout << format(alpha, r.expr) << "\ntype: " << format_type(alpha, t) << "\n";
    return Exit::equivalent;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Equivalence of typed mixed expressions by syntactic bisimulation"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--tests", o.tests, "Primitive tests in order, comma separated");
    app.add_option("--progs", o.programs, "Primitive programs, comma separated");
    app.add_option("--config", o.config, "JSON file with \"tests\" and \"programs\" arrays");
    app.add_option("--type", o.type, "Type such as \"{b}->{}\"");
    app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json", "dot"}));
    app.add_option("--max-len", o.max_len, "Length bound for enum")->check(CLI::PositiveNumber);
    app.add_option("--state-cap", o.state_cap, "Maximum states per derivative automaton")->check(CLI::PositiveNumber);
    app.add_flag("--parallel", o.parallel, "Use the OpenMP kernels");

    auto* equiv = app.add_subcommand("equiv", "Decide equivalence of two expressions");
    equiv->add_option("exprs", o.inputs, "Two expressions or .kat files")->required();
    auto* derive = app.add_subcommand("derive", "Print a normalized derivative");
    derive->add_option("expr", o.inputs, "Expression or .kat file")->required();
    derive->add_option("--by", o.by, "Program or literal such as b or ~b")->required();
    auto* automaton = app.add_subcommand("automaton", "Export a derivative automaton");
    automaton->add_option("expr", o.inputs, "Expression or .kat file");
    automaton->add_option("--import", o.import_path, "Read an automaton from JSON instead");
    auto* enumerate = app.add_subcommand("enum", "List the strings of an expression up to a length");
    enumerate->add_option("expr", o.inputs, "Expression or .kat file")->required();
    auto* comp = app.add_subcommand("compile", "Compile a while program");
    comp->add_option("program", o.inputs, "Program text or .whl file")->required();
    auto* pending = comp->add_option("--pending", o.pending, "Tests not yet examined, comma separated (default: all)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return static_cast<int>(Exit::usage);
    }

    try {
        Exit code = Exit::usage;
        if (*equiv) code = cmd_equiv(o);
        else if (*derive) code = cmd_derive(o);
        else if (*automaton) code = cmd_automaton(o);
        else if (*enumerate) code = cmd_enum(o);
        else if (*comp) code = cmd_compile(o, pending->count() > 0);
        return static_cast<int>(code);
    } catch (const StateCapExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(Exit::state_cap);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(Exit::usage);
    }
}

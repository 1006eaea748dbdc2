#include "kat/alphabet.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "kat/error.hpp"
#include "text_util.hpp"

namespace kat {

std::vector<std::size_t> TestSet::members() const {
    std::vector<std::size_t> out;
    for (std::uint32_t b = bits_; b != 0; b &= b - 1)
        out.push_back(static_cast<std::size_t>(__builtin_ctz(b)));
    return out;
}

bool canonical_less(TestSet a, TestSet b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.members() < b.members();
}

namespace {

void check_identifier(const std::string& name) {
    if (!detail::is_identifier(name))
        throw AlphabetError("invalid identifier '" + name + "'");
}

} // namespace

Alphabet::Alphabet(std::vector<std::string> tests, std::vector<std::string> programs)
    : tests_(std::move(tests)), programs_(std::move(programs)) {
    if (tests_.size() > max_tests)
        throw AlphabetError("at most " + std::to_string(max_tests) + " primitive tests are supported");
    std::set<std::string> seen;
    for (const auto& name : tests_) {
        check_identifier(name);
        if (!seen.insert(name).second) throw AlphabetError("duplicate identifier '" + name + "'");
    }
    for (const auto& name : programs_) {
        check_identifier(name);
        if (!seen.insert(name).second)
            throw AlphabetError("identifier '" + name + "' declared twice or as both test and program");
    }
    if (programs_.size() > 0xffff) throw AlphabetError("too many programs");
}

std::optional<std::size_t> Alphabet::find_test(std::string_view name) const {
    auto it = std::find(tests_.begin(), tests_.end(), name);
    if (it == tests_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - tests_.begin());
}

std::optional<ProgramId> Alphabet::find_program(std::string_view name) const {
    auto it = std::find(programs_.begin(), programs_.end(), name);
    if (it == programs_.end()) return std::nullopt;
    return ProgramId{static_cast<std::uint16_t>(it - programs_.begin())};
}

std::vector<Literal> Alphabet::literals(TestSet a) const {
    std::vector<Literal> out;
    for (std::size_t b : a.members()) {
        out.push_back({static_cast<std::uint8_t>(b), true});
        out.push_back({static_cast<std::uint8_t>(b), false});
    }
    return out;
}

std::vector<Literal> lit_set(const Alphabet& alphabet, TestSet a) {
    return alphabet.literals(a);
}

std::string Alphabet::format(Literal l) const {
    return (l.positive ? "" : "~") + test_name(l.base);
}

std::string Alphabet::format(const Symbol& s) const {
    if (const auto* p = std::get_if<ProgramId>(&s)) return program_name(*p);
    return format(std::get<Literal>(s));
}

std::string Alphabet::format(TestSet a) const {
    std::string out = "{";
    bool first = true;
    for (std::size_t b : a.members()) {
        if (!first) out += ',';
        out += test_name(b);
        first = false;
    }
    return out + "}";
}

TestSet Alphabet::parse_list(std::string_view text) const {
    TestSet out;
    for (const auto& item : detail::split(text, ',')) {
        auto name = detail::trim(item);
        if (name.empty()) continue;
        auto b = find_test(name);
        if (!b) throw AlphabetError("unknown test '" + std::string(name) + "'");
        out = out.with(*b);
    }
    return out;
}

TestSet Alphabet::parse_set(std::string_view text) const {
    auto t = detail::trim(text);
    if (t.size() < 2 || t.front() != '{' || t.back() != '}')
        throw ParseError(ParseError::Kind::syntax_error, 0, "expected a set such as {b,c}");
    try {
        return parse_list(t.substr(1, t.size() - 2));
    } catch (const AlphabetError& e) {
        throw ParseError(ParseError::Kind::unknown_identifier, 0, e.what());
    }
}

std::string format_type(const Alphabet& alphabet, ExprType t) {
    return alphabet.format(t.from) + "->" + alphabet.format(t.to);
}

ExprType parse_type(const Alphabet& alphabet, std::string_view text) {
    auto arrow = text.find("->");
    if (arrow == std::string_view::npos)
        throw ParseError(ParseError::Kind::syntax_error, 0, "expected a type such as {b}->{}");
    return {alphabet.parse_set(text.substr(0, arrow)), alphabet.parse_set(text.substr(arrow + 2))};
}

} // namespace kat

#include "kat/mixed_string.hpp"

#include <algorithm>

#include "kat/error.hpp"
#include "text_util.hpp"

namespace kat {

Test::Test(TestSet base, TestSet positive) : base_(base), positive_(positive) {
    if (base.empty()) throw InvalidInput("a test needs at least one literal");
    if (!positive.subset_of(base)) throw InvalidInput("test polarity outside its base");
}

Test Test::of(std::span<const Literal> literals) {
    TestSet base, positive;
    for (const auto& l : literals) {
        if (base.contains(l.base)) throw InvalidInput("test literals must have distinct bases");
        base = base.with(l.base);
        if (l.positive) positive = positive.with(l.base);
    }
    return Test(base, positive);
}

std::vector<Literal> Test::literals() const {
    std::vector<Literal> out;
    for (std::size_t b : base_.members())
        out.push_back({static_cast<std::uint8_t>(b), positive_.contains(b)});
    return out;
}

StringElement StringElement::program(ProgramId p) { return StringElement(p.index); }

StringElement StringElement::test(const Test& t) {
    return StringElement(test_flag | (t.base().bits() << 8) | t.positive().bits());
}

ProgramId StringElement::program() const {
    return ProgramId{static_cast<std::uint16_t>(code_ & 0xffffu)};
}

Test StringElement::test() const {
    return Test(TestSet((code_ >> 8) & 0xffu), TestSet(code_ & 0xffu));
}

TestSet StringElement::base() const {
    return is_program() ? TestSet{} : TestSet((code_ >> 8) & 0xffu);
}

namespace {

struct Violation {
    StringError::Kind kind;
    std::size_t index;
};

std::optional<Violation> first_violation(const Alphabet& alphabet, std::span<const StringElement> e) {
    const std::size_t n = e.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0 && e[i - 1].is_program() == e[i].is_program())
            return Violation{StringError::Kind::alternation_violation, i};
        if (i > 0 && i + 1 < n && e[i].is_test() && e[i].base() != alphabet.all_tests())
            return Violation{StringError::Kind::incomplete_interior_test, i};
    }
    return std::nullopt;
}

void check_symbols(const Alphabet& alphabet, std::span<const StringElement> e) {
    for (const auto& x : e) {
        if (x.is_program() && x.program().index >= alphabet.program_count())
            throw InvalidInput("program outside the alphabet");
        if (x.is_test() && !x.base().subset_of(alphabet.all_tests()))
            throw InvalidInput("test outside the alphabet");
    }
}

} // namespace

MixedString mk_string(const Alphabet& alphabet, std::vector<StringElement> elements) {
    check_symbols(alphabet, elements);
    if (auto v = first_violation(alphabet, elements)) {
        const char* what = v->kind == StringError::Kind::alternation_violation
                               ? "alternation violated at index "
                               : "incomplete interior test at index ";
        throw StringError(v->kind, v->index, what + std::to_string(v->index));
    }
    return MixedString(std::move(elements));
}

MixedString unchecked_string(std::vector<StringElement> elements) {
    return MixedString(std::move(elements));
}

std::optional<MixedString> concat(const Alphabet& alphabet, const MixedString& a, const MixedString& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    const auto& x = a.elements();
    const auto& y = b.elements();
    std::vector<StringElement> out;
    out.reserve(x.size() + y.size());
    const StringElement last = x.back();
    const StringElement first = y.front();
    if (last.is_program() != first.is_program()) {
        out.insert(out.end(), x.begin(), x.end());
        out.insert(out.end(), y.begin(), y.end());
    } else if (last.is_test() && (last.base() & first.base()).empty()) {
        const Test s = last.test(), t = first.test();
        out.insert(out.end(), x.begin(), x.end() - 1);
        out.push_back(StringElement::test(Test(s.base() | t.base(), s.positive() | t.positive())));
        out.insert(out.end(), y.begin() + 1, y.end());
    } else {
        return std::nullopt;
    }
    if (first_violation(alphabet, out)) return std::nullopt;
    return unchecked_string(std::move(out));
}

std::vector<ExprType> types_of(const Alphabet& alphabet, const MixedString& s) {
    const TestSet all = alphabet.all_tests();
    std::vector<ExprType> out;
    if (s.empty()) {
        for (std::uint32_t a = 0; a <= all.bits(); ++a) out.push_back({TestSet(a), TestSet(a)});
    } else if (s.length() == 1 && s.elements()[0].is_test()) {
        const TestSet base = s.elements()[0].base();
        for (std::uint32_t a = 0; a <= all.bits(); ++a)
            if ((TestSet(a) & base).empty()) out.push_back({base | TestSet(a), TestSet(a)});
    } else if (s.length() == 1) {
        out.push_back({TestSet{}, all});
    } else {
        out.push_back({s.elements().front().base(), all - s.elements().back().base()});
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool has_type(const Alphabet& alphabet, const MixedString& s, ExprType t) {
    const TestSet all = alphabet.all_tests();
    if (s.empty()) return t.from == t.to;
    if (s.length() == 1 && s.elements()[0].is_test()) {
        const TestSet base = s.elements()[0].base();
        return (t.to & base).empty() && t.from == (base | t.to);
    }
    if (s.length() == 1) return t.from.empty() && t.to == all;
    return t.from == s.elements().front().base() && t.to == all - s.elements().back().base();
}

std::vector<std::vector<Symbol>> linearizations(const MixedString& s) {
    std::vector<std::vector<Symbol>> out{{}};
    for (const auto& e : s.elements()) {
        if (e.is_program()) {
            for (auto& seq : out) seq.push_back(e.program());
            continue;
        }
        auto lits = e.test().literals();
        std::vector<std::vector<Symbol>> next;
        std::sort(lits.begin(), lits.end());
        do {
            for (const auto& seq : out) {
                auto extended = seq;
                extended.insert(extended.end(), lits.begin(), lits.end());
                next.push_back(std::move(extended));
            }
        } while (std::next_permutation(lits.begin(), lits.end()));
        out = std::move(next);
    }
    return out;
}

std::vector<Symbol> reference_linearization(const MixedString& s) {
    std::vector<Symbol> out;
    for (const auto& e : s.elements()) {
        if (e.is_program()) {
            out.emplace_back(e.program());
        } else {
            for (const auto& l : e.test().literals()) out.emplace_back(l);
        }
    }
    return out;
}

std::string format(const Alphabet& alphabet, const Test& t) {
    std::string out = "{";
    bool first = true;
    for (const auto& l : t.literals()) {
        if (!first) out += ',';
        out += alphabet.format(l);
        first = false;
    }
    return out + "}";
}

std::string format(const Alphabet& alphabet, const MixedString& s) {
    if (s.empty()) return "eps";
    std::string out;
    for (const auto& e : s.elements())
        out += e.is_program() ? alphabet.program_name(e.program()) : format(alphabet, e.test());
    return out;
}

MixedString parse_string(const Alphabet& alphabet, std::string_view text) {
    auto t = detail::trim(text);
    if (t == "eps") return MixedString{};
    std::vector<StringElement> elements;
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < t.size() && std::isspace(static_cast<unsigned char>(t[i]))) ++i;
    };
    auto read_ident = [&] {
        std::size_t start = i;
        while (i < t.size() && detail::is_ident_char(t[i])) ++i;
        return t.substr(start, i - start);
    };
    while (true) {
        skip_ws();
        if (i >= t.size()) break;
        if (t[i] == '{') {
            ++i;
            std::vector<Literal> lits;
            while (true) {
                skip_ws();
                bool positive = true;
                if (i < t.size() && t[i] == '~') {
                    positive = false;
                    ++i;
                }
                std::size_t at = i;
                auto name = read_ident();
                auto base = alphabet.find_test(name);
                if (!base)
                    throw ParseError(ParseError::Kind::unknown_identifier, at,
                                     "unknown test '" + std::string(name) + "'");
                lits.push_back({static_cast<std::uint8_t>(*base), positive});
                skip_ws();
                if (i < t.size() && t[i] == ',') {
                    ++i;
                    continue;
                }
                if (i < t.size() && t[i] == '}') {
                    ++i;
                    break;
                }
                throw ParseError(ParseError::Kind::syntax_error, i, "expected ',' or '}'");
            }
            try {
                elements.push_back(StringElement::test(Test::of(lits)));
            } catch (const InvalidInput& e) {
                throw ParseError(ParseError::Kind::syntax_error, i, e.what());
            }
        } else if (detail::is_ident_start(t[i])) {
            std::size_t at = i;
            auto name = read_ident();
            auto p = alphabet.find_program(name);
            if (!p)
                throw ParseError(ParseError::Kind::unknown_identifier, at,
                                 "unknown program '" + std::string(name) + "'");
            elements.push_back(StringElement::program(*p));
        } else {
            throw ParseError(ParseError::Kind::syntax_error, i, "unexpected character");
        }
    }
    return mk_string(alphabet, std::move(elements));
}

} // namespace kat

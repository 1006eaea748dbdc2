#include "kat/language.hpp"

#include <algorithm>

#include "kat/error.hpp"
#include "kat/typing.hpp"

namespace kat {

FiniteMixedLanguage make_language(const Alphabet& alphabet, std::set<MixedString> strings,
                                  std::optional<ExprType> declared) {
    if (declared) {
        for (const auto& s : strings)
            if (!has_type(alphabet, s, *declared))
                throw TypeError(TypeError::Kind::type_mismatch,
                                "string " + format(alphabet, s) + " lacks type " + format_type(alphabet, *declared));
    }
    return {std::move(strings), declared};
}

namespace {

// Pairs (a, b) with |a| + |b| - 1 > max_len can never fit. Sets are ordered
// by length first, so the inner loop stops early.
std::set<MixedString> concat_bounded(const Alphabet& alphabet, const std::set<MixedString>& a,
                                     const std::set<MixedString>& b, std::size_t max_len) {
    std::set<MixedString> out;
    for (const auto& x : a) {
        if (x.length() > max_len) break;
        for (const auto& y : b) {
            if (x.length() + y.length() > max_len + 1) break;
            if (auto z = concat(alphabet, x, y); z && z->length() <= max_len) out.insert(std::move(*z));
        }
    }
    return out;
}

} // namespace

FiniteMixedLanguage lang_concat(const Alphabet& alphabet, const FiniteMixedLanguage& a,
                                const FiniteMixedLanguage& b) {
    FiniteMixedLanguage out;
    for (const auto& x : a.strings)
        for (const auto& y : b.strings)
            if (auto z = concat(alphabet, x, y)) out.strings.insert(std::move(*z));
    if (a.declared_type && b.declared_type && a.declared_type->to == b.declared_type->from)
        out.declared_type = ExprType{a.declared_type->from, b.declared_type->to};
    return out;
}

FiniteMixedLanguage test_strings(const FiniteMixedLanguage& l) {
    FiniteMixedLanguage out{{}, l.declared_type};
    for (const auto& s : l.strings)
        if (s.length() == 1 && s.elements()[0].is_test()) out.strings.insert(s);
    return out;
}

FiniteMixedLanguage empty_strings(const FiniteMixedLanguage& l) {
    FiniteMixedLanguage out{{}, l.declared_type};
    if (l.contains(MixedString{})) out.strings.insert(MixedString{});
    return out;
}

namespace {

StringElement symbol_element(const Symbol& x) {
    if (const auto* p = std::get_if<ProgramId>(&x)) return StringElement::program(*p);
    const Literal l = std::get<Literal>(x);
    const TestSet base = TestSet::single(l.base);
    return StringElement::test(Test(base, l.positive ? base : TestSet{}));
}

} // namespace

FiniteMixedLanguage deriv_lang(const Alphabet& alphabet, const FiniteMixedLanguage& l, const Symbol& x) {
    FiniteMixedLanguage out;
    if (l.declared_type) {
        const ExprType t = *l.declared_type;
        if (std::holds_alternative<ProgramId>(x)) {
            if (!t.from.empty())
                throw TypeError(TypeError::Kind::type_mismatch, "program derivative of a language of type " +
                                                                    format_type(alphabet, t));
            out.declared_type = ExprType{alphabet.all_tests(), t.to};
        } else {
            const Literal lit = std::get<Literal>(x);
            if (!t.from.contains(lit.base))
                throw TypeError(TypeError::Kind::type_mismatch, "literal derivative of a language of type " +
                                                                    format_type(alphabet, t));
            out.declared_type = ExprType{t.from.without(lit.base), t.to};
        }
    }
    const MixedString head = mk_string(alphabet, {symbol_element(x)});
    const StringElement first_head = head.elements()[0];
    for (const auto& s : l.strings) {
        if (s.empty()) continue;
        const auto& e = s.elements();
        std::vector<StringElement> rest;
        if (first_head.is_program()) {
            if (e[0] != first_head) continue;
            rest.assign(e.begin() + 1, e.end());
        } else {
            if (!e[0].is_test()) continue;
            const Test t = e[0].test();
            const Test l1 = first_head.test();
            if (!l1.base().subset_of(t.base()) || (t.positive() & l1.base()) != l1.positive()) continue;
            if (t.base() != l1.base())
                rest.push_back(StringElement::test(Test(t.base() - l1.base(), t.positive() - l1.base())));
            rest.insert(rest.end(), e.begin() + 1, e.end());
        }
        MixedString tail = mk_string(alphabet, std::move(rest));
        if (auto back = concat(alphabet, head, tail); back && *back == s) out.strings.insert(std::move(tail));
    }
    return out;
}

FiniteMixedLanguage truncate(const FiniteMixedLanguage& l, std::size_t max_len) {
    FiniteMixedLanguage out{{}, l.declared_type};
    for (const auto& s : l.strings)
        if (s.length() <= max_len) out.strings.insert(s);
    return out;
}

namespace {

std::set<MixedString> bounded(const Alphabet& alphabet, const Expr& e, std::size_t n) {
    switch (e.kind()) {
    case ExprKind::zero: return {};
    case ExprKind::one: return {MixedString{}};
    case ExprKind::program:
        if (n == 0) return {};
        return {mk_string(alphabet, {symbol_element(e.program_id())})};
    case ExprKind::literal:
        if (n == 0) return {};
        return {mk_string(alphabet, {symbol_element(e.literal_value())})};
    case ExprKind::sum: {
        auto out = bounded(alphabet, e.left(), n);
        out.merge(bounded(alphabet, e.right(), n));
        return out;
    }
    case ExprKind::product:
        return concat_bounded(alphabet, bounded(alphabet, e.left(), n), bounded(alphabet, e.right(), n), n);
    case ExprKind::star: {
        const auto body = bounded(alphabet, e.inner(), n);
        std::set<MixedString> closure{MixedString{}};
        std::set<MixedString> frontier = closure;
        while (!frontier.empty()) {
            std::set<MixedString> next;
            for (auto& s : concat_bounded(alphabet, frontier, body, n))
                if (!closure.count(s)) next.insert(s);
            closure.insert(next.begin(), next.end());
            frontier = std::move(next);
        }
        return closure;
    }
    }
    throw InternalInvariantViolation("unknown expression kind");
}

} // namespace

FiniteMixedLanguage bounded_language(const Alphabet& alphabet, const Expr& e, ExprType t, std::size_t max_len) {
    if (!is_typeable(alphabet, e, t))
        throw TypeError(TypeError::Kind::untypeable,
                        "expression '" + format(alphabet, e) + "' has no type " + format_type(alphabet, t));
    return {bounded(alphabet, e, max_len), t};
}

std::vector<std::string> listing(const Alphabet& alphabet, const FiniteMixedLanguage& l) {
    std::vector<std::pair<std::size_t, std::string>> rows;
    for (const auto& s : l.strings) rows.emplace_back(s.length(), format(alphabet, s));
    std::sort(rows.begin(), rows.end());
    std::vector<std::string> out;
    for (auto& r : rows) out.push_back(std::move(r.second));
    return out;
}

} // namespace kat

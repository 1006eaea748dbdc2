#ifndef KAT_LANGUAGE_HPP
#define KAT_LANGUAGE_HPP

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "kat/expr.hpp"
#include "kat/mixed_string.hpp"

namespace kat {

/// An explicit finite set of mixed strings, optionally tagged with a type all
/// members admit.
struct FiniteMixedLanguage {
    std::set<MixedString> strings;
    std::optional<ExprType> declared_type;

    bool contains(const MixedString& s) const { return strings.count(s) != 0; }
    std::size_t size() const { return strings.size(); }
    bool empty() const { return strings.empty(); }

    /// Set equality; the declared type is not compared.
    bool same_strings(const FiniteMixedLanguage& other) const { return strings == other.strings; }
};

/// Builds a language, checking every member against `declared` when given.
/// Throws TypeError (type_mismatch).
FiniteMixedLanguage make_language(const Alphabet& alphabet, std::set<MixedString> strings,
                                  std::optional<ExprType> declared = std::nullopt);

/// Pairwise concatenation; undefined pairs contribute nothing.
FiniteMixedLanguage lang_concat(const Alphabet& alphabet, const FiniteMixedLanguage& a,
                                const FiniteMixedLanguage& b);

/// Members that are single tests.
FiniteMixedLanguage test_strings(const FiniteMixedLanguage& l);

/// L intersected with {eps}.
FiniteMixedLanguage empty_strings(const FiniteMixedLanguage& l);

/// {s : x . s in L}, where x is a program or the single-literal test {l}.
/// When `l` carries a declared type the precondition is checked against it
/// and the result is retyped. Throws TypeError (type_mismatch).
FiniteMixedLanguage deriv_lang(const Alphabet& alphabet, const FiniteMixedLanguage& l, const Symbol& x);

/// Members of length at most `max_len`.
FiniteMixedLanguage truncate(const FiniteMixedLanguage& l, std::size_t max_len);

/// Exactly the members of M(e) of length at most `max_len`, computed by
/// structural recursion on `e` with star as a least fixpoint. Throws
/// TypeError (untypeable) if e does not have type t.
FiniteMixedLanguage bounded_language(const Alphabet& alphabet, const Expr& e, ExprType t, std::size_t max_len);

/// Members formatted one per line, sorted by length then text.
std::vector<std::string> listing(const Alphabet& alphabet, const FiniteMixedLanguage& l);

} // namespace kat

#endif

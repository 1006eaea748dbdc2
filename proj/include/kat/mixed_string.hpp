#ifndef KAT_MIXED_STRING_HPP
#define KAT_MIXED_STRING_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kat/alphabet.hpp"

namespace kat {

/// A nonempty set of literals with distinct bases. Storing a base mask and a
/// polarity mask makes the distinct-bases invariant structural.
class Test {
public:
    /// Throws InvalidInput if `base` is empty or `positive` is not within it.
    Test(TestSet base, TestSet positive);
    /// Throws InvalidInput on an empty list or repeated bases.
    static Test of(std::span<const Literal> literals);

    TestSet base() const { return base_; }
    TestSet positive() const { return positive_; }
    std::size_t size() const { return base_.size(); }
    /// Members in declared order.
    std::vector<Literal> literals() const;

    bool operator==(const Test&) const = default;
    auto operator<=>(const Test&) const = default;

private:
    TestSet base_;
    TestSet positive_;
};

/// One element of a mixed string, packed into a single word.
class StringElement {
public:
    static StringElement program(ProgramId p);
    static StringElement test(const Test& t);

    bool is_program() const { return (code_ & test_flag) == 0; }
    bool is_test() const { return !is_program(); }
    ProgramId program() const;
    Test test() const;
    /// base(p) is empty for a program.
    TestSet base() const;

    bool operator==(const StringElement&) const = default;
    auto operator<=>(const StringElement&) const = default;

private:
    static constexpr std::uint32_t test_flag = 0x8000'0000u;
    explicit StringElement(std::uint32_t code) : code_(code) {}
    std::uint32_t code_;
};

/// An alternating sequence of programs and tests whose interior tests are
/// complete. Only mk_string and concat produce values, so every instance
/// satisfies the invariant.
class MixedString {
public:
    /// The empty string.
    MixedString() = default;

    const std::vector<StringElement>& elements() const { return elements_; }
    std::size_t length() const { return elements_.size(); }
    bool empty() const { return elements_.empty(); }

    bool operator==(const MixedString&) const = default;
    /// Length first, then elementwise.
    friend std::strong_ordering operator<=>(const MixedString& a, const MixedString& b) {
        if (auto c = a.length() <=> b.length(); c != 0) return c;
        return a.elements_ <=> b.elements_;
    }

private:
    friend MixedString mk_string(const Alphabet&, std::vector<StringElement>);
    friend MixedString unchecked_string(std::vector<StringElement>);
    explicit MixedString(std::vector<StringElement> e) : elements_(std::move(e)) {}
    std::vector<StringElement> elements_;
};

/// Validates the defining conditions. Throws StringError naming the first
/// violation.
MixedString mk_string(const Alphabet& alphabet, std::vector<StringElement> elements);

/// For callers that have already established validity (enumerators).
MixedString unchecked_string(std::vector<StringElement> elements);

/// Partial concatenation; nullopt when undefined.
std::optional<MixedString> concat(const Alphabet& alphabet, const MixedString& a, const MixedString& b);

/// Every type the string admits, sorted.
std::vector<ExprType> types_of(const Alphabet& alphabet, const MixedString& s);
bool has_type(const Alphabet& alphabet, const MixedString& s, ExprType t);

/// All linearizations: each test replaced by every ordering of its literals.
std::vector<std::vector<Symbol>> linearizations(const MixedString& s);

/// The reference linearization: literals of each test in declared order.
std::vector<Symbol> reference_linearization(const MixedString& s);

/// `{b,~c}p{b}`, `eps` for the empty string.
std::string format(const Alphabet& alphabet, const MixedString& s);
std::string format(const Alphabet& alphabet, const Test& t);

/// Parses the notation produced by format. Throws ParseError or StringError.
MixedString parse_string(const Alphabet& alphabet, std::string_view text);

} // namespace kat

#endif

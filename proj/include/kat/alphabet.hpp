#ifndef KAT_ALPHABET_HPP
#define KAT_ALPHABET_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace kat {

/// Upper bound on the number of primitive tests. Type relations are dense
/// bit matrices over pairs of subsets, so they grow as 4^n.
inline constexpr std::size_t max_tests = 8;

/// A subset of the primitive tests; bit i is the i-th test in declared order.
class TestSet {
public:
    constexpr TestSet() = default;
    constexpr explicit TestSet(std::uint32_t bits) : bits_(bits) {}

    static constexpr TestSet single(std::size_t base) { return TestSet(1u << base); }
    static constexpr TestSet full(std::size_t count) { return TestSet((1u << count) - 1u); }

    constexpr std::uint32_t bits() const { return bits_; }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr bool contains(std::size_t base) const { return (bits_ >> base) & 1u; }
    constexpr bool subset_of(TestSet other) const { return (bits_ & ~other.bits_) == 0; }
    constexpr std::size_t size() const { return static_cast<std::size_t>(__builtin_popcount(bits_)); }

    constexpr TestSet with(std::size_t base) const { return TestSet(bits_ | (1u << base)); }
    constexpr TestSet without(std::size_t base) const { return TestSet(bits_ & ~(1u << base)); }

    constexpr TestSet operator|(TestSet o) const { return TestSet(bits_ | o.bits_); }
    constexpr TestSet operator&(TestSet o) const { return TestSet(bits_ & o.bits_); }
    constexpr TestSet operator-(TestSet o) const { return TestSet(bits_ & ~o.bits_); }

    /// Member bases in increasing (declared) order.
    std::vector<std::size_t> members() const;

    constexpr bool operator==(const TestSet&) const = default;
    /// Raw bit order, used for containers only.
    constexpr auto operator<=>(const TestSet&) const = default;

private:
    std::uint32_t bits_ = 0;
};

/// Canonical subset order: by size, then lexicographically on the sorted
/// member indices.
bool canonical_less(TestSet a, TestSet b);

struct Literal {
    std::uint8_t base = 0;
    bool positive = true;

    Literal negated() const { return {base, !positive}; }

    bool operator==(const Literal&) const = default;
    /// Base first, positive before negative.
    friend std::strong_ordering operator<=>(const Literal& a, const Literal& b) {
        if (auto c = a.base <=> b.base; c != 0) return c;
        return b.positive <=> a.positive;
    }
};

struct ProgramId {
    std::uint16_t index = 0;

    auto operator<=>(const ProgramId&) const = default;
};

/// A transition label: a primitive program or a literal.
using Symbol = std::variant<ProgramId, Literal>;

/// The program alphabet and the ordered test alphabet.
class Alphabet {
public:
    Alphabet() = default;
    /// Throws AlphabetError on malformed, duplicate or overlapping identifiers.
    Alphabet(std::vector<std::string> tests, std::vector<std::string> programs);

    const std::vector<std::string>& tests() const { return tests_; }
    const std::vector<std::string>& programs() const { return programs_; }
    std::size_t test_count() const { return tests_.size(); }
    std::size_t program_count() const { return programs_.size(); }

    TestSet all_tests() const { return TestSet::full(tests_.size()); }
    std::size_t subset_count() const { return std::size_t{1} << tests_.size(); }

    std::optional<std::size_t> find_test(std::string_view name) const;
    std::optional<ProgramId> find_program(std::string_view name) const;

    const std::string& test_name(std::size_t base) const { return tests_.at(base); }
    const std::string& program_name(ProgramId p) const { return programs_.at(p.index); }

    /// All literals over `a`, in declared order with positive first.
    std::vector<Literal> literals(TestSet a) const;

    std::string format(Literal l) const;
    std::string format(const Symbol& s) const;
    /// `{b,c}` with members in declared order, `{}` for the empty set.
    std::string format(TestSet a) const;

    /// Inverse of format(TestSet). Throws ParseError.
    TestSet parse_set(std::string_view text) const;
    /// Accepts `b,c` or an empty string. Throws AlphabetError on unknown names.
    TestSet parse_list(std::string_view text) const;

    bool operator==(const Alphabet&) const = default;

private:
    std::vector<std::string> tests_;
    std::vector<std::string> programs_;
};

/// A type A -> B: `from` is the base of the first element, `to` the bases
/// that may still be supplied on the right.
struct ExprType {
    TestSet from;
    TestSet to;

    bool operator==(const ExprType&) const = default;
    auto operator<=>(const ExprType&) const = default;
};

std::string format_type(const Alphabet& alphabet, ExprType t);
/// Parses `{b,c} -> {}`. Throws ParseError.
ExprType parse_type(const Alphabet& alphabet, std::string_view text);

/// Literal set lit(A), size 2|A|.
std::vector<Literal> lit_set(const Alphabet& alphabet, TestSet a);

} // namespace kat

#endif

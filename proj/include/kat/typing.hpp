#ifndef KAT_TYPING_HPP
#define KAT_TYPING_HPP

#include <cstdint>
#include <vector>

#include "kat/alphabet.hpp"
#include "kat/expr.hpp"

namespace kat {

/// A set of types over a fixed test alphabet, stored as a dense bit matrix
/// indexed by (from, to).
class TypeRelation {
public:
    explicit TypeRelation(std::size_t test_count);

    static TypeRelation all(std::size_t test_count);
    static TypeRelation identity(std::size_t test_count);

    bool contains(ExprType t) const;
    void insert(ExprType t);
    bool empty() const;
    std::size_t count() const;

    TypeRelation intersect(const TypeRelation& other) const;
    /// {(A, C) : (A, B) in this and (B, C) in other for some B}.
    TypeRelation compose(const TypeRelation& other) const;
    /// {(A, A) : (A, A) in this}.
    TypeRelation diagonal() const;

    /// Members sorted by (from bits, to bits).
    std::vector<ExprType> types() const;

    bool operator==(const TypeRelation&) const = default;

private:
    std::size_t subsets_;
    std::size_t words_;
    std::vector<std::uint64_t> bits_;

    std::uint64_t* row(std::uint32_t from) { return bits_.data() + from * words_; }
    const std::uint64_t* row(std::uint32_t from) const { return bits_.data() + from * words_; }
};

/// Every derivable type of `e`, computed bottom-up with per-call memoization.
TypeRelation infer_types(const Alphabet& alphabet, const Expr& e);

/// A justification of one type judgment. For products, `middle` is the
/// intermediate set B the two factors compose through.
struct TypeDerivation {
    Expr expr;
    ExprType type;
    TestSet middle;
    std::vector<TypeDerivation> children;
};

/// Builds a derivation of `e : t`, choosing each product's intermediate set
/// minimal under canonical_less. Throws TypeError (untypeable).
TypeDerivation check_type(const Alphabet& alphabet, const Expr& e, ExprType t);

bool is_typeable(const Alphabet& alphabet, const Expr& e, ExprType t);

} // namespace kat

#endif

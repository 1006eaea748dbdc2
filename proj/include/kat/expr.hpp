#ifndef KAT_EXPR_HPP
#define KAT_EXPR_HPP

#include <compare>
#include <cstddef>
#include <memory>
#include <string>
#include <string_view>

#include "kat/alphabet.hpp"

namespace kat {

/// Constructor order doubles as the rank used by the structural order.
enum class ExprKind : std::uint8_t { zero, one, program, literal, sum, product, star };

struct ExprNode;

/// Immutable mixed expression. Copies share structure; every node caches a
/// structural hash so equality rejects mismatches in O(1).
class Expr {
public:
    /// The expression 0.
    Expr();

    static Expr zero();
    static Expr one();
    static Expr program(ProgramId p);
    static Expr literal(Literal l);
    static Expr sum(Expr left, Expr right);
    static Expr product(Expr left, Expr right);
    static Expr star(Expr inner);

    ExprKind kind() const;
    ProgramId program_id() const;
    Literal literal_value() const;
    const Expr& left() const;
    const Expr& right() const;
    const Expr& inner() const { return left(); }

    bool is_zero() const { return kind() == ExprKind::zero; }
    bool is_one() const { return kind() == ExprKind::one; }

    std::size_t hash() const;
    /// Number of nodes.
    std::size_t size() const;
    const ExprNode* node() const { return node_.get(); }

    friend bool operator==(const Expr& a, const Expr& b);
    /// The structural total order: constructor rank, then identifier order,
    /// then children left to right.
    friend std::strong_ordering operator<=>(const Expr& a, const Expr& b);

private:
    friend struct ExprNode;
    struct null_tag {};
    explicit Expr(null_tag) {}
    explicit Expr(std::shared_ptr<const ExprNode> n) : node_(std::move(n)) {}
    std::shared_ptr<const ExprNode> node_;
};

struct ExprNode {
    ExprKind kind;
    ProgramId program{};
    Literal literal{};
    Expr left{Expr::null_tag{}};
    Expr right{Expr::null_tag{}};
    std::size_t hash = 0;
    std::size_t size = 1;
};

struct ExprHash {
    std::size_t operator()(const Expr& e) const { return e.hash(); }
};

/// Parses the surface syntax: `+` (lowest), juxtaposition or `.`, postfix `*`,
/// atoms `0 1 ident ~ident (e) [b]`. `#` starts a comment running to end of line.
/// Throws ParseError.
Expr parse_expr(const Alphabet& alphabet, std::string_view text);

/// Prints with minimal parentheses; `b + ~b` is re-sugared as `[b]`.
std::string format(const Alphabet& alphabet, const Expr& e);

/// `(b + ~b)`.
Expr dont_care(std::size_t base);

} // namespace kat

template <>
struct std::hash<kat::Expr> {
    std::size_t operator()(const kat::Expr& e) const { return e.hash(); }
};

#endif

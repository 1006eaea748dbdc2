#include "kat/derivatives.hpp"

#include "kat/error.hpp"
#include "kat/normal_form.hpp"

namespace kat {

Expr test_part(const Expr& e) {
    switch (e.kind()) {
    case ExprKind::zero:
    case ExprKind::one:
    case ExprKind::literal: return e;
    case ExprKind::program: return Expr::zero();
    case ExprKind::sum: return Expr::sum(test_part(e.left()), test_part(e.right()));
    case ExprKind::product: return Expr::product(test_part(e.left()), test_part(e.right()));
    case ExprKind::star: return Expr::star(test_part(e.inner()));
    }
    throw InternalInvariantViolation("unknown expression kind");
}

bool accepts_empty(const Expr& e) {
    switch (e.kind()) {
    case ExprKind::one:
    case ExprKind::star: return true;
    case ExprKind::zero:
    case ExprKind::program:
    case ExprKind::literal: return false;
    case ExprKind::sum: return accepts_empty(e.left()) || accepts_empty(e.right());
    case ExprKind::product: return accepts_empty(e.left()) && accepts_empty(e.right());
    }
    throw InternalInvariantViolation("unknown expression kind");
}

Expr empty_part(const Expr& e) { return accepts_empty(e) ? Expr::one() : Expr::zero(); }

ExprType derivative_type(const Alphabet& alphabet, ExprType t, const Symbol& x) {
    if (std::holds_alternative<ProgramId>(x)) {
        if (!t.from.empty())
            throw TypeError(TypeError::Kind::type_mismatch,
                            "program derivative needs a type {}->B, got " + format_type(alphabet, t));
        return {alphabet.all_tests(), t.to};
    }
    const Literal l = std::get<Literal>(x);
    if (!t.from.contains(l.base))
        throw TypeError(TypeError::Kind::type_mismatch, "literal " + alphabet.format(l) + " is not applicable at " +
                                                            format_type(alphabet, t));
    return {t.from.without(l.base), t.to};
}

namespace {

Expr derive(const TypeDerivation& d, const Symbol& x) {
    const Expr& e = d.expr;
    const auto* program = std::get_if<ProgramId>(&x);
    const auto* literal = std::get_if<Literal>(&x);
    switch (e.kind()) {
    case ExprKind::zero:
    case ExprKind::one: return Expr::zero();
    case ExprKind::program: return program && *program == e.program_id() ? Expr::one() : Expr::zero();
    case ExprKind::literal: return literal && *literal == e.literal_value() ? Expr::one() : Expr::zero();
    case ExprKind::sum: return Expr::sum(derive(d.children[0], x), derive(d.children[1], x));
    case ExprKind::product: {
        const Expr& first = d.children[0].expr;
        const Expr& second = d.children[1].expr;
        Expr head = Expr::product(derive(d.children[0], x), second);
        const bool passes = program ? d.middle.empty() : d.middle.contains(literal->base);
        if (!passes) return head;
        Expr guard = program ? empty_part(first) : test_part(first);
        return Expr::sum(std::move(head), Expr::product(std::move(guard), derive(d.children[1], x)));
    }
    case ExprKind::star: return Expr::product(derive(d.children[0], x), e);
    }
    throw InternalInvariantViolation("unknown expression kind");
}

} // namespace

Expr derivative(const Alphabet& alphabet, const TypeDerivation& d, const Symbol& x) {
    derivative_type(alphabet, d.type, x);
    return derive(d, x);
}

Expr normalized_derivative(const Alphabet& alphabet, const Expr& e, ExprType t, const Symbol& x) {
    derivative_type(alphabet, t, x);
    return normalize(derivative(alphabet, check_type(alphabet, e, t), x));
}

} // namespace kat

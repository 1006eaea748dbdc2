#ifndef KAT_DERIVATIVES_HPP
#define KAT_DERIVATIVES_HPP

#include "kat/alphabet.hpp"
#include "kat/expr.hpp"
#include "kat/typing.hpp"

namespace kat {

/// Test part: programs become 0, literals stay, homomorphic elsewhere.
Expr test_part(const Expr& e);

/// Empty-string part; always 0 or 1.
Expr empty_part(const Expr& e);
bool accepts_empty(const Expr& e);

/// Type of the derivative of an expression of type `t` by `x`: B -> to for a
/// program, from \ {base} -> to for a literal. Throws TypeError
/// (type_mismatch) when `x` is not applicable at `t`.
ExprType derivative_type(const Alphabet& alphabet, ExprType t, const Symbol& x);

/// Syntactic derivative by a program or literal. Product cases branch on the
/// intermediate set recorded in the derivation. The result is not simplified.
/// Throws TypeError (type_mismatch).
Expr derivative(const Alphabet& alphabet, const TypeDerivation& d, const Symbol& x);

/// check_type + derivative + normalize in one step.
Expr normalized_derivative(const Alphabet& alphabet, const Expr& e, ExprType t, const Symbol& x);

} // namespace kat

#endif

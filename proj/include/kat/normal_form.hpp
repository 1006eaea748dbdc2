#ifndef KAT_NORMAL_FORM_HPP
#define KAT_NORMAL_FORM_HPP

#include "kat/expr.hpp"

namespace kat {

/// Canonical representative modulo associativity, commutativity and
/// idempotence of `+`, extended with language-preserving unit and
/// annihilator rules:
///
///   e + 0 = e     0 e = e 0 = 0     1 e = e 1 = e     0* = 1* = 1
///
/// Sums become right-nested chains of distinct non-sum terms in increasing
/// structural order; products become right-nested chains.
Expr normalize(const Expr& e);

bool aci_equal(const Expr& a, const Expr& b);

bool is_normal(const Expr& e);

} // namespace kat

#endif

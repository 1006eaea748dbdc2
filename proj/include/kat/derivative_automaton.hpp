#ifndef KAT_DERIVATIVE_AUTOMATON_HPP
#define KAT_DERIVATIVE_AUTOMATON_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "kat/automaton.hpp"
#include "kat/expr.hpp"

namespace kat {

inline constexpr std::size_t default_state_cap = 10000;

/// The automaton of normalized derivatives reachable from an expression.
struct DerivativeAutomaton {
    MixedAutomaton automaton;
    /// Normal form of each state, indexed by subset bits then state index.
    std::vector<std::vector<Expr>> exprs;
    StateRef start;

    const Expr& expr(StateRef s) const { return exprs[s.subset.bits()][s.index]; }
};

/// A state to expand: a normal form typed at `subset` -> {}.
struct FrontierItem {
    Expr expr;
    TestSet subset;
};

/// Successors of one frontier item in label order: programs for subset {},
/// literals over the subset otherwise.
using Successors = std::vector<std::pair<Symbol, Expr>>;

/// Normalized derivatives of every frontier item. The parallel variant
/// distributes items across threads; results are identical to the serial
/// one and come back in frontier order. The first exception in frontier
/// order is rethrown.
std::vector<Successors> expand_frontier(const Alphabet& alphabet, const std::vector<FrontierItem>& frontier,
                                        Execution exec = Execution::serial);

/// Breadth-first construction from normalize(e) at t = A -> {}. States are
/// named s0, s1, ... in discovery order. Throws TypeError when e does not
/// have type t or t.to is nonempty, StateCapExceeded when more than
/// `state_cap` states would be created, and InternalInvariantViolation if
/// the result fails validate.
DerivativeAutomaton derivative_automaton(const Alphabet& alphabet, const Expr& e, ExprType t,
                                         std::size_t state_cap = default_state_cap,
                                         Execution exec = Execution::serial);

} // namespace kat

#endif

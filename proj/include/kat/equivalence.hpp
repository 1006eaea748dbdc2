#ifndef KAT_EQUIVALENCE_HPP
#define KAT_EQUIVALENCE_HPP

#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "kat/automaton.hpp"
#include "kat/derivative_automaton.hpp"
#include "kat/expr.hpp"
#include "kat/mixed_string.hpp"

namespace kat {

using ExprPairs = std::set<std::pair<Expr, Expr>>;

/// A family of normal-form pairs indexed by test subset, together with the
/// root pair it is claimed to relate at `type`.
struct SyntacticBisimulation {
    Alphabet alphabet;
    ExprType type;
    Expr left;
    Expr right;
    /// Indexed by subset bits.
    std::vector<ExprPairs> pairs;

    std::size_t size() const;
};

struct Equivalent {
    SyntacticBisimulation certificate;
};

enum class Side { left, right };

struct Inequivalent {
    MixedString counterexample;
    /// The input whose language contains the counterexample.
    Side side;
    std::vector<Symbol> path;
};

using EquivalenceVerdict = std::variant<Equivalent, Inequivalent>;

/// Breadth-first search over pairs of derivatives starting from the
/// normalized inputs at t.from. Output bits are compared at every pair typed
/// at {}. Throws TypeError when either input lacks type t or t.to is
/// nonempty, and StateCapExceeded when either derivative automaton exceeds
/// the cap.
EquivalenceVerdict decide_equiv(const Alphabet& alphabet, const Expr& e1, const Expr& e2, ExprType t,
                                std::size_t state_cap = default_state_cap, Execution exec = Execution::serial);

/// Recomputes every derivative. Checks typing of each pair, presence of the
/// root pair, output agreement and program closure at {}, and literal
/// closure elsewhere, all on normal forms.
bool check_certificate(const SyntacticBisimulation& r, Execution exec = Execution::serial);

/// Groups maximal runs of literals into tests. Throws
/// InternalInvariantViolation when the result is not a mixed string of
/// type `t`.
MixedString counterexample_string(const Alphabet& alphabet, const std::vector<Symbol>& path, ExprType t);

/// {"pairs": {subset: [[e1, e2], ...]}, "root": [e1, e2], "type": "A->{}"}.
std::string certificate_json(const SyntacticBisimulation& r);

/// Inverse of certificate_json. Throws InvalidInput or ParseError.
SyntacticBisimulation certificate_from_json(const Alphabet& alphabet, std::string_view text);

} // namespace kat

#endif

#ifndef KAT_TEST_SUPPORT_HPP
#define KAT_TEST_SUPPORT_HPP

#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "kat/automaton.hpp"
#include "kat/derivative_automaton.hpp"
#include "kat/equivalence.hpp"
#include "kat/expr.hpp"
#include "kat/mixed_string.hpp"

namespace kat::testing {

using Rng = std::mt19937_64;

inline const char* alpha_text = "(b p ([b] c q)* ~c)* ~b";
inline const char* beta_text = "b p ([b] c q + b ~c p)* ~c ~b + ~b";
inline const char* alpha_prime_text = "([b] c q)* ~c (b p ([b] c q)* ~c)* ~b";
inline const char* beta_prime_text = "([b] c q + b ~c p)* ~c ~b";
inline const char* loop_program = "while b do { p; while c do q }";

/// Tests b, c and programs p, q.
Alphabet bc_pq();

/// The example automaton over b, c and p, q with explicit sinks. Named
/// states: s1_b, s1_e, s2_bc, s2_b, s2_c, s2_e and sink_bc, sink_b, sink_c,
/// sink_e.
MixedAutomaton figure_one();
StateRef state(const MixedAutomaton& m, const std::string& name);

/// A four-state automaton over b, c where reading b then c from the {b,c}
/// state differs from reading c then b.
MixedAutomaton path_dependent();

// Independent oracles. They work on raw element sequences and share no code
// with the library's string, language or typing routines.

using Elements = std::vector<StringElement>;

/// Validity straight from the definition.
bool oracle_valid(const Alphabet& alpha, const Elements& s);

/// Every mixed string with at most `max_len` elements.
std::vector<Elements> oracle_all_strings(const Alphabet& alpha, std::size_t max_len);

/// Types straight from the definition.
std::set<ExprType> oracle_types(const Alphabet& alpha, const Elements& s);

/// Partial concatenation from the definition; nullopt when undefined.
std::optional<Elements> oracle_concat(const Alphabet& alpha, const Elements& a, const Elements& b);

/// Membership in M(e) by trying every split of the string.
class MembershipOracle {
public:
    explicit MembershipOracle(Alphabet alpha) : alpha_(std::move(alpha)) {}
    bool member(const Expr& e, const Elements& s);

private:
    Alphabet alpha_;
    std::map<std::pair<const void*, Elements>, bool> memo_;
    std::vector<std::pair<Elements, Elements>> splits(const Elements& s) const;
};

/// {s : |s| <= n, s in M(e)} by brute force.
std::set<MixedString> oracle_language(const Alphabet& alpha, const Expr& e, std::size_t max_len);

// Random expressions.

Expr random_expr(const Alphabet& alpha, Rng& rng, int depth);

/// A random expression with at least one type satisfying `want`, with one such
/// type chosen uniformly.
template <class Pred>
std::pair<Expr, ExprType> random_typed(const Alphabet& alpha, Rng& rng, int depth, Pred want);

/// Random expression typeable at t.
Expr random_at(const Alphabet& alpha, Rng& rng, int depth, ExprType t);

/// Applies `steps` random language-preserving rewrites; every intermediate
/// result stays typeable at t.
Expr rewrite(const Alphabet& alpha, Rng& rng, const Expr& e, ExprType t, int steps);

/// The example family R_0, R_1, R_2 mapped onto the derivative automata of
/// alpha and beta, with (0,0) added to R_1.
PseudoBisimFamily example_family(const DerivativeAutomaton& ma, const DerivativeAutomaton& mb);

/// Least family closed under the chain conditions that contains the seed
/// pair at A_i, or nullopt when closing it meets an output mismatch.
std::optional<PseudoBisimFamily> pseudo_closure(const MixedAutomaton& m1, const MixedAutomaton& m2, std::size_t i,
                                                StateRef s, StateRef t);

} // namespace kat::testing

#include "support_impl.hpp"

#endif

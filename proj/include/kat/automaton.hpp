#ifndef KAT_AUTOMATON_HPP
#define KAT_AUTOMATON_HPP

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "kat/alphabet.hpp"
#include "kat/language.hpp"
#include "kat/mixed_string.hpp"

namespace kat {

/// A state is addressed by the subset it is typed at and its index there.
struct StateRef {
    TestSet subset;
    std::uint32_t index = 0;

    bool operator==(const StateRef&) const = default;
    auto operator<=>(const StateRef&) const = default;
};

/// A deterministic mixed automaton with explicit per-subset state tables.
/// Program states (subset {}) carry an output bit and one transition per
/// program; states at A != {} carry one transition per literal over A.
class MixedAutomaton {
public:
    explicit MixedAutomaton(Alphabet alphabet);

    const Alphabet& alphabet() const { return alphabet_; }

    StateRef add_state(TestSet subset, std::string name);
    void set_output(StateRef s, bool accepting);
    /// Literal transitions are only accepted on bases inside the state's
    /// subset; program transitions only from program states. Throws InvalidInput.
    void set_transition(StateRef from, const Symbol& label, StateRef to);

    std::size_t state_count(TestSet subset) const { return tables_[subset.bits()].names.size(); }
    std::size_t total_states() const;
    const std::string& name(StateRef s) const { return tables_[s.subset.bits()].names[s.index]; }
    std::optional<StateRef> find(std::string_view name) const;
    std::vector<StateRef> states(TestSet subset) const;

    bool output(StateRef s) const;
    /// nullopt when the transition was never set.
    std::optional<StateRef> next(StateRef s, const Symbol& label) const;
    /// Like next, but throws InvalidInput on a missing transition.
    StateRef step(StateRef s, const Symbol& label) const;

private:
    struct Table {
        std::vector<std::string> names;
        std::vector<std::uint8_t> outputs;
        // Program states: one slot per program. Others: slot 2*base + (negative ? 1 : 0).
        std::vector<std::vector<std::optional<StateRef>>> edges;
    };

    Alphabet alphabet_;
    std::vector<Table> tables_;

    std::size_t slot(StateRef s, const Symbol& label) const;
    void check_ref(StateRef s) const;
};

/// Reason a structure fails to be a mixed automaton.
struct Violation {
    enum class Kind { missing_transition, a1_violation, a2_violation };

    Kind kind;
    StateRef state;
    std::optional<Symbol> label;
    /// Populated for A2: the test and two literal orderings reaching
    /// different states.
    std::optional<Test> test;
    std::vector<Literal> first_order;
    std::vector<Literal> second_order;

    std::string describe(const MixedAutomaton& m) const;
};

enum class Execution { serial, parallel };

/// Checks totality, target typing, and path independence. For each state
/// at A and each test with base A, the set of states reachable after any
/// prefix-subset of the test is computed by dynamic programming over subsets
/// of its literals, which visits every ordering without enumerating them.
std::optional<Violation> validate(const MixedAutomaton& m, Execution exec = Execution::serial);

/// Acceptance by the reference linearization. Throws TypeError
/// (type_mismatch) when `s` is not typed at the string's domain.
bool accepts(const MixedAutomaton& m, StateRef s, const MixedString& sigma);

/// Every accepted string of length at most `max_len`, by forward search.
FiniteMixedLanguage accepted_language_bounded(const MixedAutomaton& m, StateRef s, std::size_t max_len);

using Relation = std::set<std::pair<std::uint32_t, std::uint32_t>>;

/// One relation per subset, indexed by subset bits.
struct BisimFamily {
    std::vector<Relation> relations;

    explicit BisimFamily(std::size_t subset_count = 0) : relations(subset_count) {}
    Relation& at(TestSet a) { return relations[a.bits()]; }
    const Relation& at(TestSet a) const { return relations[a.bits()]; }
    bool contains(StateRef s, StateRef t) const;
    bool operator==(const BisimFamily&) const = default;
};

/// Relations R_0..R_n along the chain A_i = first i tests in declared order.
struct PseudoBisimFamily {
    std::vector<Relation> relations;

    explicit PseudoBisimFamily(std::size_t test_count = 0) : relations(test_count + 1) {}
    bool operator==(const PseudoBisimFamily&) const = default;
};

/// One function per subset, indexed by subset bits then state index.
struct StateMap {
    std::vector<std::vector<std::uint32_t>> maps;
};

/// The chain set A_i.
inline TestSet chain_set(std::size_t i) { return TestSet::full(i); }

bool check_homomorphism(const MixedAutomaton& m, const MixedAutomaton& m2, const StateMap& f);
BisimFamily graph_of(const StateMap& f);

bool check_bisimulation(const MixedAutomaton& m, const MixedAutomaton& m2, const BisimFamily& r);
bool check_pseudo_bisimulation(const MixedAutomaton& m, const MixedAutomaton& m2, const PseudoBisimFamily& r);

/// Extends a pseudo-bisimulation to a bisimulation agreeing with it on the
/// chain. For A with largest chain prefix A_i and remainder C = A \ A_i, s and
/// s' are related iff every literal sequence exhaustive over C leads them to
/// R_i-related states. Throws InvalidInput when either automaton fails to
/// validate or `r` is not a pseudo-bisimulation.
BisimFamily complete_pseudo(const MixedAutomaton& m, const MixedAutomaton& m2, const PseudoBisimFamily& r);

/// Restriction of a family to the chain subsets.
PseudoBisimFamily restrict_to_chain(const BisimFamily& r, std::size_t test_count);

} // namespace kat

#endif

#include "kat/automaton.hpp"

#include <algorithm>
#include <map>

#include "kat/error.hpp"

namespace kat {

namespace {

// All subsets of `a`, including the empty set and `a` itself.
std::vector<TestSet> subsets_of(TestSet a) {
    std::vector<TestSet> out;
    std::uint32_t sub = a.bits();
    while (true) {
        out.push_back(TestSet(sub));
        if (sub == 0) break;
        sub = (sub - 1) & a.bits();
    }
    std::reverse(out.begin(), out.end());
    return out;
}

} // namespace

MixedAutomaton::MixedAutomaton(Alphabet alphabet)
    : alphabet_(std::move(alphabet)), tables_(alphabet_.subset_count()) {}

StateRef MixedAutomaton::add_state(TestSet subset, std::string name) {
    if (!subset.subset_of(alphabet_.all_tests())) throw InvalidInput("state subset outside the test alphabet");
    auto& t = tables_[subset.bits()];
    const std::size_t width = subset.empty() ? alphabet_.program_count() : 2 * alphabet_.test_count();
    t.names.push_back(std::move(name));
    t.outputs.push_back(0);
    t.edges.emplace_back(width);
    return {subset, static_cast<std::uint32_t>(t.names.size() - 1)};
}

void MixedAutomaton::check_ref(StateRef s) const {
    if (s.subset.bits() >= tables_.size() || s.index >= tables_[s.subset.bits()].names.size())
        throw InvalidInput("unknown state");
}

void MixedAutomaton::set_output(StateRef s, bool accepting) {
    check_ref(s);
    if (!s.subset.empty()) throw InvalidInput("only program states carry an output");
    tables_[0].outputs[s.index] = accepting ? 1 : 0;
}

std::size_t MixedAutomaton::slot(StateRef s, const Symbol& label) const {
    if (const auto* p = std::get_if<ProgramId>(&label)) {
        if (!s.subset.empty()) throw InvalidInput("program transition from a state at a nonempty subset");
        if (p->index >= alphabet_.program_count()) throw InvalidInput("program outside the alphabet");
        return p->index;
    }
    const Literal l = std::get<Literal>(label);
    if (!s.subset.contains(l.base)) throw InvalidInput("literal outside the state's subset");
    return 2 * std::size_t{l.base} + (l.positive ? 0 : 1);
}

void MixedAutomaton::set_transition(StateRef from, const Symbol& label, StateRef to) {
    check_ref(from);
    check_ref(to);
    tables_[from.subset.bits()].edges[from.index][slot(from, label)] = to;
}

std::size_t MixedAutomaton::total_states() const {
    std::size_t n = 0;
    for (const auto& t : tables_) n += t.names.size();
    return n;
}

std::optional<StateRef> MixedAutomaton::find(std::string_view name) const {
    for (std::uint32_t a = 0; a < tables_.size(); ++a)
        for (std::uint32_t i = 0; i < tables_[a].names.size(); ++i)
            if (tables_[a].names[i] == name) return StateRef{TestSet(a), i};
    return std::nullopt;
}

std::vector<StateRef> MixedAutomaton::states(TestSet subset) const {
    std::vector<StateRef> out;
    for (std::uint32_t i = 0; i < state_count(subset); ++i) out.push_back({subset, i});
    return out;
}

bool MixedAutomaton::output(StateRef s) const {
    check_ref(s);
    return s.subset.empty() && tables_[0].outputs[s.index] != 0;
}

std::optional<StateRef> MixedAutomaton::next(StateRef s, const Symbol& label) const {
    check_ref(s);
    return tables_[s.subset.bits()].edges[s.index][slot(s, label)];
}

StateRef MixedAutomaton::step(StateRef s, const Symbol& label) const {
    auto t = next(s, label);
    if (!t) throw InvalidInput("missing transition from " + name(s) + " on " + alphabet_.format(label));
    return *t;
}

std::string Violation::describe(const MixedAutomaton& m) const {
    const auto& a = m.alphabet();
    auto order = [&](const std::vector<Literal>& o) {
        std::string s;
        for (const auto& l : o) s += (s.empty() ? "" : " ") + a.format(l);
        return s;
    };
    switch (kind) {
    case Kind::missing_transition: return "missing transition from " + m.name(state) + " on " + a.format(*label);
    case Kind::a1_violation:
        return "transition from " + m.name(state) + " on " + a.format(*label) + " leaves the expected subset";
    case Kind::a2_violation:
        return "path dependence at " + m.name(state) + " for test " + format(a, *test) + ": [" + order(first_order) +
               "] and [" + order(second_order) + "] disagree";
    }
    return "";
}

namespace {

std::optional<Violation> check_edges(const MixedAutomaton& m, StateRef s) {
    const auto& alpha = m.alphabet();
    if (s.subset.empty()) {
        for (std::uint16_t p = 0; p < alpha.program_count(); ++p) {
            const Symbol label = ProgramId{p};
            auto t = m.next(s, label);
            if (!t) return Violation{Violation::Kind::missing_transition, s, label, {}, {}, {}};
            if (t->subset != alpha.all_tests()) return Violation{Violation::Kind::a1_violation, s, label, {}, {}, {}};
        }
        return std::nullopt;
    }
    for (const auto& l : alpha.literals(s.subset)) {
        auto t = m.next(s, l);
        if (!t) return Violation{Violation::Kind::missing_transition, s, l, {}, {}, {}};
        if (t->subset != s.subset.without(l.base)) return Violation{Violation::Kind::a1_violation, s, l, {}, {}, {}};
    }
    return std::nullopt;
}

// Assumes check_edges passed for every state.
std::optional<Violation> check_path_independence(const MixedAutomaton& m, StateRef s) {
    if (s.subset.empty()) return std::nullopt;
    const auto bases = s.subset.members();
    const std::size_t width = bases.size();
    for (TestSet polarity : subsets_of(s.subset)) {
        std::vector<Literal> lits;
        for (std::size_t b : bases) lits.push_back({static_cast<std::uint8_t>(b), polarity.contains(b)});
        // reach[mask]: states reachable after consuming the literals in mask, each
        // with one witnessing ordering.
        std::vector<std::map<StateRef, std::vector<Literal>>> reach(std::size_t{1} << width);
        reach[0][s] = {};
        for (std::uint32_t mask = 0; mask < reach.size(); ++mask) {
            for (const auto& [state, order] : reach[mask]) {
                for (std::size_t j = 0; j < width; ++j) {
                    if ((mask >> j) & 1u) continue;
                    auto& slot = reach[mask | (1u << j)];
                    StateRef t = m.step(state, lits[j]);
                    if (!slot.count(t)) {
                        auto extended = order;
                        extended.push_back(lits[j]);
                        slot.emplace(t, std::move(extended));
                    }
                }
            }
        }
        const auto& ends = reach.back();
        if (ends.size() > 1) {
            auto it = ends.begin();
            Violation v{Violation::Kind::a2_violation, s, std::nullopt, Test::of(lits), it->second, {}};
            v.second_order = std::next(it)->second;
            return v;
        }
    }
    return std::nullopt;
}

std::vector<StateRef> all_states(const MixedAutomaton& m) {
    std::vector<StateRef> out;
    for (std::uint32_t a = 0; a < m.alphabet().subset_count(); ++a)
        for (auto s : m.states(TestSet(a))) out.push_back(s);
    return out;
}

std::optional<Violation> first_of(const MixedAutomaton& m, const std::vector<StateRef>& states, Execution exec,
                                  std::optional<Violation> (*check)(const MixedAutomaton&, StateRef)) {
    std::vector<std::optional<Violation>> found(states.size());
    if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::size_t i = 0; i < states.size(); ++i) found[i] = check(m, states[i]);
    } else {
        for (std::size_t i = 0; i < states.size(); ++i) {
            found[i] = check(m, states[i]);
            if (found[i]) return found[i];
        }
    }
    for (auto& v : found)
        if (v) return v;
    return std::nullopt;
}

} // namespace

std::optional<Violation> validate(const MixedAutomaton& m, Execution exec) {
    const auto states = all_states(m);
    if (auto v = first_of(m, states, exec, check_edges)) return v;
    return first_of(m, states, exec, check_path_independence);
}

bool accepts(const MixedAutomaton& m, StateRef s, const MixedString& sigma) {
    if (!has_type(m.alphabet(), sigma, {s.subset, TestSet{}}))
        throw TypeError(TypeError::Kind::type_mismatch,
                        "state " + m.name(s) + " cannot read " + format(m.alphabet(), sigma));
    StateRef cur = s;
    for (const auto& x : reference_linearization(sigma)) cur = m.step(cur, x);
    return cur.subset.empty() && m.output(cur);
}

namespace {

void explore(const MixedAutomaton& m, StateRef state, std::vector<StringElement>& prefix, std::size_t max_len,
             std::set<MixedString>& out) {
    const auto& alpha = m.alphabet();
    if (state.subset.empty()) {
        if (m.output(state)) out.insert(mk_string(alpha, prefix));
        if (prefix.size() >= max_len) return;
        for (std::uint16_t p = 0; p < alpha.program_count(); ++p) {
            prefix.push_back(StringElement::program(ProgramId{p}));
            explore(m, m.step(state, ProgramId{p}), prefix, max_len, out);
            prefix.pop_back();
        }
        return;
    }
    if (prefix.size() >= max_len) return;
    for (TestSet polarity : subsets_of(state.subset)) {
        const Test t(state.subset, polarity);
        StateRef cur = state;
        for (const auto& l : t.literals()) cur = m.step(cur, l);
        prefix.push_back(StringElement::test(t));
        explore(m, cur, prefix, max_len, out);
        prefix.pop_back();
    }
}

} // namespace

FiniteMixedLanguage accepted_language_bounded(const MixedAutomaton& m, StateRef s, std::size_t max_len) {
    FiniteMixedLanguage out{{}, ExprType{s.subset, TestSet{}}};
    std::vector<StringElement> prefix;
    explore(m, s, prefix, max_len, out.strings);
    return out;
}

bool BisimFamily::contains(StateRef s, StateRef t) const {
    if (s.subset != t.subset || s.subset.bits() >= relations.size()) return false;
    return relations[s.subset.bits()].count({s.index, t.index}) != 0;
}

namespace {

bool pair_ok(const MixedAutomaton& m, const MixedAutomaton& m2, TestSet a, std::pair<std::uint32_t, std::uint32_t> p) {
    return p.first < m.state_count(a) && p.second < m2.state_count(a);
}

} // namespace

bool check_homomorphism(const MixedAutomaton& m, const MixedAutomaton& m2, const StateMap& f) {
    const auto& alpha = m.alphabet();
    if (alpha != m2.alphabet() || f.maps.size() != alpha.subset_count()) return false;
    for (std::uint32_t a = 0; a < alpha.subset_count(); ++a) {
        if (f.maps[a].size() != m.state_count(TestSet(a))) return false;
        for (auto target : f.maps[a])
            if (target >= m2.state_count(TestSet(a))) return false;
    }
    auto image = [&](StateRef s) { return StateRef{s.subset, f.maps[s.subset.bits()][s.index]}; };
    for (std::uint32_t a = 0; a < alpha.subset_count(); ++a) {
        for (StateRef s : m.states(TestSet(a))) {
            const StateRef fs = image(s);
            if (s.subset.empty()) {
                if (m.output(s) != m2.output(fs)) return false;
                for (std::uint16_t p = 0; p < alpha.program_count(); ++p)
                    if (image(m.step(s, ProgramId{p})) != m2.step(fs, ProgramId{p})) return false;
            } else {
                for (const auto& l : alpha.literals(s.subset))
                    if (image(m.step(s, l)) != m2.step(fs, l)) return false;
            }
        }
    }
    return true;
}

BisimFamily graph_of(const StateMap& f) {
    BisimFamily r(f.maps.size());
    for (std::uint32_t a = 0; a < f.maps.size(); ++a)
        for (std::uint32_t i = 0; i < f.maps[a].size(); ++i) r.relations[a].insert({i, f.maps[a][i]});
    return r;
}

bool check_bisimulation(const MixedAutomaton& m, const MixedAutomaton& m2, const BisimFamily& r) {
    const auto& alpha = m.alphabet();
    if (alpha != m2.alphabet() || r.relations.size() != alpha.subset_count()) return false;
    for (std::uint32_t a = 0; a < alpha.subset_count(); ++a) {
        const TestSet subset(a);
        for (const auto& p : r.relations[a]) {
            if (!pair_ok(m, m2, subset, p)) return false;
            const StateRef s{subset, p.first}, t{subset, p.second};
            if (subset.empty()) {
                if (m.output(s) != m2.output(t)) return false;
                for (std::uint16_t q = 0; q < alpha.program_count(); ++q)
                    if (!r.contains(m.step(s, ProgramId{q}), m2.step(t, ProgramId{q}))) return false;
            } else {
                for (const auto& l : alpha.literals(subset))
                    if (!r.contains(m.step(s, l), m2.step(t, l))) return false;
            }
        }
    }
    return true;
}

bool check_pseudo_bisimulation(const MixedAutomaton& m, const MixedAutomaton& m2, const PseudoBisimFamily& r) {
    const auto& alpha = m.alphabet();
    const std::size_t k = alpha.test_count();
    if (alpha != m2.alphabet() || r.relations.size() != k + 1) return false;
    auto related = [&](std::size_t i, StateRef s, StateRef t) {
        return s.subset == chain_set(i) && t.subset == chain_set(i) && r.relations[i].count({s.index, t.index});
    };
    for (std::size_t i = 0; i <= k; ++i) {
        const TestSet subset = chain_set(i);
        for (const auto& p : r.relations[i]) {
            if (!pair_ok(m, m2, subset, p)) return false;
            const StateRef s{subset, p.first}, t{subset, p.second};
            if (i == 0) {
                if (m.output(s) != m2.output(t)) return false;
                for (std::uint16_t q = 0; q < alpha.program_count(); ++q)
                    if (!related(k, m.step(s, ProgramId{q}), m2.step(t, ProgramId{q}))) return false;
            } else {
                for (bool positive : {true, false}) {
                    const Literal l{static_cast<std::uint8_t>(i - 1), positive};
                    if (!related(i - 1, m.step(s, l), m2.step(t, l))) return false;
                }
            }
        }
    }
    return true;
}

namespace {

// Largest i with A_i a subset of `a`.
std::size_t chain_index(TestSet a, std::size_t k) {
    std::size_t i = 0;
    while (i < k && a.contains(i)) ++i;
    return i;
}

// Every literal sequence that mentions each base of `c` exactly once.
std::vector<std::vector<Literal>> exhaustive_sequences(TestSet c) {
    std::vector<std::vector<Literal>> out;
    auto bases = c.members();
    do {
        for (TestSet polarity : subsets_of(c)) {
            std::vector<Literal> seq;
            for (std::size_t b : bases) seq.push_back({static_cast<std::uint8_t>(b), polarity.contains(b)});
            out.push_back(std::move(seq));
        }
    } while (std::next_permutation(bases.begin(), bases.end()));
    return out;
}

} // namespace

BisimFamily complete_pseudo(const MixedAutomaton& m, const MixedAutomaton& m2, const PseudoBisimFamily& r) {
    const auto& alpha = m.alphabet();
    if (alpha != m2.alphabet()) throw InvalidInput("automata over different alphabets");
    if (auto v = validate(m)) throw InvalidInput("first automaton is not a mixed automaton: " + v->describe(m));
    if (auto v = validate(m2)) throw InvalidInput("second automaton is not a mixed automaton: " + v->describe(m2));
    if (!check_pseudo_bisimulation(m, m2, r)) throw InvalidInput("family is not a pseudo-bisimulation");

    const std::size_t k = alpha.test_count();
    BisimFamily out(alpha.subset_count());
    for (std::uint32_t a = 0; a < alpha.subset_count(); ++a) {
        const TestSet subset(a);
        const std::size_t i = chain_index(subset, k);
        const auto sequences = exhaustive_sequences(subset - chain_set(i));
        for (StateRef s : m.states(subset)) {
            for (StateRef t : m2.states(subset)) {
                const bool related = std::all_of(sequences.begin(), sequences.end(), [&](const auto& seq) {
                    StateRef x = s, y = t;
                    for (const auto& l : seq) {
                        x = m.step(x, l);
                        y = m2.step(y, l);
                    }
                    return r.relations[i].count({x.index, y.index}) != 0;
                });
                if (related) out.relations[a].insert({s.index, t.index});
            }
        }
    }
    return out;
}

PseudoBisimFamily restrict_to_chain(const BisimFamily& r, std::size_t test_count) {
    PseudoBisimFamily out(test_count);
    for (std::size_t i = 0; i <= test_count; ++i) out.relations[i] = r.at(chain_set(i));
    return out;
}

} // namespace kat

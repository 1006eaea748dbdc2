#include "kat/derivative_automaton.hpp"

#include <exception>
#include <string>
#include <unordered_map>

#include "kat/derivatives.hpp"
#include "kat/error.hpp"
#include "kat/normal_form.hpp"
#include "kat/typing.hpp"

namespace kat {

namespace {

Successors expand_one(const Alphabet& alphabet, const FrontierItem& item) {
    const ExprType t{item.subset, TestSet{}};
    const TypeDerivation d = check_type(alphabet, item.expr, t);
    Successors out;
    if (item.subset.empty()) {
        for (std::uint16_t p = 0; p < alphabet.program_count(); ++p)
            out.emplace_back(ProgramId{p}, normalize(derivative(alphabet, d, ProgramId{p})));
    } else {
        for (const auto& l : alphabet.literals(item.subset))
            out.emplace_back(l, normalize(derivative(alphabet, d, l)));
    }
    return out;
}

} // namespace

std::vector<Successors> expand_frontier(const Alphabet& alphabet, const std::vector<FrontierItem>& frontier,
                                        Execution exec) {
    std::vector<Successors> out(frontier.size());
    if (exec == Execution::serial) {
        for (std::size_t i = 0; i < frontier.size(); ++i) out[i] = expand_one(alphabet, frontier[i]);
        return out;
    }
    std::vector<std::exception_ptr> errors(frontier.size());
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < frontier.size(); ++i) {
        try {
            out[i] = expand_one(alphabet, frontier[i]);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    for (auto& err : errors)
        if (err) std::rethrow_exception(err);
    return out;
}

DerivativeAutomaton derivative_automaton(const Alphabet& alphabet, const Expr& e, ExprType t, std::size_t state_cap,
                                         Execution exec) {
    if (!t.to.empty())
        throw TypeError(TypeError::Kind::type_mismatch,
                        "derivative automata need a type ending in {}, got " + format_type(alphabet, t));
    check_type(alphabet, e, t);

    DerivativeAutomaton out{MixedAutomaton(alphabet), std::vector<std::vector<Expr>>(alphabet.subset_count()), {}};
    std::vector<std::unordered_map<Expr, std::uint32_t, ExprHash>> index(alphabet.subset_count());
    std::vector<FrontierItem> frontier;
    std::size_t created = 0;

    auto intern = [&](const Expr& q, TestSet subset) {
        auto& table = index[subset.bits()];
        if (auto it = table.find(q); it != table.end()) return StateRef{subset, it->second};
        if (++created > state_cap) throw StateCapExceeded(state_cap);
        const StateRef s = out.automaton.add_state(subset, "s" + std::to_string(created - 1));
        table.emplace(q, s.index);
        out.exprs[subset.bits()].push_back(q);
        if (subset.empty()) out.automaton.set_output(s, accepts_empty(q));
        frontier.push_back({q, subset});
        return s;
    };

    out.start = intern(normalize(e), t.from);
    std::vector<StateRef> level{out.start};
    while (!frontier.empty()) {
        const std::vector<FrontierItem> current = std::move(frontier);
        frontier.clear();
        const auto successors = expand_frontier(alphabet, current, exec);
        std::vector<StateRef> next_level;
        for (std::size_t i = 0; i < current.size(); ++i) {
            for (const auto& [label, q] : successors[i]) {
                const TestSet target = std::holds_alternative<ProgramId>(label)
                                           ? alphabet.all_tests()
                                           : current[i].subset.without(std::get<Literal>(label).base);
                const std::size_t before = frontier.size();
                const StateRef to = intern(q, target);
                if (frontier.size() != before) next_level.push_back(to);
                out.automaton.set_transition(level[i], label, to);
            }
        }
        level = std::move(next_level);
    }

    if (auto v = validate(out.automaton, exec))
        throw InternalInvariantViolation("derivative automaton is not a mixed automaton: " +
                                         v->describe(out.automaton));
    return out;
}

} // namespace kat

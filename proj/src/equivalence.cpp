#include "kat/equivalence.hpp"

#include <deque>
#include <map>
#include <optional>
#include <tuple>

#include <json.hpp>

#include "kat/derivatives.hpp"
#include "kat/error.hpp"
#include "kat/normal_form.hpp"
#include "kat/typing.hpp"

namespace kat {

std::size_t SyntacticBisimulation::size() const {
    std::size_t n = 0;
    for (const auto& r : pairs) n += r.size();
    return n;
}

MixedString counterexample_string(const Alphabet& alphabet, const std::vector<Symbol>& path, ExprType t) {
    std::vector<StringElement> elements;
    std::vector<Literal> run;
    auto flush = [&] {
        if (run.empty()) return;
        elements.push_back(StringElement::test(Test::of(run)));
        run.clear();
    };
    try {
        for (const auto& x : path) {
            if (const auto* l = std::get_if<Literal>(&x)) {
                run.push_back(*l);
            } else {
                flush();
                elements.push_back(StringElement::program(std::get<ProgramId>(x)));
            }
        }
        flush();
        MixedString s = mk_string(alphabet, std::move(elements));
        if (!has_type(alphabet, s, t))
            throw InternalInvariantViolation("counterexample " + format(alphabet, s) + " lacks type " +
                                             format_type(alphabet, t));
        return s;
    } catch (const InvalidInput& e) {
        throw InternalInvariantViolation(std::string("path does not spell a mixed string: ") + e.what());
    } catch (const StringError& e) {
        throw InternalInvariantViolation(std::string("path does not spell a mixed string: ") + e.what());
    }
}

EquivalenceVerdict decide_equiv(const Alphabet& alphabet, const Expr& e1, const Expr& e2, ExprType t,
                                std::size_t state_cap, Execution exec) {
    if (!t.to.empty())
        throw TypeError(TypeError::Kind::type_mismatch,
                        "equivalence is decided at types ending in {}, got " + format_type(alphabet, t));
    check_type(alphabet, e1, t);
    check_type(alphabet, e2, t);
    const DerivativeAutomaton m1 = derivative_automaton(alphabet, e1, t, state_cap, exec);
    const DerivativeAutomaton m2 = derivative_automaton(alphabet, e2, t, state_cap, exec);

    struct Node {
        StateRef a, b;
        std::size_t parent;
        std::optional<Symbol> via;
    };
    std::vector<Node> nodes;
    std::set<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>> seen;
    std::deque<std::size_t> queue;

    auto path_to = [&](std::size_t i) {
        std::vector<Symbol> path;
        for (; nodes[i].via; i = nodes[i].parent) path.push_back(*nodes[i].via);
        return std::vector<Symbol>(path.rbegin(), path.rend());
    };

    // Returns a mismatch verdict when the new pair is typed at {} and disagrees.
    auto insert = [&](StateRef a, StateRef b, std::size_t parent, std::optional<Symbol> via) -> std::optional<Inequivalent> {
        if (!seen.insert({a.subset.bits(), a.index, b.index}).second) return std::nullopt;
        nodes.push_back({a, b, parent, via});
        const std::size_t id = nodes.size() - 1;
        if (a.subset.empty() && m1.automaton.output(a) != m2.automaton.output(b)) {
            auto path = path_to(id);
            return Inequivalent{counterexample_string(alphabet, path, t),
                                m1.automaton.output(a) ? Side::left : Side::right, std::move(path)};
        }
        queue.push_back(id);
        return std::nullopt;
    };

    if (auto bad = insert(m1.start, m2.start, 0, std::nullopt)) return *bad;
    while (!queue.empty()) {
        const Node n = nodes[queue.front()];
        const std::size_t id = queue.front();
        queue.pop_front();
        std::vector<Symbol> labels;
        if (n.a.subset.empty()) {
            for (std::uint16_t p = 0; p < alphabet.program_count(); ++p) labels.emplace_back(ProgramId{p});
        } else {
            for (const auto& l : alphabet.literals(n.a.subset)) labels.emplace_back(l);
        }
        for (const auto& x : labels)
            if (auto bad = insert(m1.automaton.step(n.a, x), m2.automaton.step(n.b, x), id, x)) return *bad;
    }

    SyntacticBisimulation cert{alphabet, t, normalize(e1), normalize(e2),
                               std::vector<ExprPairs>(alphabet.subset_count())};
    for (const auto& n : nodes) cert.pairs[n.a.subset.bits()].insert({m1.expr(n.a), m2.expr(n.b)});
    return Equivalent{std::move(cert)};
}

namespace {

struct PairItem {
    TestSet subset;
    Expr left;
    Expr right;
};

bool pair_closed(const SyntacticBisimulation& r, const std::vector<ExprPairs>& normal, const PairItem& item) {
    const Alphabet& alpha = r.alphabet;
    const ExprType t{item.subset, TestSet{}};
    if (!is_typeable(alpha, item.left, t) || !is_typeable(alpha, item.right, t)) return false;
    const TypeDerivation d1 = check_type(alpha, item.left, t);
    const TypeDerivation d2 = check_type(alpha, item.right, t);
    auto related = [&](TestSet a, const Symbol& x) {
        return normal[a.bits()].count({normalize(derivative(alpha, d1, x)), normalize(derivative(alpha, d2, x))}) != 0;
    };
    if (item.subset.empty()) {
        if (accepts_empty(item.left) != accepts_empty(item.right)) return false;
        for (std::uint16_t p = 0; p < alpha.program_count(); ++p)
            if (!related(alpha.all_tests(), ProgramId{p})) return false;
        return true;
    }
    for (const auto& l : alpha.literals(item.subset))
        if (!related(item.subset.without(l.base), l)) return false;
    return true;
}

} // namespace

bool check_certificate(const SyntacticBisimulation& r, Execution exec) {
    const Alphabet& alpha = r.alphabet;
    if (r.pairs.size() != alpha.subset_count() || !r.type.to.empty()) return false;
    if (!r.type.from.subset_of(alpha.all_tests())) return false;
    std::vector<ExprPairs> normal(alpha.subset_count());
    std::vector<PairItem> items;
    try {
        for (std::uint32_t a = 0; a < alpha.subset_count(); ++a)
            for (const auto& [x, y] : r.pairs[a]) {
                normal[a].insert({normalize(x), normalize(y)});
                items.push_back({TestSet(a), x, y});
            }
        if (!normal[r.type.from.bits()].count({normalize(r.left), normalize(r.right)})) return false;
        if (!is_typeable(alpha, r.left, r.type) || !is_typeable(alpha, r.right, r.type)) return false;
    } catch (const Error&) {
        return false;
    }

    std::vector<std::uint8_t> ok(items.size(), 0);
    auto run = [&](std::size_t i) {
        try {
            ok[i] = pair_closed(r, normal, items[i]) ? 1 : 0;
        } catch (const Error&) {
            ok[i] = 0;
        }
    };
    if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::size_t i = 0; i < items.size(); ++i) run(i);
    } else {
        for (std::size_t i = 0; i < items.size(); ++i) {
            run(i);
            if (!ok[i]) return false;
        }
    }
    for (auto v : ok)
        if (!v) return false;
    return true;
}

std::string certificate_json(const SyntacticBisimulation& r) {
    using nlohmann::json;
    const Alphabet& alpha = r.alphabet;
    json pairs = json::object();
    for (std::uint32_t a = 0; a < r.pairs.size(); ++a) {
        if (r.pairs[a].empty()) continue;
        json list = json::array();
        for (const auto& [x, y] : r.pairs[a]) list.push_back({format(alpha, x), format(alpha, y)});
        pairs[alpha.format(TestSet(a))] = list;
    }
    json doc;
    doc["type"] = format_type(alpha, r.type);
    doc["root"] = {format(alpha, r.left), format(alpha, r.right)};
    doc["pairs"] = pairs;
    return doc.dump(2) + "\n";
}

SyntacticBisimulation certificate_from_json(const Alphabet& alphabet, std::string_view text) {
    using nlohmann::json;
    try {
        const json doc = json::parse(text);
        SyntacticBisimulation r{alphabet, parse_type(alphabet, doc.at("type").get<std::string>()), {}, {},
                                std::vector<ExprPairs>(alphabet.subset_count())};
        r.left = parse_expr(alphabet, doc.at("root").at(0).get<std::string>());
        r.right = parse_expr(alphabet, doc.at("root").at(1).get<std::string>());
        for (const auto& [key, list] : doc.at("pairs").items()) {
            const TestSet a = alphabet.parse_set(key);
            for (const auto& p : list)
                r.pairs[a.bits()].insert(
                    {parse_expr(alphabet, p.at(0).get<std::string>()), parse_expr(alphabet, p.at(1).get<std::string>())});
        }
        return r;
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("malformed certificate JSON: ") + e.what());
    }
}

} // namespace kat

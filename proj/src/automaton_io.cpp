#include "kat/automaton_io.hpp"

#include <map>
#include <sstream>

#include <json.hpp>

#include "kat/error.hpp"

namespace kat {

namespace {

using nlohmann::json;

std::string escaped(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

std::string quoted(const std::string& s) { return "\"" + escaped(s) + "\""; }

std::vector<Symbol> labels_of(const MixedAutomaton& m, TestSet subset) {
    const auto& alpha = m.alphabet();
    std::vector<Symbol> out;
    if (subset.empty()) {
        for (std::uint16_t p = 0; p < alpha.program_count(); ++p) out.emplace_back(ProgramId{p});
    } else {
        for (const auto& l : alpha.literals(subset)) out.emplace_back(l);
    }
    return out;
}

bool has_label(const StateLabels& labels, StateRef s) {
    return s.subset.bits() < labels.size() && s.index < labels[s.subset.bits()].size();
}

json subset_json(const Alphabet& alpha, TestSet a) {
    json out = json::array();
    for (std::size_t b : a.members()) out.push_back(alpha.test_name(b));
    return out;
}

} // namespace

std::string to_dot(const MixedAutomaton& m, const StateLabels& labels) {
    const auto& alpha = m.alphabet();
    std::ostringstream out;
    out << "digraph mixed {\n  rankdir=LR;\n  node [shape=circle];\n";
    for (std::uint32_t a = alpha.subset_count(); a-- > 0;) {
        const TestSet subset(a);
        out << "  subgraph cluster_" << a << " {\n    label=" << quoted(alpha.format(subset)) << ";\n";
        for (StateRef s : m.states(subset)) {
            out << "    " << quoted(m.name(s));
            if (m.output(s)) out << " [shape=doublecircle]";
            out << ";\n";
        }
        out << "  }\n";
    }
    for (std::uint32_t a = alpha.subset_count(); a-- > 0;) {
        const TestSet subset(a);
        for (StateRef s : m.states(subset)) {
            for (const auto& x : labels_of(m, subset)) {
                auto t = m.next(s, x);
                if (!t) continue;
                out << "  " << quoted(m.name(s)) << " -> " << quoted(m.name(*t))
                    << " [label=" << quoted(alpha.format(x)) << "];\n";
            }
        }
    }
    if (!labels.empty()) {
        std::string legend;
        for (std::uint32_t a = alpha.subset_count(); a-- > 0;)
            for (StateRef s : m.states(TestSet(a)))
                if (has_label(labels, s)) legend += escaped(m.name(s) + " = " + labels[a][s.index]) + "\\l";
        out << "  legend [shape=note, label=\"" << legend << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

std::string to_json(const MixedAutomaton& m, const StateLabels& labels) {
    const auto& alpha = m.alphabet();
    json doc;
    doc["tests"] = alpha.tests();
    doc["programs"] = alpha.programs();
    json states = json::array(), outputs = json::object(), transitions = json::array(), legend = json::object();
    for (std::uint32_t a = 0; a < alpha.subset_count(); ++a) {
        const TestSet subset(a);
        if (m.state_count(subset) == 0) continue;
        json names = json::array();
        for (StateRef s : m.states(subset)) {
            names.push_back(m.name(s));
            if (subset.empty()) outputs[m.name(s)] = m.output(s) ? 1 : 0;
            if (has_label(labels, s)) legend[m.name(s)] = labels[a][s.index];
            for (const auto& x : labels_of(m, subset))
                if (auto t = m.next(s, x)) transitions.push_back({m.name(s), alpha.format(x), m.name(*t)});
        }
        states.push_back({{"names", names}, {"subset", subset_json(alpha, subset)}});
    }
    doc["states"] = states;
    doc["outputs"] = outputs;
    doc["transitions"] = transitions;
    if (!labels.empty()) doc["labels"] = legend;
    return doc.dump(2) + "\n";
}

MixedAutomaton from_json(std::string_view text) {
    try {
        const json doc = json::parse(text);
        const Alphabet alpha(doc.at("tests").get<std::vector<std::string>>(),
                             doc.at("programs").get<std::vector<std::string>>());
        MixedAutomaton m(alpha);
        std::map<std::string, StateRef> by_name;
        for (const auto& group : doc.at("states")) {
            TestSet subset;
            for (const auto& t : group.at("subset")) {
                auto b = alpha.find_test(t.get<std::string>());
                if (!b) throw InvalidInput("unknown test '" + t.get<std::string>() + "' in state subset");
                subset = subset.with(*b);
            }
            for (const auto& n : group.at("names")) {
                const auto name = n.get<std::string>();
                if (by_name.count(name)) throw InvalidInput("duplicate state name '" + name + "'");
                by_name[name] = m.add_state(subset, name);
            }
        }
        auto lookup = [&](const std::string& name) {
            auto it = by_name.find(name);
            if (it == by_name.end()) throw InvalidInput("unknown state '" + name + "'");
            return it->second;
        };
        if (doc.contains("outputs"))
            for (const auto& [name, value] : doc.at("outputs").items()) m.set_output(lookup(name), value.get<int>() != 0);
        for (const auto& edge : doc.at("transitions")) {
            if (!edge.is_array() || edge.size() != 3) throw InvalidInput("transitions must be [from, label, to]");
            const auto label = edge[1].get<std::string>();
            Symbol x;
            if (auto p = alpha.find_program(label)) {
                x = *p;
            } else {
                const bool negative = !label.empty() && label[0] == '~';
                auto b = alpha.find_test(negative ? std::string_view(label).substr(1) : std::string_view(label));
                if (!b) throw InvalidInput("unknown transition label '" + label + "'");
                x = Literal{static_cast<std::uint8_t>(*b), !negative};
            }
            m.set_transition(lookup(edge[0].get<std::string>()), x, lookup(edge[2].get<std::string>()));
        }
        return m;
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("malformed automaton JSON: ") + e.what());
    } catch (const AlphabetError& e) {
        throw InvalidInput(e.what());
    }
}

} // namespace kat

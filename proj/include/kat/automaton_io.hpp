#ifndef KAT_AUTOMATON_IO_HPP
#define KAT_AUTOMATON_IO_HPP

#include <string>
#include <string_view>
#include <vector>

#include "kat/automaton.hpp"

namespace kat {

/// Optional per-state annotation, indexed by subset bits then state index.
using StateLabels = std::vector<std::vector<std::string>>;

/// Graphviz text with one cluster per subset. Accepting program states are
/// double circles. When labels are given a legend node lists them.
std::string to_dot(const MixedAutomaton& m, const StateLabels& labels = {});

/// JSON with sorted keys: tests, programs, states (per subset, identifier
/// lists), outputs (by state name), transitions as [from, label, to]
/// triples, and labels when given.
std::string to_json(const MixedAutomaton& m, const StateLabels& labels = {});

/// Inverse of to_json. State names must be unique. Throws InvalidInput.
MixedAutomaton from_json(std::string_view text);

} // namespace kat

#endif

#pragma once

#include <string>

#include "schemata/grid_automaton.hpp"

namespace schemata {

// A relabeling-invariant fingerprint: two automata have equal canonical
// forms exactly when some renaming of their nodes (and ports) maps one onto
// the other. Computed by brute force over the symmetry candidates, so only
// sensible for small automata; throws SearchSpaceTooLarge past the budget.
std::string canonical_form(const BasicGridAutomaton& ga, std::size_t budget = 2000000);
std::string canonical_form(const GridAutomaton& ga, std::size_t budget = 2000000);

}  // namespace schemata

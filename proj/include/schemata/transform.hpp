#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "schemata/schema.hpp"

namespace schemata {

// A constant that can replace an element variable: a kind plus resolved
// parameter values.
struct BoundConstant {
  KindPath kind;
  std::map<std::string, ParamValue> params;

  auto operator<=>(const BoundConstant&) const = default;
};

using BoundValue = std::variant<BoundConstant, ParamValue>;

// Interpretation currency: values per variable name, with optional
// per-occurrence overrides. The default applies a name to all of its
// occurrences at once (multiset semantics).
struct Binding {
  std::map<std::string, BoundValue> by_name;
  std::map<OccurrenceRef, BoundValue> by_occurrence;

  bool empty() const { return by_name.empty() && by_occurrence.empty(); }
  auto operator<=>(const Binding&) const = default;
};

// Union of two bindings; throws NotComposable on conflicting entries.
Binding merge(const Binding& a, const Binding& b);

struct AbstractionItem {
  OccurrenceRef occurrence;
  std::string var_name;
  RangeDescriptor range;  // must contain the replaced constant
};

struct AbstractionSpec {
  std::vector<AbstractionItem> items;

  bool empty() const { return items.empty(); }
};

// Range and target-set restrictions; every entry must stay nonempty and be
// a subset of what it restricts.
struct DeterminationSpec {
  std::map<std::string, RangeDescriptor> variable_ranges;
  std::map<PortId, std::set<NodeId>> internal_assignment;
  std::map<LinkId, std::set<PortAttachment>> adjacency;
  std::map<LinkId, std::set<NodeAttachment>> node_adjacency;
  std::map<PortId, std::set<ExternalTarget>> external_assignment;

  bool empty() const;
};

// Replace the named variable occurrences by constants from their ranges.
// Unbound variables stay; slots and adjacency are untouched. When
// `occurrences` is given, only those occurrences are replaced.
PortSchema interpret(const PortSchema& s, const Binding& b,
                     const std::set<OccurrenceRef>* occurrences = nullptr);
BasicSchema interpret(const BasicSchema& s, const Binding& b,
                      const std::set<OccurrenceRef>* occurrences = nullptr);
Schema interpret(const Schema& s, const Binding& b,
                 const std::set<OccurrenceRef>* occurrences = nullptr);

// Interpretation of every listed name; records provenance on the result.
PortSchema concretize(const PortSchema& s, const Binding& b);
BasicSchema concretize(const BasicSchema& s, const Binding& b);
Schema concretize(const Schema& s, const Binding& b);

// A concretization that leaves no variable and no set-valued entry: a grid
// automaton.
GridAutomaton realize(const PortSchema& s, const Binding& b);
BasicGridAutomaton realize(const BasicSchema& s, const Binding& b);

// Replace selected constant occurrences by fresh variables whose ranges
// contain them. Concretizing the result with the original constants gives
// the input back exactly.
PortSchema abstract_elements(const PortSchema& s, const AbstractionSpec& spec);
BasicSchema abstract_elements(const BasicSchema& s, const AbstractionSpec& spec);
Schema abstract_elements(const Schema& s, const AbstractionSpec& spec);

// Shrink variable ranges and/or set-valued assignment and adjacency entries.
PortSchema determine(const PortSchema& s, const DeterminationSpec& spec);
BasicSchema determine(const BasicSchema& s, const DeterminationSpec& spec);
Schema determine(const Schema& s, const DeterminationSpec& spec);

struct CompareResult {
  bool more_concrete = false;   // t = concretize(s, concrete_witness)
  bool more_general = false;    // s = concretize(t, general_witness)
  bool more_determined = false; // t = determine(s, determined_witness)
  std::optional<Binding> concrete_witness;
  std::optional<Binding> general_witness;
  std::optional<DeterminationSpec> determined_witness;
};

// Decide the order relations between two same-shaped schemas and return the
// witnesses. Schemas of different flavors compare all-false.
CompareResult compare(const Schema& s, const Schema& t);

struct Renaming {
  std::map<std::string, std::string> variables;
  std::map<NodeId, NodeId> nodes;
  std::map<PortId, PortId> ports;
  std::map<LinkId, LinkId> links;
};

struct StrongEquivalence {
  bool equivalent = false;
  std::optional<Renaming> witness;
};

// Structure-preserving slot bijection matching constants exactly and
// variables up to a bijective renaming with equal ranges.
StrongEquivalence strongly_equivalent(const Schema& s, const Schema& t);

// All realizations of the schema over its registered universe, produced by
// enumerating every full binding of its variables. Nondeterministic schemas
// have none. Throws SearchSpaceTooLarge past `budget` bindings.
std::vector<GridAutomaton> enumerate_realizations(const PortSchema& s,
                                                  std::size_t budget = 200000);
std::vector<BasicGridAutomaton> enumerate_realizations(const BasicSchema& s,
                                                       std::size_t budget = 200000);

// Realization-set equality, optionally relative to a class of automata
// given as a predicate.
bool equivalent(const PortSchema& s, const PortSchema& t,
                const std::function<bool(const GridAutomaton&)>& in_class = {});
bool equivalent(const BasicSchema& s, const BasicSchema& t,
                const std::function<bool(const BasicGridAutomaton&)>& in_class = {});

// Every slot becomes a variable with the universal range of its sort and the
// assignment/adjacency mappings relax to every direction-respecting
// possibility.
PortSchema maximal_abstraction(const PortSchema& s);
BasicSchema maximal_abstraction(const BasicSchema& s);
Schema maximal_abstraction(const Schema& s);

// Closure: stub nodes absorb every loose edge side and every external port
// is re-homed onto a stub; the result classifies closed.
struct ClosureEmbedding {
  std::set<NodeId> added_nodes;
  std::set<PortId> added_ports;
  std::set<LinkId> absorbed_links;
  std::map<PortId, std::set<ExternalTarget>> rehomed_ports;  // old targets

  bool identity() const {
    return added_nodes.empty() && added_ports.empty() && absorbed_links.empty() &&
           rehomed_ports.empty();
  }
};

struct CloseResult {
  Schema schema;
  ClosureEmbedding embedding;
};

CloseResult close_schema(const Schema& s);

KindPath environment_stub_kind();

}  // namespace schemata

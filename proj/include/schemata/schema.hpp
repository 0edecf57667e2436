#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "schemata/grid_automaton.hpp"
#include "schemata/ids.hpp"
#include "schemata/kinds.hpp"
#include "schemata/multigraph.hpp"

namespace schemata {

// A variable's range: an explicit kind set, everything of one sort in the
// registered universe, or a finite parameter-value domain.
struct RangeDescriptor {
  enum class Kind { KindSet, Universal, ParamSet };

  Kind kind = Kind::Universal;
  Sort sort = Sort::Node;        // KindSet / Universal
  std::set<KindPath> kinds;      // KindSet
  std::set<ParamValue> values;   // ParamSet

  static RangeDescriptor kind_set(Sort s, std::set<KindPath> ks);
  static RangeDescriptor universal(Sort s);
  static RangeDescriptor param_set(std::set<ParamValue> vs);

  bool contains(const KindPath& k, const KindUniverse& u) const;
  bool contains(const ParamValue& v) const;
  bool is_empty(const KindUniverse& u) const;
  // Subset check; Universal ranges compare symbolically by sort.
  bool subset_of(const RangeDescriptor& other, const KindUniverse& u) const;
  std::vector<KindPath> enumerate_kinds(const KindUniverse& u) const;

  auto operator<=>(const RangeDescriptor&) const = default;
};

// Parameter entry of a parameterized element: a resolved value or a named
// variable over a finite domain.
struct ParamVar {
  std::string name;
  RangeDescriptor range;  // Kind::ParamSet

  auto operator<=>(const ParamVar&) const = default;
};

using ParamEntry = std::variant<ParamValue, ParamVar>;

// A slot's content: a constant kind, a named variable with a range, or a
// parameterized kind some of whose parameters are variables. A parameterized
// element whose parameters are all values counts as constant.
struct SchemaElement {
  enum class Kind { Constant, Variable, Parameterized };

  Kind kind = Kind::Constant;
  KindPath constant_kind;                   // Constant / Parameterized
  std::string var_name;                     // Variable
  RangeDescriptor range;                    // Variable
  std::map<std::string, ParamEntry> params; // Parameterized

  static SchemaElement constant(KindPath k);
  static SchemaElement variable(std::string name, RangeDescriptor r);
  static SchemaElement parameterized(KindPath k, std::map<std::string, ParamEntry> ps);

  bool fully_constant() const;  // no variable anywhere in the element

  auto operator<=>(const SchemaElement&) const = default;
};

struct PortSlot {
  PortDirection direction = PortDirection::Inlet;
  PortLocus locus = PortLocus::Internal;
  SchemaElement element = SchemaElement::constant(generic_port_kind());

  auto operator<=>(const PortSlot&) const = default;
};

struct LinkSlot {
  LinkClass link_class = LinkClass::Information;
  ChannelKind channel = ChannelKind::Simple;
  SchemaElement element;

  auto operator<=>(const LinkSlot&) const = default;
};

// Where a transform came from; bookkeeping only, never part of equality.
struct Provenance {
  std::string operation;
  std::string source;
  std::string detail;
};

// A grid-automaton-shaped structure whose slots may hold variables and whose
// assignment and adjacency mappings may be set-valued (nonempty sets of
// admissible targets).
struct PortSchema {
  std::string name;
  KindUniverse universe;
  std::map<NodeId, SchemaElement> nodes;
  std::map<PortId, PortSlot> ports;
  std::map<LinkId, LinkSlot> links;
  std::map<PortId, std::set<NodeId>> internal_assignment;
  std::map<LinkId, std::set<PortAttachment>> adjacency;
  std::map<PortId, std::set<ExternalTarget>> external_assignment;
  std::vector<std::string> annotations;
  std::optional<Provenance> provenance;

  bool operator==(const PortSchema& other) const;
};

// The port-free flavor: links attach directly to node slots.
struct BasicSchema {
  std::string name;
  KindUniverse universe;
  std::map<NodeId, SchemaElement> nodes;
  std::map<LinkId, LinkSlot> links;
  std::map<LinkId, std::set<NodeAttachment>> node_adjacency;
  std::vector<std::string> annotations;
  std::optional<Provenance> provenance;

  bool operator==(const BasicSchema& other) const;
};

using Schema = std::variant<PortSchema, BasicSchema>;

// Addresses of variable occurrences: an element slot, or a parameter of one.
struct OccurrenceRef {
  enum class Slot { Node, Port, Link };
  Slot slot = Slot::Node;
  std::string id;
  std::string param;  // empty for element occurrences

  auto operator<=>(const OccurrenceRef&) const = default;
};

std::string occurrence_str(const OccurrenceRef& o);

enum class VariableScope { Individual, Local, Global };
enum class DynamicType { System, Function, Process };

struct VariableInfo {
  RangeDescriptor range;
  std::vector<OccurrenceRef> occurrences;
  VariableScope scope = VariableScope::Individual;
  DynamicType dynamic_type = DynamicType::System;

  std::size_t multiplicity() const { return occurrences.size(); }
};

// Variables of a schema form a multiset: one name may occur in several
// slots. All occurrences of a name share one range.
struct VariableMultiset {
  std::map<std::string, VariableInfo> by_name;

  bool empty() const { return by_name.empty(); }
  std::size_t total_occurrences() const;
};

std::vector<Violation> validate_schema(const PortSchema& s);
std::vector<Violation> validate_schema(const BasicSchema& s);
std::vector<Violation> validate_schema(const Schema& s);

VariableMultiset variable_multiset(const PortSchema& s);
VariableMultiset variable_multiset(const BasicSchema& s);
VariableMultiset variable_multiset(const Schema& s);

// Drop the ports: each link's attachment options are lifted pointwise
// through the (possibly set-valued) internal port assignment.
BasicSchema derive_basic_schema(const PortSchema& s);

// The schema grid: vertices are the node slots, edges the link slots,
// attachments the lifted adjacency. Set-valued entries yield a variable
// multigraph.
VariableMultigraph schema_grid(const PortSchema& s);
VariableMultigraph schema_grid(const BasicSchema& s);
VariableMultigraph schema_grid(const Schema& s);

// The connection grid of a port schema: vertices are the internal port
// slots, edges the links with attachments as declared.
VariableMultigraph schema_connection_grid(const PortSchema& s);

// Vertex map internal port -> owning node, defined when the internal
// assignment is single-valued everywhere.
std::optional<GraphMorphism> schema_owner_morphism(const PortSchema& s);

struct SchemaClassification {
  std::set<Role> roles;  // one role per admissible resolution
  bool potentially_open = false;

  auto operator<=>(const SchemaClassification&) const = default;
};

SchemaClassification classify_schema(const PortSchema& s);
SchemaClassification classify_schema(const BasicSchema& s);
SchemaClassification classify_schema(const Schema& s);

std::set<PortId> free_ports(const PortSchema& s);

// Every schema value is deterministic when all assignment/adjacency entries
// are singletons; together with zero variables it is a grid automaton.
bool is_deterministic(const PortSchema& s);
bool is_deterministic(const BasicSchema& s);

// Zero-variable view: any grid automaton is a schema (and back again when
// the schema has no variables and is deterministic).
PortSchema as_port_schema(const GridAutomaton& ga);
BasicSchema as_basic_schema(const BasicGridAutomaton& ga);

// Embed a basic schema as a port schema where each node carries one
// inlet/outlet couple and every connection runs through it.
PortSchema embed_basic(const BasicSchema& s);

const std::string& schema_name(const Schema& s);

}  // namespace schemata

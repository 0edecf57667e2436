#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "schemata/errors.hpp"
#include "schemata/ids.hpp"
#include "schemata/kinds.hpp"
#include "schemata/multigraph.hpp"

namespace schemata {

enum class PortDirection { Inlet, Outlet };
enum class PortLocus { Internal, External };
enum class LinkClass { Information, Control, Process };
enum class ChannelKind { Simple, Filtering, Correcting };

const char* link_class_name(LinkClass c);

// A fully constant element: a kind plus resolved parameter values.
struct NodeConst {
  KindPath kind;
  std::map<std::string, ParamValue> params;

  auto operator<=>(const NodeConst&) const = default;
};

struct PortConst {
  PortDirection direction = PortDirection::Inlet;
  PortLocus locus = PortLocus::Internal;
  KindPath kind = generic_port_kind();
  std::map<std::string, ParamValue> params;

  auto operator<=>(const PortConst&) const = default;
};

struct LinkConst {
  LinkClass link_class = LinkClass::Information;
  ChannelKind channel = ChannelKind::Simple;
  KindPath kind;
  std::map<std::string, ParamValue> params;

  auto operator<=>(const LinkConst&) const = default;
};

// Target of an external port assignment: a node, an internal port, or a link.
struct ExternalTarget {
  enum class Kind { Node, Port, Link };
  Kind kind = Kind::Node;
  std::string id;

  static ExternalTarget node(const NodeId& n) { return {Kind::Node, n.value}; }
  static ExternalTarget port(const PortId& p) { return {Kind::Port, p.value}; }
  static ExternalTarget link(const LinkId& l) { return {Kind::Link, l.value}; }

  auto operator<=>(const ExternalTarget&) const = default;
};

// A constant (variable-free) grid automaton: typed nodes, directed ports
// split into internal and external ones, classed links attached to internal
// ports, plus the three assignment/adjacency mappings.
struct GridAutomaton {
  std::string name;
  KindUniverse universe;
  std::map<NodeId, NodeConst> nodes;
  std::map<PortId, PortConst> ports;
  std::map<LinkId, LinkConst> links;
  std::map<PortId, NodeId> internal_assignment;          // total on internal ports
  std::map<LinkId, PortAttachment> adjacency;            // total on links
  std::map<PortId, ExternalTarget> external_assignment;  // partial; absent = free

  auto operator<=>(const GridAutomaton&) const = default;
};

// The port-free first approximation: links attach directly to nodes.
struct BasicGridAutomaton {
  std::string name;
  KindUniverse universe;
  std::map<NodeId, NodeConst> nodes;
  std::map<LinkId, LinkConst> links;
  std::map<LinkId, NodeAttachment> node_adjacency;

  auto operator<=>(const BasicGridAutomaton&) const = default;
};

// Empty iff all structural invariants hold: assignments are total and hit
// existing elements, internal and external port sets are disjoint by
// construction, and every link attaches begin->outlet, end->inlet.
std::vector<Violation> validate_grid_automaton(const GridAutomaton& ga);
std::vector<Violation> validate_basic_grid_automaton(const BasicGridAutomaton& ga);

// The grid: same vertices (nodes) and edges (links); each link's port-level
// attachment is lifted through the internal port assignment.
GeneralizedMultigraph derive_grid(const GridAutomaton& ga);
GeneralizedMultigraph derive_grid(const BasicGridAutomaton& ga);

// The connection grid: vertices are the internal ports, edges are the links
// with their port-level attachments unchanged.
GeneralizedMultigraph derive_connection_grid(const GridAutomaton& ga);

// The vertex map sending each internal-port vertex of the connection grid to
// its owning node, paired with the identity on edges.
GraphMorphism owner_morphism(const GridAutomaton& ga);

enum class Role { Closed, Acceptor, Transmitter, Transducer };

const char* role_name(Role r);

struct AutomatonClassification {
  Role role = Role::Closed;
  bool potentially_open = false;

  auto operator<=>(const AutomatonClassification&) const = default;
};

// Role from external ports and open grid edges; potentially_open reports
// free ports (ports nothing is attached to).
AutomatonClassification classify_automaton(const GridAutomaton& ga);

// Ports that no link touches and, for external ports, that are unassigned.
std::set<PortId> free_ports(const GridAutomaton& ga);

// Drop the ports: node-link adjacency becomes the lifted grid attachment.
BasicGridAutomaton to_basic(const GridAutomaton& ga);

}  // namespace schemata

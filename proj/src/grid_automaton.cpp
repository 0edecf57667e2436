#include "schemata/grid_automaton.hpp"

#include <algorithm>

namespace schemata {

const char* link_class_name(LinkClass c) {
  switch (c) {
    case LinkClass::Information: return "info";
    case LinkClass::Control: return "control";
    case LinkClass::Process: return "process";
  }
  return "?";
}

const char* role_name(Role r) {
  switch (r) {
    case Role::Closed: return "closed";
    case Role::Acceptor: return "acceptor";
    case Role::Transmitter: return "transmitter";
    case Role::Transducer: return "transducer";
  }
  return "?";
}

namespace {

void require_valid(const GridAutomaton& ga) {
  auto violations = validate_grid_automaton(ga);
  if (!violations.empty())
    throw Error(Errc::InvalidAutomaton,
                "'" + ga.name + "': " + violations.front().rule + " on '" +
                    violations.front().element + "'");
}

}  // namespace

std::vector<Violation> validate_grid_automaton(const GridAutomaton& ga) {
  std::vector<Violation> out;

  for (const auto& [p, port] : ga.ports) {
    if (port.locus == PortLocus::Internal) {
      auto it = ga.internal_assignment.find(p);
      if (it == ga.internal_assignment.end())
        out.push_back({"DanglingPort", p.value, "internal port has no owning node"});
      else if (!ga.nodes.count(it->second))
        out.push_back({"UnknownNode", p.value,
                       "assigned to missing node '" + it->second.value + "'"});
      if (ga.external_assignment.count(p))
        out.push_back({"LocusViolation", p.value,
                       "internal port carries an external assignment"});
    } else {
      if (ga.internal_assignment.count(p))
        out.push_back({"LocusViolation", p.value,
                       "external port carries an internal assignment"});
      auto it = ga.external_assignment.find(p);
      if (it != ga.external_assignment.end()) {
        const ExternalTarget& t = it->second;
        bool ok = false;
        switch (t.kind) {
          case ExternalTarget::Kind::Node: ok = ga.nodes.count(NodeId{t.id}); break;
          case ExternalTarget::Kind::Port: {
            auto pit = ga.ports.find(PortId{t.id});
            ok = pit != ga.ports.end() && pit->second.locus == PortLocus::Internal;
            break;
          }
          case ExternalTarget::Kind::Link: ok = ga.links.count(LinkId{t.id}); break;
        }
        if (!ok)
          out.push_back({"UnknownTarget", p.value,
                         "external assignment references missing element '" + t.id + "'"});
      }
    }
  }

  for (const auto& [p, n] : ga.internal_assignment)
    if (!ga.ports.count(p))
      out.push_back({"UnknownPort", p.value, "assignment entry for undeclared port"});
  for (const auto& [p, t] : ga.external_assignment)
    if (!ga.ports.count(p))
      out.push_back({"UnknownPort", p.value, "external entry for undeclared port"});

  auto check_end = [&](const LinkId& l, const std::optional<PortId>& p,
                       PortDirection want, const char* side) {
    if (!p) return;
    auto it = ga.ports.find(*p);
    if (it == ga.ports.end()) {
      out.push_back({"UnknownPort", l.value,
                     std::string(side) + " references missing port '" + p->value + "'"});
      return;
    }
    if (it->second.locus != PortLocus::Internal)
      out.push_back({"ExternalPortInAdjacency", l.value,
                     std::string(side) + " attaches external port '" + p->value + "'"});
    if (it->second.direction != want)
      out.push_back({"DirectionViolation", l.value,
                     std::string(side) + " of link must attach " +
                         (want == PortDirection::Outlet ? "an outlet" : "an inlet")});
  };

  for (const auto& [l, link] : ga.links) {
    auto it = ga.adjacency.find(l);
    if (it == ga.adjacency.end()) {
      out.push_back({"MissingAdjacency", l.value, "link has no attachment"});
      continue;
    }
    check_end(l, it->second.begin, PortDirection::Outlet, "begin");
    check_end(l, it->second.end, PortDirection::Inlet, "end");
  }
  for (const auto& [l, att] : ga.adjacency)
    if (!ga.links.count(l))
      out.push_back({"UnknownLink", l.value, "adjacency entry for undeclared link"});

  return out;
}

std::vector<Violation> validate_basic_grid_automaton(const BasicGridAutomaton& ga) {
  std::vector<Violation> out;
  auto check = [&](const LinkId& l, const std::optional<NodeId>& n) {
    if (n && !ga.nodes.count(*n))
      out.push_back({"UnknownNode", l.value,
                     "attachment references missing node '" + n->value + "'"});
  };
  for (const auto& [l, link] : ga.links) {
    auto it = ga.node_adjacency.find(l);
    if (it == ga.node_adjacency.end()) {
      out.push_back({"MissingAdjacency", l.value, "link has no attachment"});
      continue;
    }
    check(l, it->second.begin);
    check(l, it->second.end);
  }
  for (const auto& [l, att] : ga.node_adjacency)
    if (!ga.links.count(l))
      out.push_back({"UnknownLink", l.value, "adjacency entry for undeclared link"});
  return out;
}

GeneralizedMultigraph derive_grid(const GridAutomaton& ga) {
  require_valid(ga);
  GeneralizedMultigraph g;
  for (const auto& [n, node] : ga.nodes) g.vertices.insert(vertex_of(n));
  for (const auto& [l, att] : ga.adjacency) {
    auto owner = [&](const PortId& p) {
      return vertex_of(ga.internal_assignment.at(p));
    };
    switch (att.kind) {
      case AttachmentCase::Closed:
        g.edges.emplace(edge_of(l), Attachment::closed(owner(*att.begin), owner(*att.end)));
        break;
      case AttachmentCase::BeginOnly:
        g.edges.emplace(edge_of(l), Attachment::begin_only(owner(*att.begin)));
        break;
      case AttachmentCase::EndOnly:
        g.edges.emplace(edge_of(l), Attachment::end_only(owner(*att.end)));
        break;
    }
  }
  return g;
}

GeneralizedMultigraph derive_grid(const BasicGridAutomaton& ga) {
  GeneralizedMultigraph g;
  for (const auto& [n, node] : ga.nodes) g.vertices.insert(vertex_of(n));
  for (const auto& [l, att] : ga.node_adjacency) {
    Attachment lifted;
    lifted.kind = att.kind;
    if (att.begin) lifted.begin = vertex_of(*att.begin);
    if (att.end) lifted.end = vertex_of(*att.end);
    g.edges.emplace(edge_of(l), lifted);
  }
  return g;
}

GeneralizedMultigraph derive_connection_grid(const GridAutomaton& ga) {
  require_valid(ga);
  GeneralizedMultigraph g;
  for (const auto& [p, port] : ga.ports)
    if (port.locus == PortLocus::Internal) g.vertices.insert(vertex_of(p));
  for (const auto& [l, att] : ga.adjacency) {
    Attachment a;
    a.kind = att.kind;
    if (att.begin) a.begin = vertex_of(*att.begin);
    if (att.end) a.end = vertex_of(*att.end);
    g.edges.emplace(edge_of(l), a);
  }
  return g;
}

GraphMorphism owner_morphism(const GridAutomaton& ga) {
  GraphMorphism m;
  for (const auto& [p, n] : ga.internal_assignment)
    m.vertex_map[vertex_of(p)] = vertex_of(n);
  for (const auto& [l, att] : ga.adjacency) m.edge_map[edge_of(l)] = edge_of(l);
  return m;
}

std::set<PortId> free_ports(const GridAutomaton& ga) {
  std::set<PortId> touched;
  for (const auto& [l, att] : ga.adjacency) {
    if (att.begin) touched.insert(*att.begin);
    if (att.end) touched.insert(*att.end);
  }
  std::set<PortId> out;
  for (const auto& [p, port] : ga.ports) {
    if (touched.count(p)) continue;
    if (port.locus == PortLocus::External && ga.external_assignment.count(p)) continue;
    out.insert(p);
  }
  return out;
}

AutomatonClassification classify_automaton(const GridAutomaton& ga) {
  require_valid(ga);
  GeneralizedMultigraph grid = derive_grid(ga);
  OpenEdges open = open_edges(grid);

  bool ext_in = false, ext_out = false;
  for (const auto& [p, port] : ga.ports)
    if (port.locus == PortLocus::External) {
      if (port.direction == PortDirection::Inlet) ext_in = true;
      else ext_out = true;
    }

  bool in = ext_in || !open.end_open.empty();
  bool out = ext_out || !open.begin_open.empty();

  AutomatonClassification c;
  if (in && out) c.role = Role::Transducer;
  else if (in) c.role = Role::Acceptor;
  else if (out) c.role = Role::Transmitter;
  else c.role = Role::Closed;
  c.potentially_open = !free_ports(ga).empty();
  return c;
}

BasicGridAutomaton to_basic(const GridAutomaton& ga) {
  require_valid(ga);
  BasicGridAutomaton b;
  b.name = ga.name;
  b.universe = ga.universe;
  b.nodes = ga.nodes;
  b.links = ga.links;
  for (const auto& [l, att] : ga.adjacency) {
    NodeAttachment a;
    a.kind = att.kind;
    if (att.begin) a.begin = ga.internal_assignment.at(*att.begin);
    if (att.end) a.end = ga.internal_assignment.at(*att.end);
    b.node_adjacency.emplace(l, a);
  }
  return b;
}

}  // namespace schemata

#include "doctest.h"

#include "fixtures.hpp"
#include "generators.hpp"
#include "schemata/grid_automaton.hpp"

using namespace schemata;
using namespace schemata::fixtures;

namespace {

// Two nodes joined by one closed information link, with an optional loose
// end to play with.
GridAutomaton two_node_automaton() {
  GridAutomaton ga;
  ga.name = "pair";
  ga.universe = fixture_universe();
  const KindPath fa{{"automaton", "finite_automaton"}};
  ga.nodes.emplace(NodeId{"n1"}, NodeConst{fa, {}});
  ga.nodes.emplace(NodeId{"n2"}, NodeConst{fa, {}});
  ga.ports.emplace(PortId{"o1"},
                   PortConst{PortDirection::Outlet, PortLocus::Internal, generic_port_kind(), {}});
  ga.ports.emplace(PortId{"i2"},
                   PortConst{PortDirection::Inlet, PortLocus::Internal, generic_port_kind(), {}});
  ga.internal_assignment = {{PortId{"o1"}, NodeId{"n1"}}, {PortId{"i2"}, NodeId{"n2"}}};
  ga.links.emplace(LinkId{"l1"}, LinkConst{LinkClass::Information, ChannelKind::Simple,
                                           generic_link_kind(0), {}});
  ga.adjacency = {{LinkId{"l1"}, PortAttachment::closed(PortId{"o1"}, PortId{"i2"})}};
  return ga;
}

}  // namespace

TEST_CASE("validation: clean automaton, direction and dangling violations") {
  GridAutomaton ga = two_node_automaton();
  CHECK(validate_grid_automaton(ga).empty());

  SUBCASE("link ending at an outlet") {
    ga.ports.emplace(PortId{"o2"}, PortConst{PortDirection::Outlet, PortLocus::Internal,
                                             generic_port_kind(), {}});
    ga.internal_assignment[PortId{"o2"}] = NodeId{"n2"};
    ga.adjacency[LinkId{"l1"}] = PortAttachment::closed(PortId{"o1"}, PortId{"o2"});
    auto violations = validate_grid_automaton(ga);
    REQUIRE_FALSE(violations.empty());
    CHECK(violations.front().rule == "DirectionViolation");
    CHECK(violations.front().element == "l1");
  }

  SUBCASE("internal port without an owner") {
    ga.ports.emplace(PortId{"stray"}, PortConst{PortDirection::Inlet, PortLocus::Internal,
                                                generic_port_kind(), {}});
    auto violations = validate_grid_automaton(ga);
    REQUIRE_FALSE(violations.empty());
    CHECK(violations.front().rule == "DanglingPort");
    CHECK(violations.front().element == "stray");
  }
}

TEST_CASE("grid derivation lifts attachments through port owners") {
  GridAutomaton ga = two_node_automaton();
  GeneralizedMultigraph grid = derive_grid(ga);
  CHECK(grid.vertices == std::set<VertexId>{VertexId{"n1"}, VertexId{"n2"}});
  CHECK(grid.edges.at(EdgeId{"l1"}) ==
        Attachment::closed(VertexId{"n1"}, VertexId{"n2"}));

  SUBCASE("open link lifts to an open grid edge on the owner") {
    ga.links.emplace(LinkId{"l2"}, LinkConst{LinkClass::Information, ChannelKind::Simple,
                                             generic_link_kind(0), {}});
    ga.ports.emplace(PortId{"i1"}, PortConst{PortDirection::Inlet, PortLocus::Internal,
                                             generic_port_kind(), {}});
    ga.internal_assignment[PortId{"i1"}] = NodeId{"n1"};
    ga.adjacency[LinkId{"l2"}] = PortAttachment::end_only(PortId{"i1"});
    GeneralizedMultigraph open_grid = derive_grid(ga);
    CHECK(open_grid.edges.at(EdgeId{"l2"}) == Attachment::end_only(VertexId{"n1"}));
  }
}

TEST_CASE("the reference automaton has the advertised census") {
  GridAutomaton ga = reference_automaton();
  CHECK(validate_grid_automaton(ga).empty());
  GeneralizedMultigraph grid = derive_grid(ga);
  CHECK(grid.vertices.size() == 19);
  CHECK(ga.nodes.size() == 19);

  std::map<std::string, int> census;
  for (const auto& [n, node] : ga.nodes) ++census[node.kind.str()];
  CHECK(census["automaton/turing_machine"] == 2);
  CHECK(census["automaton/neural_network"] == 1);
  CHECK(census["automaton/ram"] == 2);
  CHECK(census["automaton/finite_automaton"] == 5);
  CHECK(census["automaton/cellular_automaton"] == 1);
  CHECK(census["device/modem"] == 6);
  CHECK(census["device/server"] == 1);
  CHECK(census["automaton/grid_automaton"] == 1);
}

TEST_CASE("connection grid: port vertices, owner map is a checked morphism") {
  GridAutomaton ga = two_node_automaton();
  GeneralizedMultigraph cg = derive_connection_grid(ga);
  CHECK(cg.vertices.size() == 2);
  CHECK(cg.edges.size() == 1);

  GeneralizedMultigraph grid = derive_grid(ga);
  CHECK(check_graph_morphism(cg, grid, owner_morphism(ga)));

  GridAutomaton no_ports;
  no_ports.name = "portless";
  no_ports.universe = fixture_universe();
  no_ports.nodes.emplace(NodeId{"n"}, NodeConst{KindPath{{"automaton", "ram"}}, {}});
  CHECK(derive_connection_grid(no_ports).vertices.empty());
}

TEST_CASE("owner map morphism holds across the reference automaton") {
  GridAutomaton ga = reference_automaton();
  GraphMorphism owner = owner_morphism(ga);
  CHECK(check_graph_morphism(derive_connection_grid(ga), derive_grid(ga), owner));
  // Edge-bijective: edge ids coincide one-for-one.
  std::set<EdgeId> images;
  for (const auto& [a, b] : owner.edge_map) images.insert(b);
  CHECK(images.size() == derive_grid(ga).edges.size());
}

TEST_CASE("classification: closed, acceptor, transducer, potential openness") {
  GridAutomaton ga = two_node_automaton();
  AutomatonClassification c = classify_automaton(ga);
  CHECK(c.role == Role::Closed);
  CHECK_FALSE(c.potentially_open);

  SUBCASE("end-open link makes an acceptor") {
    ga.ports.emplace(PortId{"i1"}, PortConst{PortDirection::Inlet, PortLocus::Internal,
                                             generic_port_kind(), {}});
    ga.internal_assignment[PortId{"i1"}] = NodeId{"n1"};
    ga.links.emplace(LinkId{"in"}, LinkConst{LinkClass::Information, ChannelKind::Simple,
                                             generic_link_kind(0), {}});
    ga.adjacency[LinkId{"in"}] = PortAttachment::end_only(PortId{"i1"});
    CHECK(classify_automaton(ga).role == Role::Acceptor);

    SUBCASE("plus a begin-open link makes a transducer") {
      ga.ports.emplace(PortId{"o2"}, PortConst{PortDirection::Outlet, PortLocus::Internal,
                                               generic_port_kind(), {}});
      ga.internal_assignment[PortId{"o2"}] = NodeId{"n2"};
      ga.links.emplace(LinkId{"out"}, LinkConst{LinkClass::Information, ChannelKind::Simple,
                                                generic_link_kind(0), {}});
      ga.adjacency[LinkId{"out"}] = PortAttachment::begin_only(PortId{"o2"});
      CHECK(classify_automaton(ga).role == Role::Transducer);
    }
  }

  SUBCASE("a free port keeps the role but flags potential openness") {
    ga.ports.emplace(PortId{"spare"}, PortConst{PortDirection::Inlet, PortLocus::Internal,
                                                generic_port_kind(), {}});
    ga.internal_assignment[PortId{"spare"}] = NodeId{"n1"};
    AutomatonClassification open_c = classify_automaton(ga);
    CHECK(open_c.role == Role::Closed);
    CHECK(open_c.potentially_open);
  }

  SUBCASE("external inlet alone makes an acceptor") {
    ga.ports.emplace(PortId{"ext"}, PortConst{PortDirection::Inlet, PortLocus::External,
                                              generic_port_kind(), {}});
    ga.external_assignment[PortId{"ext"}] = ExternalTarget::node(NodeId{"n1"});
    CHECK(classify_automaton(ga).role == Role::Acceptor);
  }
}

TEST_CASE("closed iff no external ports and conventional grid") {
  testgen::Rng rng(707);
  testgen::GenOptions options;
  for (int trial = 0; trial < 150; ++trial) {
    GridAutomaton ga = testgen::random_grid_automaton(rng, options, trial);
    bool closed = classify_automaton(ga).role == Role::Closed;
    bool no_external = true;
    for (const auto& [p, port] : ga.ports)
      if (port.locus == PortLocus::External) no_external = false;
    CHECK(closed == (no_external && is_conventional(derive_grid(ga))));
  }
}

TEST_CASE("basic reduction keeps nodes and links and the same grid") {
  GridAutomaton ga = two_node_automaton();
  BasicGridAutomaton basic = to_basic(ga);
  CHECK(validate_basic_grid_automaton(basic).empty());
  CHECK(basic.node_adjacency.at(LinkId{"l1"}) ==
        NodeAttachment::closed(NodeId{"n1"}, NodeId{"n2"}));
  CHECK(derive_grid(basic) == derive_grid(ga));

  BasicGridAutomaton reference_basic = to_basic(reference_automaton());
  CHECK(derive_grid(reference_basic) == derive_grid(reference_automaton()));
  CHECK(reference_basic.nodes.size() == 19);
}

TEST_CASE("grid and connection grid share their edge sets") {
  GridAutomaton ga = reference_automaton();
  GeneralizedMultigraph grid = derive_grid(ga);
  GeneralizedMultigraph cg = derive_connection_grid(ga);
  std::set<EdgeId> grid_edges, cg_edges;
  for (const auto& [e, att] : grid.edges) grid_edges.insert(e);
  for (const auto& [e, att] : cg.edges) cg_edges.insert(e);
  CHECK(grid_edges == cg_edges);
}

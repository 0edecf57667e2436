#include "fixtures.hpp"

namespace schemata::fixtures {

namespace {

const KindPath kTuring{{"automaton", "turing_machine"}};
const KindPath kRam{{"automaton", "ram"}};
const KindPath kFinite{{"automaton", "finite_automaton"}};
const KindPath kCellular{{"automaton", "cellular_automaton"}};
const KindPath kNeural{{"automaton", "neural_network"}};
const KindPath kGrid{{"automaton", "grid_automaton"}};
const KindPath kModem{{"device", "modem"}};
const KindPath kServer{{"device", "server"}};
const KindPath kNeuron{{"neuron"}};

struct WiringBuilder {
  PortSchema schema;

  void node(const std::string& id, SchemaElement element) {
    schema.nodes.emplace(NodeId{id}, std::move(element));
  }

  // A closed link from one node to another; ports are created on demand.
  void link(const std::string& id, const std::string& from, const std::string& to,
            LinkClass link_class) {
    PortId outlet{from + "_o_" + id};
    PortId inlet{to + "_i_" + id};
    schema.ports.emplace(outlet, PortSlot{PortDirection::Outlet, PortLocus::Internal,
                                          SchemaElement::constant(generic_port_kind())});
    schema.ports.emplace(inlet, PortSlot{PortDirection::Inlet, PortLocus::Internal,
                                         SchemaElement::constant(generic_port_kind())});
    schema.internal_assignment[outlet] = {NodeId{from}};
    schema.internal_assignment[inlet] = {NodeId{to}};
    schema.links.emplace(
        LinkId{id}, LinkSlot{link_class, ChannelKind::Simple,
                             SchemaElement::constant(
                                 generic_link_kind(static_cast<int>(link_class)))});
    schema.adjacency[LinkId{id}] = {PortAttachment::closed(outlet, inlet)};
  }
};

// The shared wiring of the reference automaton and its schema; only the node
// elements differ between the two.
WiringBuilder reference_wiring() {
  WiringBuilder b;
  b.schema.universe = fixture_universe();

  b.link("l01", "tm1", "m1", LinkClass::Information);
  b.link("l02", "m1", "srv", LinkClass::Information);
  b.link("l03", "tm2", "m2", LinkClass::Information);
  b.link("l04", "m2", "srv", LinkClass::Information);
  b.link("l05", "ram1", "m3", LinkClass::Information);
  b.link("l06", "m3", "srv", LinkClass::Information);
  b.link("l07", "nn1", "m4", LinkClass::Information);
  b.link("l08", "m4", "srv", LinkClass::Information);
  b.link("l09", "srv", "m5", LinkClass::Information);
  b.link("l10", "m5", "ca1", LinkClass::Information);
  b.link("l11", "srv", "m6", LinkClass::Information);
  b.link("l12", "m6", "grid1", LinkClass::Information);
  b.link("l13", "fa1", "fa2", LinkClass::Information);
  b.link("l14", "fa2", "fa3", LinkClass::Information);
  b.link("l15", "fa3", "ram2", LinkClass::Information);
  b.link("l16", "grid1", "fa1", LinkClass::Control);
  b.link("l17", "fa4", "fa5", LinkClass::Information);
  b.link("l18", "srv", "fa4", LinkClass::Control);
  b.link("l19", "fa5", "tm1", LinkClass::Control);
  return b;
}

SchemaElement var_of(const std::string& name, const KindPath& kind) {
  return SchemaElement::variable(name, RangeDescriptor::kind_set(Sort::Node, {kind}));
}

}  // namespace

KindUniverse fixture_universe() {
  KindUniverse u;
  for (const auto& k :
       {kTuring, kRam, kFinite, kCellular, kNeural, kGrid, kModem, kServer, kNeuron})
    u.register_kind(Sort::Node, k);
  return u;
}

GridAutomaton reference_automaton() {
  WiringBuilder b = reference_wiring();
  b.node("tm1", SchemaElement::constant(kTuring));
  b.node("tm2", SchemaElement::constant(kTuring));
  b.node("nn1", SchemaElement::constant(kNeural));
  b.node("ram1", SchemaElement::constant(kRam));
  b.node("ram2", SchemaElement::constant(kRam));
  b.node("fa1", SchemaElement::constant(kFinite));
  b.node("fa2", SchemaElement::constant(kFinite));
  b.node("fa3", SchemaElement::constant(kFinite));
  b.node("fa4", SchemaElement::constant(kFinite));
  b.node("fa5", SchemaElement::constant(kFinite));
  b.node("ca1", SchemaElement::constant(kCellular));
  b.node("m1", SchemaElement::constant(kModem));
  b.node("m2", SchemaElement::constant(kModem));
  b.node("m3", SchemaElement::constant(kModem));
  b.node("m4", SchemaElement::constant(kModem));
  b.node("m5", SchemaElement::constant(kModem));
  b.node("m6", SchemaElement::constant(kModem));
  b.node("srv", SchemaElement::constant(kServer));
  b.node("grid1", SchemaElement::constant(kGrid));
  b.schema.name = "reference";
  return realize(b.schema, {});
}

PortSchema reference_schema() {
  WiringBuilder b = reference_wiring();
  b.node("tm1", var_of("T", kTuring));
  b.node("tm2", var_of("T", kTuring));
  b.node("nn1", var_of("N", kNeural));
  b.node("ram1", var_of("R", kRam));
  b.node("ram2", var_of("R", kRam));
  b.node("fa1", var_of("A", kFinite));
  b.node("fa2", var_of("A", kFinite));
  b.node("fa3", var_of("A", kFinite));
  b.node("fa4", var_of("A", kFinite));
  b.node("fa5", var_of("A", kFinite));
  b.node("ca1", var_of("C", kCellular));
  b.node("m1", var_of("m", kModem));
  b.node("m2", var_of("m", kModem));
  b.node("m3", var_of("m", kModem));
  b.node("m4", var_of("m", kModem));
  b.node("m5", var_of("m", kModem));
  b.node("m6", var_of("m", kModem));
  b.node("srv", var_of("S", kServer));
  b.node("grid1", var_of("G", kGrid));
  b.schema.name = "reference";
  return b.schema;
}

Binding reference_binding() {
  Binding b;
  b.by_name.emplace("T", BoundConstant{kTuring, {}});
  b.by_name.emplace("R", BoundConstant{kRam, {}});
  b.by_name.emplace("A", BoundConstant{kFinite, {}});
  b.by_name.emplace("m", BoundConstant{kModem, {}});
  b.by_name.emplace("N", BoundConstant{kNeural, {}});
  b.by_name.emplace("S", BoundConstant{kServer, {}});
  b.by_name.emplace("C", BoundConstant{kCellular, {}});
  b.by_name.emplace("G", BoundConstant{kGrid, {}});
  return b;
}

namespace {

KindUniverse control_universe() {
  KindUniverse u;
  for (const char* tag : {"visual_location", "size_recognition", "orientation_recognition",
                          "fast_phase_movement", "hand_preshape", "hand_rotation",
                          "slow_phase_movement", "actual_grasp"})
    u.register_kind(Sort::Node, KindPath{{"algorithm", tag}});
  u.register_kind(Sort::Node, kTuring);
  u.register_kind(Sort::Node, kNeural);
  u.register_kind(Sort::Node, kFinite);
  return u;
}

void basic_link(BasicSchema& s, const std::string& id, const std::string& from,
                const std::string& to, LinkClass link_class) {
  s.links.emplace(LinkId{id},
                  LinkSlot{link_class, ChannelKind::Simple,
                           SchemaElement::constant(
                               generic_link_kind(static_cast<int>(link_class)))});
  s.node_adjacency[LinkId{id}] = {NodeAttachment::closed(NodeId{from}, NodeId{to})};
}

SchemaElement function_var(const std::string& name, const char* tag) {
  return SchemaElement::variable(
      name, RangeDescriptor::kind_set(Sort::Node, {KindPath{{"algorithm", tag}}}));
}

}  // namespace

BasicSchema control_program_schema() {
  BasicSchema s;
  s.name = "control_program";
  s.universe = control_universe();
  s.nodes.emplace(NodeId{"x1"}, function_var("X1", "visual_location"));
  s.nodes.emplace(NodeId{"x2"}, function_var("X2", "size_recognition"));
  s.nodes.emplace(NodeId{"x3"}, function_var("X3", "orientation_recognition"));
  s.nodes.emplace(NodeId{"x4"}, function_var("X4", "fast_phase_movement"));
  s.nodes.emplace(NodeId{"x5"}, function_var("X5", "hand_preshape"));
  s.nodes.emplace(NodeId{"x6"}, function_var("X6", "hand_rotation"));
  s.nodes.emplace(NodeId{"x7"}, function_var("X7", "slow_phase_movement"));
  s.nodes.emplace(NodeId{"x8"}, function_var("X8", "actual_grasp"));
  basic_link(s, "l1", "x1", "x2", LinkClass::Information);
  basic_link(s, "l2", "x1", "x3", LinkClass::Information);
  basic_link(s, "l3", "x1", "x4", LinkClass::Information);
  basic_link(s, "l4", "x1", "x4", LinkClass::Control);
  basic_link(s, "l5", "x2", "x5", LinkClass::Information);
  basic_link(s, "l6", "x3", "x6", LinkClass::Information);
  basic_link(s, "l7", "x4", "x7", LinkClass::Control);
  basic_link(s, "l8", "x5", "x8", LinkClass::Information);
  basic_link(s, "l9", "x6", "x8", LinkClass::Information);
  basic_link(s, "l10", "x7", "x8", LinkClass::Control);
  return s;
}

BasicSchema grasp_subschema() {
  BasicSchema s;
  s.name = "grasp_fragment";
  s.universe = control_universe();
  s.nodes.emplace(NodeId{"x4"}, function_var("X4", "fast_phase_movement"));
  s.nodes.emplace(NodeId{"x5"}, function_var("X5", "hand_preshape"));
  s.nodes.emplace(NodeId{"x6"}, function_var("X6", "hand_rotation"));
  s.nodes.emplace(NodeId{"x7"}, function_var("X7", "slow_phase_movement"));
  s.nodes.emplace(NodeId{"x8"}, function_var("X8", "actual_grasp"));
  basic_link(s, "l7", "x4", "x7", LinkClass::Control);
  basic_link(s, "l8", "x5", "x8", LinkClass::Information);
  basic_link(s, "l9", "x6", "x8", LinkClass::Information);
  basic_link(s, "l10", "x7", "x8", LinkClass::Control);
  return s;
}

BasicSchema lookalike_subschema() {
  BasicSchema s;
  s.name = "lookalike_fragment";
  s.universe = control_universe();
  s.nodes.emplace(NodeId{"x4"}, SchemaElement::constant(kTuring));
  s.nodes.emplace(NodeId{"x5"}, SchemaElement::constant(kNeural));
  s.nodes.emplace(NodeId{"x6"}, SchemaElement::constant(kTuring));
  s.nodes.emplace(
      NodeId{"x7"},
      SchemaElement::variable("FA", RangeDescriptor::kind_set(Sort::Node, {kFinite})));
  s.nodes.emplace(
      NodeId{"x8"},
      SchemaElement::variable("FA_1", RangeDescriptor::kind_set(Sort::Node, {kFinite})));
  basic_link(s, "l7", "x4", "x7", LinkClass::Control);
  basic_link(s, "l8", "x5", "x8", LinkClass::Information);
  basic_link(s, "l9", "x6", "x8", LinkClass::Information);
  basic_link(s, "l10", "x7", "x8", LinkClass::Control);
  return s;
}

GateFixture gate_fixture() {
  GridAutomaton ga;
  ga.name = "gate_reduction";
  ga.universe = fixture_universe();
  ga.nodes.emplace(NodeId{"g"}, NodeConst{kFinite, {}});
  ga.nodes.emplace(NodeId{"m"}, NodeConst{kTuring, {}});
  ga.nodes.emplace(NodeId{"t"}, NodeConst{kTuring, {}});

  auto port = [&](const std::string& id, PortDirection dir) {
    ga.ports.emplace(PortId{id}, PortConst{dir, PortLocus::Internal, generic_port_kind(), {}});
  };
  port("t_in", PortDirection::Inlet);
  port("t_out", PortDirection::Outlet);
  port("m_out", PortDirection::Outlet);
  port("g_in_outside", PortDirection::Inlet);
  port("g_in_t", PortDirection::Inlet);
  port("g_in_m", PortDirection::Inlet);
  port("g_out", PortDirection::Outlet);
  ga.internal_assignment = {
      {PortId{"t_in"}, NodeId{"t"}},        {PortId{"t_out"}, NodeId{"t"}},
      {PortId{"m_out"}, NodeId{"m"}},       {PortId{"g_in_outside"}, NodeId{"g"}},
      {PortId{"g_in_t"}, NodeId{"g"}},      {PortId{"g_in_m"}, NodeId{"g"}},
      {PortId{"g_out"}, NodeId{"g"}},
  };

  auto info_link = [&](const std::string& id, PortAttachment att) {
    ga.links.emplace(LinkId{id}, LinkConst{LinkClass::Information, ChannelKind::Simple,
                                           generic_link_kind(0), {}});
    ga.adjacency.emplace(LinkId{id}, att);
  };
  info_link("l_in", PortAttachment::end_only(PortId{"t_in"}));
  info_link("l_gin", PortAttachment::end_only(PortId{"g_in_outside"}));
  info_link("l_open", PortAttachment::closed(PortId{"t_out"}, PortId{"g_in_t"}));
  info_link("l_data", PortAttachment::closed(PortId{"m_out"}, PortId{"g_in_m"}));
  info_link("l_out", PortAttachment::begin_only(PortId{"g_out"}));

  GateFixture out;
  out.automaton = std::move(ga);
  out.behaviors = {
      {NodeId{"t"}, BufferSpec{}},
      {NodeId{"m"}, BufferSpec{{"10"}}},
      {NodeId{"g"}, GateSpec{false, LinkId{"l_open"}}},
  };
  out.t_input = "l_in";
  out.g_input = "l_gin";
  out.output = "l_out";
  return out;
}

ThresholdFixture threshold_fixture(int threshold, int window) {
  GridAutomaton ga;
  ga.name = "threshold_unit";
  ga.universe = fixture_universe();
  ga.nodes.emplace(NodeId{"u"}, NodeConst{kNeuron, {}});
  ga.ports.emplace(PortId{"u_in"},
                   PortConst{PortDirection::Inlet, PortLocus::Internal, generic_port_kind(), {}});
  ga.ports.emplace(PortId{"u_out"},
                   PortConst{PortDirection::Outlet, PortLocus::Internal, generic_port_kind(), {}});
  ga.internal_assignment = {{PortId{"u_in"}, NodeId{"u"}}, {PortId{"u_out"}, NodeId{"u"}}};
  ga.links.emplace(LinkId{"dendrite"}, LinkConst{LinkClass::Control, ChannelKind::Simple,
                                                 generic_link_kind(1), {}});
  ga.links.emplace(LinkId{"axon"}, LinkConst{LinkClass::Control, ChannelKind::Simple,
                                             generic_link_kind(1), {}});
  ga.adjacency = {{LinkId{"dendrite"}, PortAttachment::end_only(PortId{"u_in"})},
                  {LinkId{"axon"}, PortAttachment::begin_only(PortId{"u_out"})}};

  ThresholdFixture out;
  out.automaton = std::move(ga);
  out.behaviors = {{NodeId{"u"}, ThresholdSpec{threshold, window, 1}}};
  out.input = "dendrite";
  out.output = "axon";
  return out;
}

FiniteAutomatonSpec toggle_transducer() {
  FiniteAutomatonSpec fa;
  fa.states = {"s0", "s1"};
  fa.alphabet = {'0', '1'};
  fa.initial = "s0";
  fa.finals = {"s0"};
  fa.transitions[{"s0", '0'}] = {"s1", '1'};
  fa.transitions[{"s0", '1'}] = {"s0", '0'};
  fa.transitions[{"s1", '0'}] = {"s0", '0'};
  fa.transitions[{"s1", '1'}] = {"s1", '1'};
  return fa;
}

FiniteAutomatonSpec parity_transducer() {
  FiniteAutomatonSpec fa;
  fa.states = {"even", "odd"};
  fa.alphabet = {'0', '1'};
  fa.initial = "even";
  fa.finals = {"even"};
  fa.transitions[{"even", '0'}] = {"even", '0'};
  fa.transitions[{"even", '1'}] = {"odd", '1'};
  fa.transitions[{"odd", '0'}] = {"odd", '1'};
  fa.transitions[{"odd", '1'}] = {"even", '0'};
  return fa;
}

}  // namespace schemata::fixtures

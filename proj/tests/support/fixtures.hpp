#pragma once

#include "schemata/engine.hpp"
#include "schemata/schema.hpp"
#include "schemata/transform.hpp"

namespace schemata::fixtures {

// The 19-node reference automaton: two Turing machines, one neural network,
// two RAMs, five finite automata, one cellular automaton, six modems, one
// server and one nested grid automaton, wired into a closed network.
GridAutomaton reference_automaton();

// Its all-variable abstraction: every node becomes a named variable ranging
// over its machine class (T twice, R twice, A five times, m six times, N, S,
// C, G once each).
PortSchema reference_schema();

// The binding that concretizes reference_schema back to reference_automaton.
Binding reference_binding();

// Coordinated-control-program schema: eight function variables joined by
// data (info) and activation (control) links; closed.
BasicSchema control_program_schema();

// The grasp fragment: a genuine subschema of control_program_schema.
BasicSchema grasp_subschema();

// Same shape as the grasp fragment but different elements: a structural
// subschema of control_program_schema that is not a subschema.
BasicSchema lookalike_subschema();

// Gate fixture: a relay t, a preloaded source m and a gate g that forwards
// m's word only after t's signal arrives. Two end-open inputs (to t and g),
// one begin-open output.
struct GateFixture {
  GridAutomaton automaton;
  std::map<NodeId, NodeBehavior> behaviors;
  std::string t_input;     // end-open link into t
  std::string g_input;     // end-open link into g
  std::string output;      // begin-open link out of g
};

GateFixture gate_fixture();

// A threshold unit with an end-open control input and a begin-open output.
struct ThresholdFixture {
  GridAutomaton automaton;
  std::map<NodeId, NodeBehavior> behaviors;
  std::string input;
  std::string output;
};

ThresholdFixture threshold_fixture(int threshold, int window);

// Two small Mealy transducers over {0,1} with distinct structure, used for
// sequential composition.
FiniteAutomatonSpec toggle_transducer();  // f
FiniteAutomatonSpec parity_transducer();  // g

// The universe shared by the reference fixtures.
KindUniverse fixture_universe();

}  // namespace schemata::fixtures

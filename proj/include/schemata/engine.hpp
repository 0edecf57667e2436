#pragma once

#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "schemata/grid_automaton.hpp"

namespace schemata {

// Mealy-style finite automaton: each consumed symbol moves the state and may
// emit an output symbol. A word-end marker completes the cycle, resets the
// state and hands control downstream.
struct FiniteAutomatonSpec {
  std::set<std::string> states;
  std::set<char> alphabet;
  // (state, symbol) -> (next state, optional output symbol); total on
  // states x alphabet.
  std::map<std::pair<std::string, char>, std::pair<std::string, std::optional<char>>>
      transitions;
  std::string initial;
  std::set<std::string> finals;
  bool await_control = false;  // initiation condition: producer finished
};

// Fires once the signal amplitude within the window reaches the threshold.
struct ThresholdSpec {
  int threshold = 1;
  int window = 1;
  int unit_amplitude = 1;
};

// Closed until its opening input arrives; buffers data meanwhile and then
// forwards one payload per cycle.
struct GateSpec {
  bool initially_open = false;
  std::optional<LinkId> opening_link;  // unset: any signal opens
};

// FIFO relay, one payload per cycle; may start preloaded.
struct BufferSpec {
  std::vector<std::string> initial_words;
};

// Absorbs everything.
struct StubSpec {};

using NodeBehavior =
    std::variant<FiniteAutomatonSpec, ThresholdSpec, GateSpec, BufferSpec, StubSpec>;

struct TraceEvent {
  std::size_t cycle = 0;
  std::string node;
  std::string event;
  std::string detail;

  auto operator<=>(const TraceEvent&) const = default;
};

struct OutputRecord {
  std::size_t cycle = 0;
  std::string address;  // open link or external port the payload left through
  std::string kind;     // "symbol", "word_end", "signal"
  std::string payload;

  auto operator<=>(const OutputRecord&) const = default;
};

struct ExternalInput {
  std::size_t cycle = 0;
  std::string address;  // end-open link id or external inlet port id
  std::string word;     // data input: fed symbol by symbol, then word end
  bool is_signal = false;
  int amplitude = 1;
};

// One running realization. Deterministic: deliveries are ordered by
// (cycle, source, sequence) and nodes act in id order within a cycle.
class Instance {
 public:
  Instance(GridAutomaton automaton, std::map<NodeId, NodeBehavior> behaviors);

  const GridAutomaton& automaton() const { return automaton_; }
  std::size_t clock() const { return clock_; }
  const std::vector<TraceEvent>& trace() const { return trace_; }
  const std::vector<OutputRecord>& outputs() const { return outputs_; }

  void schedule_input(const ExternalInput& input);

  // One cycle: deliver what is due, then every enabled node performs one
  // elementary operation; emissions land next cycle. Returns the events of
  // this cycle.
  std::vector<TraceEvent> step();

  // No pending deliveries and no enabled node.
  bool quiescent() const;

 private:
  struct Token {
    bool word_end = false;
    char symbol = 0;
  };

  struct NodeState {
    std::string fa_state;
    bool control_pending = false;
    bool gate_open = false;
    std::deque<Token> data;
    std::deque<std::pair<std::string, int>> signals;  // relay queue (tag, amplitude)
    std::vector<std::pair<std::size_t, int>> signal_history;  // (cycle, amplitude)
  };

  struct Delivery {
    std::size_t cycle;
    std::string source;  // link id or external address
    std::size_t seq;
    NodeId target;
    bool is_signal;
    bool word_end;
    char symbol;
    std::string signal_tag;
    int amplitude;

    bool operator<(const Delivery& other) const {
      return std::tie(cycle, source, seq) < std::tie(other.cycle, other.source, other.seq);
    }
  };

  void deliver_due();
  bool enabled(const NodeId& n) const;
  void act(const NodeId& n);
  void emit_symbol(const NodeId& n, char symbol);
  void emit_word_end(const NodeId& n);
  void emit_signal_out(const NodeId& n, const std::string& tag, int amplitude);
  void push_event(const NodeId& n, const std::string& event, const std::string& detail);
  int window_sum(const NodeState& st, int window) const;

  GridAutomaton automaton_;
  std::map<NodeId, NodeBehavior> behaviors_;
  std::map<NodeId, NodeState> states_;
  std::vector<Delivery> pending_;
  std::size_t clock_ = 0;
  std::size_t seq_ = 0;
  std::vector<TraceEvent> trace_;
  std::vector<OutputRecord> outputs_;

  // Routing computed once: data/control fan-out per node, external taps,
  // input addresses.
  std::map<NodeId, std::vector<LinkId>> info_out_;
  std::map<NodeId, std::vector<LinkId>> signal_out_;
  std::map<NodeId, std::vector<PortId>> external_outs_;
  std::map<std::string, NodeId> input_addresses_;
  std::map<LinkId, NodeId> link_target_;  // closed links: end-side owner
};

// Behaviors must cover every node and fit the node kinds.
Instance instantiate(const GridAutomaton& ga, const std::map<NodeId, NodeBehavior>& behaviors);

struct RunResult {
  std::vector<TraceEvent> trace;
  std::vector<OutputRecord> outputs;
  std::size_t cycles = 0;
};

// Iterated stepping until quiescence or max_cycles.
RunResult run(Instance& instance, const std::vector<ExternalInput>& inputs,
              std::size_t max_cycles);

// The words that left through the given address, in order, split at word-end
// markers.
std::vector<std::string> output_words(const RunResult& result, const std::string& address);

// Line-delimited trace records; byte-stable across identical runs.
std::string trace_jsonl(const std::vector<TraceEvent>& trace);

struct SequentialComposition {
  GridAutomaton automaton;
  std::map<NodeId, NodeBehavior> behaviors;
  std::string input_address;   // external inlet
  std::string output_address;  // external outlet
};

// Two finite automata joined by an information link (result transfer) and a
// control link (control transfer), with an external inlet on the first and
// an external outlet on the second.
SequentialComposition sequential_composition(const FiniteAutomatonSpec& first,
                                             const FiniteAutomatonSpec& second);

}  // namespace schemata

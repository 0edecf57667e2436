#include "schemata/engine.hpp"

#include <algorithm>
#include <sstream>

namespace schemata {

namespace {

bool kind_has_tag(const KindPath& kind, const char* tag) {
  return std::find(kind.tags.begin(), kind.tags.end(), tag) != kind.tags.end();
}

bool behavior_fits(const NodeBehavior& behavior, const KindPath& kind) {
  if (std::holds_alternative<BufferSpec>(behavior) ||
      std::holds_alternative<StubSpec>(behavior))
    return true;
  if (std::holds_alternative<FiniteAutomatonSpec>(behavior))
    return kind_has_tag(kind, "finite_automaton");
  if (std::holds_alternative<GateSpec>(behavior))
    return kind_has_tag(kind, "finite_automaton") || kind_has_tag(kind, "gate");
  if (std::holds_alternative<ThresholdSpec>(behavior))
    return kind_has_tag(kind, "neuron") || kind_has_tag(kind, "threshold_unit");
  return false;
}

void validate_fa(const FiniteAutomatonSpec& fa, const NodeId& n) {
  if (!fa.states.count(fa.initial))
    throw Error(Errc::SemanticError,
                "initial state of '" + n.value + "' is not a declared state");
  for (const auto& state : fa.states)
    for (char symbol : fa.alphabet) {
      auto it = fa.transitions.find({state, symbol});
      if (it == fa.transitions.end())
        throw Error(Errc::SemanticError, "transition table of '" + n.value +
                                             "' is not total on state '" + state + "'");
      if (!fa.states.count(it->second.first))
        throw Error(Errc::SemanticError,
                    "transition of '" + n.value + "' leaves the state set");
    }
}

}  // namespace

Instance::Instance(GridAutomaton automaton, std::map<NodeId, NodeBehavior> behaviors)
    : automaton_(std::move(automaton)), behaviors_(std::move(behaviors)) {
  for (const auto& [n, node] : automaton_.nodes) {
    NodeState st;
    if (const auto* fa = std::get_if<FiniteAutomatonSpec>(&behaviors_.at(n)))
      st.fa_state = fa->initial;
    if (const auto* gate = std::get_if<GateSpec>(&behaviors_.at(n)))
      st.gate_open = gate->initially_open;
    if (const auto* buffer = std::get_if<BufferSpec>(&behaviors_.at(n))) {
      for (const auto& word : buffer->initial_words) {
        for (char c : word) st.data.push_back({false, c});
        st.data.push_back({true, 0});
      }
    }
    states_.emplace(n, std::move(st));
  }

  for (const auto& [l, att] : automaton_.adjacency) {
    const LinkClass link_class = automaton_.links.at(l).link_class;
    if (att.begin) {
      const NodeId owner = automaton_.internal_assignment.at(*att.begin);
      if (link_class == LinkClass::Information) info_out_[owner].push_back(l);
      else signal_out_[owner].push_back(l);
    }
    if (att.kind == AttachmentCase::Closed)
      link_target_[l] = automaton_.internal_assignment.at(*att.end);
    if (att.kind == AttachmentCase::EndOnly)
      input_addresses_[l.value] = automaton_.internal_assignment.at(*att.end);
  }
  for (const auto& [p, target] : automaton_.external_assignment) {
    if (target.kind != ExternalTarget::Kind::Node) continue;
    const auto& port = automaton_.ports.at(p);
    if (port.direction == PortDirection::Inlet)
      input_addresses_[p.value] = NodeId{target.id};
    else
      external_outs_[NodeId{target.id}].push_back(p);
  }
}

void Instance::schedule_input(const ExternalInput& input) {
  auto it = input_addresses_.find(input.address);
  if (it == input_addresses_.end())
    throw Error(Errc::SemanticError, "no input address '" + input.address + "'");
  if (input.is_signal) {
    pending_.push_back({input.cycle, input.address, seq_++, it->second, true, false, 0,
                        "signal", input.amplitude});
    return;
  }
  for (char c : input.word)
    pending_.push_back({input.cycle, input.address, seq_++, it->second, false, false, c,
                        "", 1});
  pending_.push_back(
      {input.cycle, input.address, seq_++, it->second, false, true, 0, "", 1});
}

void Instance::push_event(const NodeId& n, const std::string& event,
                          const std::string& detail) {
  trace_.push_back({clock_, n.value, event, detail});
}

void Instance::deliver_due() {
  std::vector<Delivery> due;
  pending_.erase(std::remove_if(pending_.begin(), pending_.end(),
                                [&](const Delivery& d) {
                                  if (d.cycle != clock_) return false;
                                  due.push_back(d);
                                  return true;
                                }),
                 pending_.end());
  std::sort(due.begin(), due.end());

  for (const auto& d : due) {
    NodeState& st = states_.at(d.target);
    const NodeBehavior& behavior = behaviors_.at(d.target);
    if (d.is_signal) {
      st.control_pending = true;
      st.signal_history.emplace_back(clock_, d.amplitude);
      if (std::holds_alternative<BufferSpec>(behavior))
        st.signals.emplace_back(d.signal_tag, d.amplitude);
      if (auto* gate = std::get_if<GateSpec>(&behavior)) {
        if (!st.gate_open && (!gate->opening_link || gate->opening_link->value == d.source)) {
          st.gate_open = true;
          push_event(d.target, "gate_open", d.source);
        }
      }
      push_event(d.target, "deliver", d.source + ":signal:" + d.signal_tag);
    } else {
      if (auto* gate = std::get_if<GateSpec>(&behavior);
          gate && !st.gate_open && gate->opening_link &&
          gate->opening_link->value == d.source) {
        // Data on the designated opening input opens the gate as well; the
        // opening payload itself is consumed.
        st.gate_open = true;
        push_event(d.target, "gate_open", d.source);
        push_event(d.target, "deliver",
                   d.source + (d.word_end ? ":word_end" : ":symbol:" + std::string(1, d.symbol)));
        continue;
      }
      st.data.push_back({d.word_end, d.symbol});
      push_event(d.target, "deliver",
                 d.source + (d.word_end ? ":word_end" : ":symbol:" + std::string(1, d.symbol)));
    }
  }
}

int Instance::window_sum(const NodeState& st, int window) const {
  int sum = 0;
  for (const auto& [cycle, amplitude] : st.signal_history)
    if (cycle + static_cast<std::size_t>(window) > clock_) sum += amplitude;
  return sum;
}

bool Instance::enabled(const NodeId& n) const {
  const NodeState& st = states_.at(n);
  const NodeBehavior& behavior = behaviors_.at(n);
  if (const auto* fa = std::get_if<FiniteAutomatonSpec>(&behavior)) {
    if (st.data.empty()) return false;
    return !fa->await_control || st.control_pending;
  }
  if (const auto* threshold = std::get_if<ThresholdSpec>(&behavior))
    return window_sum(st, threshold->window) >= threshold->threshold;
  if (std::holds_alternative<GateSpec>(behavior))
    return st.gate_open && !st.data.empty();
  if (std::holds_alternative<BufferSpec>(behavior))
    return !st.data.empty() || !st.signals.empty();
  return false;  // stubs absorb silently
}

void Instance::emit_symbol(const NodeId& n, char symbol) {
  auto it = info_out_.find(n);
  if (it != info_out_.end())
    for (const LinkId& l : it->second) {
      auto target = link_target_.find(l);
      if (target != link_target_.end()) {
        pending_.push_back(
            {clock_ + 1, l.value, seq_++, target->second, false, false, symbol, "", 1});
        push_event(n, "emit", l.value + ":symbol:" + std::string(1, symbol));
      } else {
        outputs_.push_back({clock_, l.value, "symbol", std::string(1, symbol)});
        push_event(n, "output", l.value + ":symbol:" + std::string(1, symbol));
      }
    }
  auto ext = external_outs_.find(n);
  if (ext != external_outs_.end())
    for (const PortId& p : ext->second) {
      outputs_.push_back({clock_, p.value, "symbol", std::string(1, symbol)});
      push_event(n, "output", p.value + ":symbol:" + std::string(1, symbol));
    }
}

void Instance::emit_word_end(const NodeId& n) {
  auto it = info_out_.find(n);
  if (it != info_out_.end())
    for (const LinkId& l : it->second) {
      auto target = link_target_.find(l);
      if (target != link_target_.end()) {
        pending_.push_back(
            {clock_ + 1, l.value, seq_++, target->second, false, true, 0, "", 1});
        push_event(n, "emit", l.value + ":word_end");
      } else {
        outputs_.push_back({clock_, l.value, "word_end", ""});
        push_event(n, "output", l.value + ":word_end");
      }
    }
  auto ext = external_outs_.find(n);
  if (ext != external_outs_.end())
    for (const PortId& p : ext->second) {
      outputs_.push_back({clock_, p.value, "word_end", ""});
      push_event(n, "output", p.value + ":word_end");
    }
}

void Instance::emit_signal_out(const NodeId& n, const std::string& tag, int amplitude) {
  auto it = signal_out_.find(n);
  if (it != signal_out_.end())
    for (const LinkId& l : it->second) {
      auto target = link_target_.find(l);
      if (target != link_target_.end()) {
        pending_.push_back(
            {clock_ + 1, l.value, seq_++, target->second, true, false, 0, tag, amplitude});
        push_event(n, "emit", l.value + ":signal:" + tag);
      } else {
        outputs_.push_back({clock_, l.value, "signal", tag});
        push_event(n, "output", l.value + ":signal:" + tag);
      }
    }
  auto ext = external_outs_.find(n);
  if (ext != external_outs_.end())
    for (const PortId& p : ext->second) {
      outputs_.push_back({clock_, p.value, "signal", tag});
      push_event(n, "output", p.value + ":signal:" + tag);
    }
}

void Instance::act(const NodeId& n) {
  NodeState& st = states_.at(n);
  NodeBehavior& behavior = behaviors_.at(n);

  if (auto* fa = std::get_if<FiniteAutomatonSpec>(&behavior)) {
    Token token = st.data.front();
    st.data.pop_front();
    if (token.word_end) {
      emit_word_end(n);
      emit_signal_out(n, "cycle_complete", 1);
      push_event(n, "cycle_complete", st.fa_state);
      st.fa_state = fa->initial;
      st.control_pending = false;
      return;
    }
    if (!fa->alphabet.count(token.symbol)) {
      push_event(n, "skip", std::string(1, token.symbol));
      return;
    }
    auto [next, output] = fa->transitions.at({st.fa_state, token.symbol});
    push_event(n, "consume",
               std::string(1, token.symbol) + ":" + st.fa_state + ">" + next);
    st.fa_state = next;
    if (output) emit_symbol(n, *output);
    return;
  }

  if (auto* threshold = std::get_if<ThresholdSpec>(&behavior)) {
    push_event(n, "fire", std::to_string(window_sum(st, threshold->window)));
    st.signal_history.clear();
    st.control_pending = false;
    emit_signal_out(n, "fire", threshold->unit_amplitude);
    return;
  }

  if (std::holds_alternative<GateSpec>(behavior)) {
    Token token = st.data.front();
    st.data.pop_front();
    if (token.word_end) {
      push_event(n, "forward", "word_end");
      emit_word_end(n);
    } else {
      push_event(n, "forward", std::string(1, token.symbol));
      emit_symbol(n, token.symbol);
    }
    return;
  }

  if (std::holds_alternative<BufferSpec>(behavior)) {
    if (!st.signals.empty()) {
      auto [tag, amplitude] = st.signals.front();
      st.signals.pop_front();
      push_event(n, "relay", "signal:" + tag);
      emit_signal_out(n, tag, amplitude);
      return;
    }
    Token token = st.data.front();
    st.data.pop_front();
    if (token.word_end) {
      push_event(n, "relay", "word_end");
      emit_word_end(n);
      emit_signal_out(n, "cycle_complete", 1);
    } else {
      push_event(n, "relay", std::string(1, token.symbol));
      emit_symbol(n, token.symbol);
    }
    return;
  }
}

std::vector<TraceEvent> Instance::step() {
  const std::size_t mark = trace_.size();
  deliver_due();
  for (const auto& [n, node] : automaton_.nodes)
    if (enabled(n)) act(n);
  ++clock_;
  return {trace_.begin() + static_cast<std::ptrdiff_t>(mark), trace_.end()};
}

bool Instance::quiescent() const {
  if (!pending_.empty()) return false;
  for (const auto& [n, node] : automaton_.nodes)
    if (enabled(n)) return false;
  return true;
}

Instance instantiate(const GridAutomaton& ga,
                     const std::map<NodeId, NodeBehavior>& behaviors) {
  auto violations = validate_grid_automaton(ga);
  if (!violations.empty())
    throw Error(Errc::InvalidAutomaton, "'" + ga.name + "': " + violations.front().rule);

  for (const auto& [n, node] : ga.nodes) {
    auto it = behaviors.find(n);
    if (it == behaviors.end())
      throw Error(Errc::MissingBehavior, "node '" + n.value + "' has no behavior");
    if (!behavior_fits(it->second, node.kind))
      throw Error(Errc::BehaviorKindMismatch,
                  "behavior does not fit kind '" + node.kind.str() + "' of node '" +
                      n.value + "'");
    if (const auto* fa = std::get_if<FiniteAutomatonSpec>(&it->second)) validate_fa(*fa, n);
    if (const auto* threshold = std::get_if<ThresholdSpec>(&it->second)) {
      if (threshold->threshold < 1 || threshold->window < 1)
        throw Error(Errc::SemanticError,
                    "threshold and window of '" + n.value + "' must be at least 1");
    }
  }
  return Instance(ga, behaviors);
}

RunResult run(Instance& instance, const std::vector<ExternalInput>& inputs,
              std::size_t max_cycles) {
  for (const auto& input : inputs) instance.schedule_input(input);
  std::size_t cycles = 0;
  while (cycles < max_cycles && !instance.quiescent()) {
    instance.step();
    ++cycles;
  }
  return {instance.trace(), instance.outputs(), cycles};
}

std::vector<std::string> output_words(const RunResult& result, const std::string& address) {
  std::vector<std::string> words;
  std::string current;
  for (const auto& record : result.outputs) {
    if (record.address != address) continue;
    if (record.kind == "symbol") {
      current += record.payload;
    } else if (record.kind == "word_end") {
      words.push_back(current);
      current.clear();
    }
  }
  if (!current.empty()) words.push_back(current);
  return words;
}

std::string trace_jsonl(const std::vector<TraceEvent>& trace) {
  std::ostringstream out;
  for (const auto& event : trace)
    out << "{\"cycle\":" << event.cycle << ",\"node\":\"" << event.node
        << "\",\"event\":\"" << event.event << "\",\"detail\":\"" << event.detail
        << "\"}\n";
  return out.str();
}

SequentialComposition sequential_composition(const FiniteAutomatonSpec& first,
                                             const FiniteAutomatonSpec& second) {
  for (const auto& [key, value] : first.transitions)
    if (value.second && !second.alphabet.count(*value.second))
      throw Error(Errc::AlphabetMismatch,
                  std::string("output symbol '") + *value.second +
                      "' is outside the second automaton's input alphabet");

  GridAutomaton ga;
  ga.name = "sequential_composition";
  const KindPath fa_kind{{"automaton", "finite_automaton"}};
  ga.universe.register_kind(Sort::Node, fa_kind);

  const NodeId a{"a"}, b{"b"};
  ga.nodes.emplace(a, NodeConst{fa_kind, {}});
  ga.nodes.emplace(b, NodeConst{fa_kind, {}});

  auto add_port = [&](const std::string& id, PortDirection dir, PortLocus locus) {
    PortId p{id};
    ga.ports.emplace(p, PortConst{dir, locus, generic_port_kind(), {}});
    return p;
  };
  PortId a_out = add_port("a_out", PortDirection::Outlet, PortLocus::Internal);
  PortId a_ctl = add_port("a_ctl", PortDirection::Outlet, PortLocus::Internal);
  PortId b_in = add_port("b_in", PortDirection::Inlet, PortLocus::Internal);
  PortId b_ctl = add_port("b_ctl", PortDirection::Inlet, PortLocus::Internal);
  PortId sys_in = add_port("sys_in", PortDirection::Inlet, PortLocus::External);
  PortId sys_out = add_port("sys_out", PortDirection::Outlet, PortLocus::External);
  ga.internal_assignment = {{a_out, a}, {a_ctl, a}, {b_in, b}, {b_ctl, b}};
  ga.external_assignment = {{sys_in, ExternalTarget::node(a)},
                            {sys_out, ExternalTarget::node(b)}};

  const LinkId data{"result"}, control{"handoff"};
  ga.links.emplace(data, LinkConst{LinkClass::Information, ChannelKind::Simple,
                                   generic_link_kind(0), {}});
  ga.links.emplace(control, LinkConst{LinkClass::Control, ChannelKind::Simple,
                                      generic_link_kind(1), {}});
  ga.adjacency = {{data, PortAttachment::closed(a_out, b_in)},
                  {control, PortAttachment::closed(a_ctl, b_ctl)}};

  SequentialComposition out;
  out.automaton = std::move(ga);
  out.behaviors = {{a, first}, {b, second}};
  out.input_address = sys_in.value;
  out.output_address = sys_out.value;
  return out;
}

}  // namespace schemata

// Command-line surface for the schemata library: parse, validate, derive,
// transform, search and simulate schema documents.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "schemata/dot_export.hpp"
#include "schemata/engine.hpp"
#include "schemata/morphism.hpp"
#include "schemata/text_format.hpp"
#include "schemata/transform.hpp"

namespace {

using namespace schemata;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::SemanticError, "cannot read '" + path + "'");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

KindUniverse env_universe() {
  const char* path = std::getenv("SCHEMA_KIND_UNIVERSE");
  if (!path || !*path) return {};
  return parse_kind_universe(slurp(path));
}

Schema load_schema(const std::string& path, bool strict = true) {
  Schema s = parse_schema(slurp(path), strict);
  KindUniverse env = env_universe();
  std::visit([&](auto& v) { v.universe.merge(env); }, s);
  return s;
}

SchemaMorphism load_morphism(const std::string& path) {
  Document doc = parse_document(slurp(path));
  if (auto* m = std::get_if<SchemaMorphism>(&doc)) return std::move(*m);
  throw Error(Errc::SemanticError, "'" + path + "' is not a morphism document");
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

std::string trim(const std::string& text) {
  auto begin = text.find_first_not_of(" \t");
  if (begin == std::string::npos) return "";
  auto end = text.find_last_not_of(" \t");
  return text.substr(begin, end - begin + 1);
}

ParamValue parse_value(const std::string& text) {
  try {
    std::size_t used = 0;
    long long n = std::stoll(text, &used);
    if (used == text.size()) return ParamValue{n};
  } catch (...) {
  }
  return ParamValue{text};
}

// name=kind/path or name=kind/path[p=1,q=x] or name=integer (parameter).
void parse_bind_flag(const std::string& flag, Binding& binding) {
  auto eq = flag.find('=');
  if (eq == std::string::npos)
    throw Error(Errc::SemanticError, "--bind expects name=value, got '" + flag + "'");
  std::string name = trim(flag.substr(0, eq));
  std::string value = trim(flag.substr(eq + 1));
  if (value.empty())
    throw Error(Errc::SemanticError, "--bind expects name=value, got '" + flag + "'");

  if (std::isdigit(static_cast<unsigned char>(value[0])) || value[0] == '-') {
    binding.by_name.emplace(name, parse_value(value));
    return;
  }
  BoundConstant constant;
  auto bracket = value.find('[');
  std::string kind_text = value;
  if (bracket != std::string::npos) {
    if (value.back() != ']')
      throw Error(Errc::SemanticError, "unterminated parameter list in '" + flag + "'");
    kind_text = value.substr(0, bracket);
    for (const auto& part : split(value.substr(bracket + 1, value.size() - bracket - 2), ',')) {
      auto peq = part.find('=');
      if (peq == std::string::npos)
        throw Error(Errc::SemanticError, "expected p=v in '" + flag + "'");
      constant.params.emplace(trim(part.substr(0, peq)), parse_value(trim(part.substr(peq + 1))));
    }
  }
  constant.kind = KindPath::parse(kind_text);
  binding.by_name.emplace(name, std::move(constant));
}

// node=n1:var=T:range={a/b,c/d}   (or port=/link=, n1.param for parameters)
AbstractionItem parse_abstract_flag(const std::string& flag, int index) {
  AbstractionItem item;
  item.var_name = "X" + std::to_string(index);
  bool have_range = false;
  for (const auto& part : split(flag, ':')) {
    auto eq = part.find('=');
    if (eq == std::string::npos)
      throw Error(Errc::SemanticError, "bad --abstract clause '" + flag + "'");
    std::string key = trim(part.substr(0, eq));
    std::string value = trim(part.substr(eq + 1));
    if (key == "node" || key == "port" || key == "link") {
      item.occurrence.slot = key == "node"   ? OccurrenceRef::Slot::Node
                             : key == "port" ? OccurrenceRef::Slot::Port
                                             : OccurrenceRef::Slot::Link;
      auto dot = value.find('.');
      if (dot == std::string::npos) {
        item.occurrence.id = value;
      } else {
        item.occurrence.id = value.substr(0, dot);
        item.occurrence.param = value.substr(dot + 1);
      }
    } else if (key == "var") {
      item.var_name = value;
    } else if (key == "range") {
      if (value.size() < 2 || value.front() != '{' || value.back() != '}')
        throw Error(Errc::SemanticError, "range needs {...} in '" + flag + "'");
      std::string body = value.substr(1, value.size() - 2);
      if (!item.occurrence.param.empty()) {
        std::set<ParamValue> values;
        for (const auto& v : split(body, ',')) values.insert(parse_value(trim(v)));
        item.range = RangeDescriptor::param_set(std::move(values));
      } else {
        Sort sort = item.occurrence.slot == OccurrenceRef::Slot::Node   ? Sort::Node
                    : item.occurrence.slot == OccurrenceRef::Slot::Port ? Sort::Port
                                                                        : Sort::Link;
        if (trim(body) == "universal") {
          item.range = RangeDescriptor::universal(sort);
        } else {
          std::set<KindPath> kinds;
          for (const auto& k : split(body, ',')) kinds.insert(KindPath::parse(trim(k)));
          item.range = RangeDescriptor::kind_set(sort, std::move(kinds));
        }
      }
      have_range = true;
    } else {
      throw Error(Errc::SemanticError, "unknown --abstract key '" + key + "'");
    }
  }
  if (item.occurrence.id.empty() || !have_range)
    throw Error(Errc::SemanticError, "--abstract needs an occurrence and a range");
  return item;
}

template <class Id>
Attach<Id> parse_attachment(const std::string& text) {
  auto arrow = text.find("->");
  if (arrow == std::string::npos)
    throw Error(Errc::SemanticError, "attachment needs '->' in '" + text + "'");
  std::string begin = trim(text.substr(0, arrow));
  std::string end = trim(text.substr(arrow + 2));
  if (!begin.empty() && !end.empty()) return Attach<Id>::closed(Id{begin}, Id{end});
  if (!begin.empty()) return Attach<Id>::begin_only(Id{begin});
  if (!end.empty()) return Attach<Id>::end_only(Id{end});
  throw Error(Errc::SemanticError, "empty attachment in '" + text + "'");
}

// var=T:range={...} | link=l1:{a->b|a->} | port=p1:{n1|n2}
void parse_restrict_flag(const std::string& flag, bool port_flavor, DeterminationSpec& spec) {
  auto colon = flag.find(':');
  if (colon == std::string::npos)
    throw Error(Errc::SemanticError, "bad --restrict clause '" + flag + "'");
  std::string head = trim(flag.substr(0, colon));
  std::string tail = trim(flag.substr(colon + 1));
  auto eq = head.find('=');
  if (eq == std::string::npos)
    throw Error(Errc::SemanticError, "bad --restrict clause '" + flag + "'");
  std::string key = trim(head.substr(0, eq));
  std::string id = trim(head.substr(eq + 1));

  auto strip_braces = [&](const std::string& text) {
    if (text.size() < 2 || text.front() != '{' || text.back() != '}')
      throw Error(Errc::SemanticError, "--restrict needs {...} in '" + flag + "'");
    return text.substr(1, text.size() - 2);
  };

  if (key == "var") {
    std::string body = tail;
    if (body.rfind("range=", 0) == 0) body = body.substr(6);
    body = strip_braces(trim(body));
    std::set<KindPath> kinds;
    std::set<ParamValue> values;
    bool numeric = true;
    for (const auto& item : split(body, ',')) {
      std::string v = trim(item);
      if (v.empty()) continue;
      if (!std::isdigit(static_cast<unsigned char>(v[0])) && v[0] != '-') numeric = false;
    }
    if (numeric && body.find('/') == std::string::npos) {
      for (const auto& item : split(body, ',')) values.insert(parse_value(trim(item)));
      spec.variable_ranges.emplace(id, RangeDescriptor::param_set(std::move(values)));
    } else {
      for (const auto& item : split(body, ',')) kinds.insert(KindPath::parse(trim(item)));
      // The sort is resolved against the schema when applied; node is the
      // common case and subset checking ignores the recorded sort mismatch
      // only if ranges agree, so carry the target sort from the variable.
      spec.variable_ranges.emplace(id, RangeDescriptor::kind_set(Sort::Node, std::move(kinds)));
    }
  } else if (key == "link") {
    std::string body = strip_braces(tail);
    if (port_flavor) {
      std::set<PortAttachment> atts;
      for (const auto& item : split(body, '|')) atts.insert(parse_attachment<PortId>(trim(item)));
      spec.adjacency.emplace(LinkId{id}, std::move(atts));
    } else {
      std::set<NodeAttachment> atts;
      for (const auto& item : split(body, '|')) atts.insert(parse_attachment<NodeId>(trim(item)));
      spec.node_adjacency.emplace(LinkId{id}, std::move(atts));
    }
  } else if (key == "port") {
    std::string body = strip_braces(tail);
    std::set<NodeId> owners;
    for (const auto& item : split(body, '|')) owners.insert(NodeId{trim(item)});
    spec.internal_assignment.emplace(PortId{id}, std::move(owners));
  } else {
    throw Error(Errc::SemanticError, "unknown --restrict key '" + key + "'");
  }
}

void fix_range_sorts(const Schema& s, DeterminationSpec& spec) {
  VariableMultiset vars = variable_multiset(s);
  for (auto& [name, range] : spec.variable_ranges) {
    auto it = vars.by_name.find(name);
    if (it == vars.by_name.end()) continue;
    if (range.kind == RangeDescriptor::Kind::KindSet) range.sort = it->second.range.sort;
  }
}

void print_violations(const std::vector<Violation>& violations) {
  for (const auto& v : violations)
    std::cout << v.rule << " " << v.element << ": " << v.detail << "\n";
}

void print_multigraph(const VariableMultigraph& g) {
  for (const auto& v : g.vertices) std::cout << "vertex " << v.value << "\n";
  for (const auto& [e, options] : g.edges) {
    std::cout << "edge " << e.value << " :";
    for (const auto& att : options) {
      std::cout << " ";
      if (att.begin) std::cout << att.begin->value;
      std::cout << "->";
      if (att.end) std::cout << att.end->value;
    }
    std::cout << "\n";
  }
}

void print_classification(const SchemaClassification& c) {
  std::cout << "roles:";
  for (const auto& role : c.roles) std::cout << " " << role_name(role);
  std::cout << "\npotentially_open: " << (c.potentially_open ? "true" : "false") << "\n";
}

std::string render_binding(const Binding& b) {
  std::ostringstream out;
  for (const auto& [name, value] : b.by_name) {
    out << name << "=";
    if (const auto* c = std::get_if<BoundConstant>(&value)) {
      out << c->kind.str();
      if (!c->params.empty()) {
        out << "[";
        bool first = true;
        for (const auto& [k, v] : c->params) {
          if (!first) out << ",";
          first = false;
          out << k << "=" << param_value_str(v);
        }
        out << "]";
      }
    } else {
      out << param_value_str(std::get<ParamValue>(value));
    }
    out << " ";
  }
  return out.str();
}

NodeBehavior default_behavior(const KindPath& kind) {
  auto has = [&](const char* tag) {
    return std::find(kind.tags.begin(), kind.tags.end(), tag) != kind.tags.end();
  };
  if (has("finite_automaton")) {
    FiniteAutomatonSpec fa;
    fa.states = {"q"};
    fa.alphabet = {'0', '1'};
    fa.initial = "q";
    fa.transitions[{"q", '0'}] = {"q", '0'};
    fa.transitions[{"q", '1'}] = {"q", '1'};
    return fa;
  }
  if (has("neuron") || has("threshold_unit")) return ThresholdSpec{30, 5, 1};
  if (has("buffer")) return BufferSpec{};
  return StubSpec{};
}

std::map<NodeId, NodeBehavior> behaviors_for(const GridAutomaton& ga,
                                             const std::string& behaviors_path) {
  std::map<NodeId, NodeBehavior> out;
  for (const auto& [n, node] : ga.nodes) out.emplace(n, default_behavior(node.kind));
  if (behaviors_path.empty()) return out;

  nlohmann::json doc = nlohmann::json::parse(slurp(behaviors_path));
  for (const auto& [key, value] : doc.items()) {
    NodeId n{key};
    if (!ga.nodes.count(n))
      throw Error(Errc::SemanticError, "behavior for unknown node '" + key + "'");
    std::string type = value.value("type", "stub");
    if (type == "finite_automaton") {
      FiniteAutomatonSpec fa;
      for (const auto& s : value.at("states")) fa.states.insert(s.get<std::string>());
      for (char c : value.at("alphabet").get<std::string>()) fa.alphabet.insert(c);
      fa.initial = value.at("initial").get<std::string>();
      fa.await_control = value.value("await_control", false);
      if (value.contains("finals"))
        for (const auto& s : value.at("finals")) fa.finals.insert(s.get<std::string>());
      for (const auto& t : value.at("transitions")) {
        std::string output = t.value("output", "");
        fa.transitions[{t.at("state").get<std::string>(),
                        t.at("symbol").get<std::string>().at(0)}] = {
            t.at("next").get<std::string>(),
            output.empty() ? std::nullopt : std::optional<char>(output[0])};
      }
      out[n] = fa;
    } else if (type == "threshold") {
      out[n] = ThresholdSpec{value.value("threshold", 1), value.value("window", 1),
                             value.value("unit", 1)};
    } else if (type == "gate") {
      GateSpec gate;
      gate.initially_open = value.value("open", false);
      if (value.contains("opening_link"))
        gate.opening_link = LinkId{value.at("opening_link").get<std::string>()};
      out[n] = gate;
    } else if (type == "buffer") {
      BufferSpec buffer;
      if (value.contains("words"))
        for (const auto& w : value.at("words")) buffer.initial_words.push_back(w.get<std::string>());
      out[n] = buffer;
    } else if (type == "stub") {
      out[n] = StubSpec{};
    } else {
      throw Error(Errc::SemanticError, "unknown behavior type '" + type + "'");
    }
  }
  return out;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"grid automata and schemas: modeling, transformation and simulation"};
  app.require_subcommand(1);

  std::string file, second, morphism_file, sub_file;
  std::vector<std::string> binds, abstracts, restricts;
  std::string input_word, input_address, trace_path, behaviors_path, dot_out;
  std::size_t max_cycles = 1000;
  bool hom_typed = false, hom_weak = false, hom_mono = false, hom_epi = false;
  bool by_realizations = false;
  std::size_t hom_limit = 0;

  auto add_file = [&](CLI::App* cmd) { cmd->add_option("file", file, "schema document")->required(); };

  auto* validate_cmd = app.add_subcommand("validate", "check a document's invariants");
  add_file(validate_cmd);
  auto* grid_cmd = app.add_subcommand("grid", "derive the grid");
  add_file(grid_cmd);
  auto* cgrid_cmd = app.add_subcommand("cgrid", "derive the connection grid");
  add_file(cgrid_cmd);
  auto* classify_cmd = app.add_subcommand("classify", "role classification");
  add_file(classify_cmd);
  auto* vars_cmd = app.add_subcommand("vars", "variable multiset");
  add_file(vars_cmd);
  auto* basic_cmd = app.add_subcommand("basic", "derive the basic schema");
  add_file(basic_cmd);

  auto* concretize_cmd = app.add_subcommand("concretize", "bind variables to constants");
  add_file(concretize_cmd);
  concretize_cmd->add_option("--bind", binds, "name=constant");
  auto* realize_cmd = app.add_subcommand("realize", "full concretization to an automaton");
  add_file(realize_cmd);
  realize_cmd->add_option("--bind", binds, "name=constant");
  auto* abstract_cmd = app.add_subcommand("abstract", "replace constants by variables");
  add_file(abstract_cmd);
  abstract_cmd->add_option("--abstract", abstracts, "node=ID:var=NAME:range={...}");
  auto* determine_cmd = app.add_subcommand("determine", "shrink ranges or target sets");
  add_file(determine_cmd);
  determine_cmd->add_option("--restrict", restricts, "var=NAME:range={...} | link=ID:{...} | port=ID:{...}");

  auto* compare_cmd = app.add_subcommand("compare", "order relations between two schemas");
  add_file(compare_cmd);
  compare_cmd->add_option("other", second, "second document")->required();
  auto* equiv_cmd = app.add_subcommand("equiv", "schema equivalence");
  add_file(equiv_cmd);
  equiv_cmd->add_option("other", second, "second document")->required();
  equiv_cmd->add_flag("--by-realizations", by_realizations, "compare realization sets");

  auto* maxabs_cmd = app.add_subcommand("maxabs", "maximal abstraction");
  add_file(maxabs_cmd);
  auto* close_cmd = app.add_subcommand("close", "absorb open edges and external ports");
  add_file(close_cmd);

  auto* hom_cmd = app.add_subcommand("hom", "schema homomorphisms");
  auto* hom_check = hom_cmd->add_subcommand("check", "classify a morphism");
  hom_check->add_option("domain", file)->required();
  hom_check->add_option("codomain", second)->required();
  hom_check->add_option("morphism", morphism_file)->required();
  auto* hom_find = hom_cmd->add_subcommand("find", "search homomorphisms");
  hom_find->add_option("domain", file)->required();
  hom_find->add_option("codomain", second)->required();
  hom_find->add_flag("--typed", hom_typed);
  hom_find->add_flag("--weak", hom_weak);
  hom_find->add_flag("--mono", hom_mono);
  hom_find->add_flag("--epi", hom_epi);
  hom_find->add_option("--limit", hom_limit);

  auto* sub_cmd = app.add_subcommand("sub", "subschema relations");
  sub_cmd->add_option("part", file)->required();
  sub_cmd->add_option("whole", second)->required();
  auto* complete_cmd = app.add_subcommand("complete", "completeness flags of a subschema");
  complete_cmd->add_option("part", file)->required();
  complete_cmd->add_option("whole", second)->required();
  auto* preimage_cmd = app.add_subcommand("preimage", "inverse image of a subschema");
  preimage_cmd->add_option("domain", file)->required();
  preimage_cmd->add_option("codomain", second)->required();
  preimage_cmd->add_option("morphism", morphism_file)->required();
  preimage_cmd->add_option("subschema", sub_file)->required();

  auto* sim_cmd = app.add_subcommand("sim", "run a realized grid automaton");
  add_file(sim_cmd);
  sim_cmd->add_option("--bind", binds, "name=constant");
  sim_cmd->add_option("--input", input_word, "word fed to the input address");
  sim_cmd->add_option("--input-address", input_address, "end-open link or external inlet");
  sim_cmd->add_option("--max-cycles", max_cycles);
  sim_cmd->add_option("--trace", trace_path, "write the JSONL trace here");
  sim_cmd->add_option("--behaviors", behaviors_path, "behavior spec (JSON)");

  auto* dot_cmd = app.add_subcommand("dot", "graphviz export");
  add_file(dot_cmd);
  dot_cmd->add_option("-o,--output", dot_out, "write to file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    Binding binding;
    for (const auto& flag : binds) parse_bind_flag(flag, binding);

    if (validate_cmd->parsed()) {
      Schema s = load_schema(file, /*strict=*/false);
      auto violations = validate_schema(s);
      print_violations(violations);
      return violations.empty() ? 0 : 1;
    }
    if (grid_cmd->parsed()) {
      print_multigraph(schema_grid(load_schema(file)));
      return 0;
    }
    if (cgrid_cmd->parsed()) {
      Schema s = load_schema(file);
      if (!std::holds_alternative<PortSchema>(s))
        throw Error(Errc::SchemaMismatch, "connection grids need a port schema");
      print_multigraph(schema_connection_grid(std::get<PortSchema>(s)));
      return 0;
    }
    if (classify_cmd->parsed()) {
      print_classification(classify_schema(load_schema(file)));
      return 0;
    }
    if (vars_cmd->parsed()) {
      VariableMultiset vars = variable_multiset(load_schema(file));
      for (const auto& [name, info] : vars.by_name) {
        std::cout << name << " x" << info.multiplicity() << " "
                  << (info.scope == VariableScope::Individual ? "individual"
                      : info.scope == VariableScope::Local    ? "local"
                                                              : "global")
                  << " "
                  << (info.dynamic_type == DynamicType::System     ? "system"
                      : info.dynamic_type == DynamicType::Function ? "function"
                                                                   : "process")
                  << " :";
        for (const auto& occ : info.occurrences) std::cout << " " << occurrence_str(occ);
        std::cout << "\n";
      }
      return 0;
    }
    if (basic_cmd->parsed()) {
      Schema s = load_schema(file);
      if (!std::holds_alternative<PortSchema>(s))
        throw Error(Errc::SchemaMismatch, "basic derivation needs a port schema");
      std::cout << serialize(derive_basic_schema(std::get<PortSchema>(s)));
      return 0;
    }
    if (concretize_cmd->parsed()) {
      std::cout << serialize(concretize(load_schema(file), binding));
      return 0;
    }
    if (realize_cmd->parsed()) {
      Schema s = load_schema(file);
      if (const auto* port = std::get_if<PortSchema>(&s))
        std::cout << serialize(realize(*port, binding));
      else
        std::cout << serialize(realize(std::get<BasicSchema>(s), binding));
      return 0;
    }
    if (abstract_cmd->parsed()) {
      AbstractionSpec spec;
      int index = 0;
      for (const auto& flag : abstracts) spec.items.push_back(parse_abstract_flag(flag, ++index));
      std::cout << serialize(abstract_elements(load_schema(file), spec));
      return 0;
    }
    if (determine_cmd->parsed()) {
      Schema s = load_schema(file);
      DeterminationSpec spec;
      for (const auto& flag : restricts)
        parse_restrict_flag(flag, std::holds_alternative<PortSchema>(s), spec);
      fix_range_sorts(s, spec);
      std::cout << serialize(determine(s, spec));
      return 0;
    }
    if (compare_cmd->parsed()) {
      CompareResult r = compare(load_schema(file), load_schema(second));
      std::cout << "more_concrete: " << (r.more_concrete ? "true" : "false") << "\n";
      if (r.concrete_witness) std::cout << "  witness: " << render_binding(*r.concrete_witness) << "\n";
      std::cout << "more_general: " << (r.more_general ? "true" : "false") << "\n";
      if (r.general_witness) std::cout << "  witness: " << render_binding(*r.general_witness) << "\n";
      std::cout << "more_determined: " << (r.more_determined ? "true" : "false") << "\n";
      return 0;
    }
    if (equiv_cmd->parsed()) {
      Schema s = load_schema(file), t = load_schema(second);
      if (by_realizations) {
        bool eq = false;
        if (s.index() == t.index()) {
          if (const auto* port = std::get_if<PortSchema>(&s))
            eq = equivalent(*port, std::get<PortSchema>(t));
          else
            eq = equivalent(std::get<BasicSchema>(s), std::get<BasicSchema>(t));
        }
        std::cout << "equivalent: " << (eq ? "true" : "false") << "\n";
        return 0;
      }
      StrongEquivalence r = strongly_equivalent(s, t);
      std::cout << "strongly_equivalent: " << (r.equivalent ? "true" : "false") << "\n";
      if (r.witness) {
        for (const auto& [a, b] : r.witness->variables)
          std::cout << "  rename " << a << " -> " << b << "\n";
        for (const auto& [a, b] : r.witness->nodes)
          std::cout << "  node " << a.value << " -> " << b.value << "\n";
      }
      return 0;
    }
    if (maxabs_cmd->parsed()) {
      std::cout << serialize(maximal_abstraction(load_schema(file)));
      return 0;
    }
    if (close_cmd->parsed()) {
      CloseResult r = close_schema(load_schema(file));
      for (const auto& n : r.embedding.added_nodes)
        std::cerr << "added node " << n.value << "\n";
      for (const auto& [p, targets] : r.embedding.rehomed_ports)
        std::cerr << "rehomed port " << p.value << "\n";
      std::cout << serialize(r.schema);
      return 0;
    }
    if (hom_check->parsed()) {
      Schema s = load_schema(file), t = load_schema(second);
      SchemaMorphism m = load_morphism(morphism_file);
      MorphismFlags flags = check_structural(s, t, m);
      std::cout << "structural: " << (flags.structural ? "true" : "false") << "\n"
                << "weak: " << (flags.weak ? "true" : "false") << "\n"
                << "typed: " << (flags.typed ? "true" : "false") << "\n"
                << "v_mono: " << (flags.v_mono ? "true" : "false")
                << " e_mono: " << (flags.e_mono ? "true" : "false") << "\n"
                << "v_epi: " << (flags.v_epi ? "true" : "false")
                << " e_epi: " << (flags.e_epi ? "true" : "false") << "\n";
      return 0;
    }
    if (hom_find->parsed()) {
      HomSearchOptions options;
      options.typed = hom_typed;
      options.weak_only = hom_weak;
      options.mono = hom_mono;
      options.epi = hom_epi;
      options.limit = hom_limit;
      auto found = find_homomorphisms(load_schema(file), load_schema(second), options);
      std::cout << "found: " << found.size() << "\n";
      for (const auto& m : found) std::cout << serialize(m);
      return 0;
    }
    if (sub_cmd->parsed()) {
      SubschemaResult r = subschema_check(load_schema(file), load_schema(second));
      std::cout << "subschema: " << (r.subschema ? "true" : "false") << "\n"
                << "structural: " << (r.structural ? "true" : "false") << "\n"
                << "strong_structural: " << (r.strong_structural ? "true" : "false") << "\n";
      return 0;
    }
    if (complete_cmd->parsed()) {
      CompletenessFlags flags = completeness_flags(load_schema(file), load_schema(second));
      std::cout << "v_complete: " << (flags.v_complete ? "true" : "false") << "\n"
                << "e_complete: " << (flags.e_complete ? "true" : "false") << "\n"
                << "p_complete: " << (flags.p_complete ? "true" : "false") << "\n";
      return 0;
    }
    if (preimage_cmd->parsed()) {
      Schema result = preimage(load_schema(file), load_schema(second),
                               load_morphism(morphism_file), load_schema(sub_file));
      std::cout << serialize(result);
      return 0;
    }
    if (sim_cmd->parsed()) {
      Schema s = load_schema(file);
      GridAutomaton ga;
      if (const auto* port = std::get_if<PortSchema>(&s))
        ga = realize(*port, binding);
      else
        ga = realize(embed_basic(std::get<BasicSchema>(s)), binding);
      Instance instance = instantiate(ga, behaviors_for(ga, behaviors_path));

      std::vector<ExternalInput> inputs;
      if (!input_word.empty()) {
        std::string address = input_address;
        if (address.empty()) {
          // A unique input address may be left implicit.
          std::vector<std::string> candidates;
          for (const auto& [l, att] : ga.adjacency)
            if (att.kind == AttachmentCase::EndOnly) candidates.push_back(l.value);
          for (const auto& [p, target] : ga.external_assignment)
            if (ga.ports.at(p).direction == PortDirection::Inlet)
              candidates.push_back(p.value);
          if (candidates.size() != 1)
            throw Error(Errc::SemanticError,
                        "--input-address required: input address is ambiguous");
          address = candidates.front();
        }
        inputs.push_back({0, address, input_word, false, 1});
      }
      RunResult result = run(instance, inputs, max_cycles);
      if (!trace_path.empty()) {
        std::ofstream out(trace_path, std::ios::binary);
        out << trace_jsonl(result.trace);
      }
      std::cout << "cycles: " << result.cycles << "\n";
      std::map<std::string, std::vector<std::string>> words;
      for (const auto& record : result.outputs)
        if (words.find(record.address) == words.end())
          words[record.address] = output_words(result, record.address);
      for (const auto& [address, ws] : words) {
        std::cout << address << ":";
        for (const auto& w : ws) std::cout << " \"" << w << "\"";
        std::cout << "\n";
      }
      return 0;
    }
    if (dot_cmd->parsed()) {
      std::string dot = export_dot(load_schema(file));
      if (dot_out.empty()) {
        std::cout << dot;
      } else {
        std::ofstream out(dot_out, std::ios::binary);
        out << dot;
      }
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) { return run_cli(argc, argv); }

#include "schemata/transform.hpp"

#include <algorithm>

#include "schemata/canonical.hpp"

namespace schemata {

namespace {

Sort slot_sort(OccurrenceRef::Slot s) {
  switch (s) {
    case OccurrenceRef::Slot::Node: return Sort::Node;
    case OccurrenceRef::Slot::Port: return Sort::Port;
    case OccurrenceRef::Slot::Link: return Sort::Link;
  }
  return Sort::Node;
}

std::string bound_value_str(const BoundValue& v) {
  if (const auto* c = std::get_if<BoundConstant>(&v)) {
    std::string out = c->kind.str();
    if (!c->params.empty()) {
      out += '[';
      bool first = true;
      for (const auto& [k, val] : c->params) {
        if (!first) out += ',';
        first = false;
        out += k + "=" + param_value_str(val);
      }
      out += ']';
    }
    return out;
  }
  return param_value_str(std::get<ParamValue>(v));
}

std::string binding_str(const Binding& b) {
  std::string out;
  for (const auto& [name, v] : b.by_name) {
    if (!out.empty()) out += ' ';
    out += name + "=" + bound_value_str(v);
  }
  for (const auto& [ref, v] : b.by_occurrence) {
    if (!out.empty()) out += ' ';
    out += occurrence_str(ref) + "=" + bound_value_str(v);
  }
  return out;
}

SchemaElement constant_element(const BoundConstant& c) {
  if (c.params.empty()) return SchemaElement::constant(c.kind);
  std::map<std::string, ParamEntry> entries;
  for (const auto& [k, v] : c.params) entries.emplace(k, v);
  return SchemaElement::parameterized(c.kind, std::move(entries));
}

// The value this occurrence should take under the binding, honoring the
// optional occurrence filter; nullptr when it stays a variable.
const BoundValue* lookup(const Binding& b, const OccurrenceRef& ref,
                         const std::string& name,
                         const std::set<OccurrenceRef>* filter) {
  if (filter && !filter->count(ref)) return nullptr;
  auto oit = b.by_occurrence.find(ref);
  if (oit != b.by_occurrence.end()) return &oit->second;
  auto nit = b.by_name.find(name);
  if (nit != b.by_name.end()) return &nit->second;
  return nullptr;
}

SchemaElement apply_element(const SchemaElement& el, OccurrenceRef::Slot slot,
                            const std::string& id, const Binding& b,
                            const std::set<OccurrenceRef>* filter,
                            const KindUniverse& universe) {
  if (el.kind == SchemaElement::Kind::Variable) {
    const BoundValue* v = lookup(b, {slot, id, ""}, el.var_name, filter);
    if (!v) return el;
    const auto* c = std::get_if<BoundConstant>(v);
    if (!c)
      throw Error(Errc::RangeViolation,
                  "variable '" + el.var_name + "' needs a constant kind");
    if (!el.range.contains(c->kind, universe))
      throw Error(Errc::RangeViolation, "'" + c->kind.str() +
                                            "' is outside the range of '" +
                                            el.var_name + "'");
    return constant_element(*c);
  }
  if (el.kind == SchemaElement::Kind::Parameterized) {
    SchemaElement out = el;
    for (auto& [pname, entry] : out.params) {
      const auto* pv = std::get_if<ParamVar>(&entry);
      if (!pv) continue;
      const BoundValue* v = lookup(b, {slot, id, pname}, pv->name, filter);
      if (!v) continue;
      const auto* value = std::get_if<ParamValue>(v);
      if (!value)
        throw Error(Errc::RangeViolation,
                    "parameter variable '" + pv->name + "' needs a value");
      if (!pv->range.contains(*value))
        throw Error(Errc::RangeViolation,
                    "value " + param_value_str(*value) + " is outside the domain of '" +
                        pv->name + "'");
      entry = *value;
    }
    return out;
  }
  return el;
}

void check_binding_addresses(const Binding& b, const VariableMultiset& vars) {
  for (const auto& [name, v] : b.by_name)
    if (!vars.by_name.count(name))
      throw Error(Errc::UnknownVariable, "no variable '" + name + "'");
  for (const auto& [ref, v] : b.by_occurrence) {
    bool found = false;
    for (const auto& [name, info] : vars.by_name)
      if (std::find(info.occurrences.begin(), info.occurrences.end(), ref) !=
          info.occurrences.end()) {
        found = true;
        break;
      }
    if (!found)
      throw Error(Errc::UnknownVariable,
                  "no variable occurrence at " + occurrence_str(ref));
  }
}

template <class SchemaT>
SchemaT interpret_impl(const SchemaT& s, const Binding& b,
                       const std::set<OccurrenceRef>* filter) {
  check_binding_addresses(b, variable_multiset(s));
  SchemaT out = s;
  for (auto& [n, el] : out.nodes)
    el = apply_element(el, OccurrenceRef::Slot::Node, n.value, b, filter, s.universe);
  for (auto& [l, slot] : out.links)
    slot.element =
        apply_element(slot.element, OccurrenceRef::Slot::Link, l.value, b, filter, s.universe);
  if constexpr (requires { out.ports; }) {
    for (auto& [p, slot] : out.ports)
      slot.element = apply_element(slot.element, OccurrenceRef::Slot::Port, p.value, b,
                                   filter, s.universe);
  }
  return out;
}

}  // namespace

Binding merge(const Binding& a, const Binding& b) {
  Binding out = a;
  for (const auto& [name, v] : b.by_name) {
    auto [it, fresh] = out.by_name.emplace(name, v);
    if (!fresh && it->second != v)
      throw Error(Errc::NotComposable, "conflicting values for '" + name + "'");
  }
  for (const auto& [ref, v] : b.by_occurrence) {
    auto [it, fresh] = out.by_occurrence.emplace(ref, v);
    if (!fresh && it->second != v)
      throw Error(Errc::NotComposable,
                  "conflicting values at " + occurrence_str(ref));
  }
  return out;
}

bool DeterminationSpec::empty() const {
  return variable_ranges.empty() && internal_assignment.empty() && adjacency.empty() &&
         node_adjacency.empty() && external_assignment.empty();
}

PortSchema interpret(const PortSchema& s, const Binding& b,
                     const std::set<OccurrenceRef>* occurrences) {
  return interpret_impl(s, b, occurrences);
}

BasicSchema interpret(const BasicSchema& s, const Binding& b,
                      const std::set<OccurrenceRef>* occurrences) {
  return interpret_impl(s, b, occurrences);
}

Schema interpret(const Schema& s, const Binding& b,
                 const std::set<OccurrenceRef>* occurrences) {
  return std::visit([&](const auto& v) -> Schema { return interpret(v, b, occurrences); }, s);
}

PortSchema concretize(const PortSchema& s, const Binding& b) {
  PortSchema out = interpret(s, b, nullptr);
  out.provenance = Provenance{"concretize", s.name, binding_str(b)};
  return out;
}

BasicSchema concretize(const BasicSchema& s, const Binding& b) {
  BasicSchema out = interpret(s, b, nullptr);
  out.provenance = Provenance{"concretize", s.name, binding_str(b)};
  return out;
}

Schema concretize(const Schema& s, const Binding& b) {
  return std::visit([&](const auto& v) -> Schema { return concretize(v, b); }, s);
}

namespace {

template <class SchemaT>
void require_realizable(const SchemaT& c) {
  auto vars = variable_multiset(c);
  if (!vars.empty())
    throw Error(Errc::ResidualVariables,
                "variable '" + vars.by_name.begin()->first + "' is still unbound");
  if (!is_deterministic(c))
    throw Error(Errc::ResidualNondeterminism,
                "'" + c.name + "' still has set-valued entries");
}

std::map<std::string, ParamValue> constant_params(const SchemaElement& el) {
  std::map<std::string, ParamValue> out;
  for (const auto& [k, entry] : el.params) out.emplace(k, std::get<ParamValue>(entry));
  return out;
}

}  // namespace

GridAutomaton realize(const PortSchema& s, const Binding& b) {
  PortSchema c = interpret(s, b, nullptr);
  require_realizable(c);
  GridAutomaton ga;
  ga.name = c.name;
  ga.universe = c.universe;
  for (const auto& [n, el] : c.nodes)
    ga.nodes.emplace(n, NodeConst{el.constant_kind, constant_params(el)});
  for (const auto& [p, slot] : c.ports)
    ga.ports.emplace(p, PortConst{slot.direction, slot.locus, slot.element.constant_kind,
                                  constant_params(slot.element)});
  for (const auto& [l, slot] : c.links)
    ga.links.emplace(l, LinkConst{slot.link_class, slot.channel, slot.element.constant_kind,
                                  constant_params(slot.element)});
  for (const auto& [p, owners] : c.internal_assignment)
    ga.internal_assignment.emplace(p, *owners.begin());
  for (const auto& [l, options] : c.adjacency) ga.adjacency.emplace(l, *options.begin());
  for (const auto& [p, targets] : c.external_assignment)
    ga.external_assignment.emplace(p, *targets.begin());
  return ga;
}

BasicGridAutomaton realize(const BasicSchema& s, const Binding& b) {
  BasicSchema c = interpret(s, b, nullptr);
  require_realizable(c);
  BasicGridAutomaton ga;
  ga.name = c.name;
  ga.universe = c.universe;
  for (const auto& [n, el] : c.nodes)
    ga.nodes.emplace(n, NodeConst{el.constant_kind, constant_params(el)});
  for (const auto& [l, slot] : c.links)
    ga.links.emplace(l, LinkConst{slot.link_class, slot.channel, slot.element.constant_kind,
                                  constant_params(slot.element)});
  for (const auto& [l, options] : c.node_adjacency)
    ga.node_adjacency.emplace(l, *options.begin());
  return ga;
}

namespace {

template <class SchemaT>
SchemaT abstract_impl(const SchemaT& s, const AbstractionSpec& spec) {
  VariableMultiset existing = variable_multiset(s);

  std::map<std::string, RangeDescriptor> introduced;
  for (const auto& item : spec.items) {
    auto eit = existing.by_name.find(item.var_name);
    if (eit != existing.by_name.end() && eit->second.range != item.range)
      throw Error(Errc::SemanticError, "abstraction reuses name '" + item.var_name +
                                           "' with a different range");
    auto [it, fresh] = introduced.try_emplace(item.var_name, item.range);
    if (!fresh && it->second != item.range)
      throw Error(Errc::SemanticError, "abstraction gives '" + item.var_name +
                                           "' two different ranges");
  }

  SchemaT out = s;
  for (const auto& item : spec.items) {
    const OccurrenceRef& ref = item.occurrence;
    SchemaElement* el = nullptr;
    if (ref.slot == OccurrenceRef::Slot::Node) {
      auto it = out.nodes.find(NodeId{ref.id});
      if (it != out.nodes.end()) el = &it->second;
    } else if (ref.slot == OccurrenceRef::Slot::Link) {
      auto it = out.links.find(LinkId{ref.id});
      if (it != out.links.end()) el = &it->second.element;
    } else if constexpr (requires { out.ports; }) {
      auto it = out.ports.find(PortId{ref.id});
      if (it != out.ports.end()) el = &it->second.element;
    }
    if (!el)
      throw Error(Errc::SemanticError, "no slot at " + occurrence_str(ref));

    if (ref.param.empty()) {
      if (!el->fully_constant())
        throw Error(Errc::OccurrenceNotConstant, occurrence_str(ref));
      if (item.range.kind == RangeDescriptor::Kind::ParamSet ||
          item.range.sort != slot_sort(ref.slot))
        throw Error(Errc::SemanticError,
                    "range sort does not fit slot at " + occurrence_str(ref));
      if (!item.range.contains(el->constant_kind, s.universe))
        throw Error(Errc::RangeExcludesOriginal,
                    "'" + el->constant_kind.str() + "' at " + occurrence_str(ref));
      *el = SchemaElement::variable(item.var_name, item.range);
    } else {
      if (el->kind != SchemaElement::Kind::Parameterized ||
          !el->params.count(ref.param) ||
          !std::holds_alternative<ParamValue>(el->params.at(ref.param)))
        throw Error(Errc::OccurrenceNotConstant, occurrence_str(ref));
      const ParamValue value = std::get<ParamValue>(el->params.at(ref.param));
      if (item.range.kind != RangeDescriptor::Kind::ParamSet)
        throw Error(Errc::SemanticError,
                    "parameter abstraction needs a value domain at " + occurrence_str(ref));
      if (!item.range.contains(value))
        throw Error(Errc::RangeExcludesOriginal,
                    param_value_str(value) + " at " + occurrence_str(ref));
      el->params.at(ref.param) = ParamVar{item.var_name, item.range};
    }
  }
  out.provenance = Provenance{"abstract", s.name, ""};
  return out;
}

template <class Key, class Value>
void apply_restriction(std::map<Key, std::set<Value>>& target,
                       const std::map<Key, std::set<Value>>& restrictions,
                       const char* what) {
  for (const auto& [key, narrowed] : restrictions) {
    auto it = target.find(key);
    if (it == target.end())
      throw Error(Errc::SemanticError,
                  std::string("no ") + what + " entry for '" + key.value + "'");
    if (narrowed.empty())
      throw Error(Errc::EmptyRestriction, key.value);
    if (!std::includes(it->second.begin(), it->second.end(), narrowed.begin(),
                       narrowed.end()))
      throw Error(Errc::NotASubset, key.value);
    it->second = narrowed;
  }
}

template <class SchemaT>
SchemaT determine_impl(const SchemaT& s, const DeterminationSpec& spec) {
  VariableMultiset vars = variable_multiset(s);

  SchemaT out = s;
  for (const auto& entry_pair : spec.variable_ranges) {
    const std::string& name = entry_pair.first;
    const RangeDescriptor& narrowed = entry_pair.second;
    auto it = vars.by_name.find(name);
    if (it == vars.by_name.end())
      throw Error(Errc::UnknownVariable, "no variable '" + name + "'");
    if (narrowed.is_empty(s.universe)) throw Error(Errc::EmptyRestriction, name);
    if (!narrowed.subset_of(it->second.range, s.universe))
      throw Error(Errc::NotASubset, name);

    auto narrow_element = [&](SchemaElement& el) {
      if (el.kind == SchemaElement::Kind::Variable && el.var_name == name)
        el.range = narrowed;
      if (el.kind == SchemaElement::Kind::Parameterized)
        for (auto& [pname, entry] : el.params)
          if (auto* pv = std::get_if<ParamVar>(&entry); pv && pv->name == name)
            pv->range = narrowed;
    };
    for (auto& [n, el] : out.nodes) narrow_element(el);
    for (auto& [l, slot] : out.links) narrow_element(slot.element);
    if constexpr (requires { out.ports; }) {
      for (auto& [p, slot] : out.ports) narrow_element(slot.element);
    }
  }

  if constexpr (requires { out.ports; }) {
    apply_restriction(out.internal_assignment, spec.internal_assignment, "assignment");
    apply_restriction(out.adjacency, spec.adjacency, "adjacency");
    apply_restriction(out.external_assignment, spec.external_assignment, "external");
    if (!spec.node_adjacency.empty())
      throw Error(Errc::SchemaMismatch, "node adjacency restriction on a port schema");
  } else {
    apply_restriction(out.node_adjacency, spec.node_adjacency, "adjacency");
    if (!spec.internal_assignment.empty() || !spec.adjacency.empty() ||
        !spec.external_assignment.empty())
      throw Error(Errc::SchemaMismatch, "port-level restriction on a basic schema");
  }
  out.provenance = Provenance{"determine", s.name, ""};
  return out;
}

}  // namespace

PortSchema abstract_elements(const PortSchema& s, const AbstractionSpec& spec) {
  return abstract_impl(s, spec);
}

BasicSchema abstract_elements(const BasicSchema& s, const AbstractionSpec& spec) {
  return abstract_impl(s, spec);
}

Schema abstract_elements(const Schema& s, const AbstractionSpec& spec) {
  return std::visit([&](const auto& v) -> Schema { return abstract_elements(v, spec); }, s);
}

PortSchema determine(const PortSchema& s, const DeterminationSpec& spec) {
  return determine_impl(s, spec);
}

BasicSchema determine(const BasicSchema& s, const DeterminationSpec& spec) {
  return determine_impl(s, spec);
}

Schema determine(const Schema& s, const DeterminationSpec& spec) {
  return std::visit([&](const auto& v) -> Schema { return determine(v, spec); }, s);
}

// ---------------------------------------------------------------------------
// compare

namespace {

std::map<std::string, ParamValue> element_params(const SchemaElement& el) {
  std::map<std::string, ParamValue> out;
  if (el.kind == SchemaElement::Kind::Parameterized)
    for (const auto& [k, entry] : el.params)
      if (const auto* v = std::get_if<ParamValue>(&entry)) out.emplace(k, *v);
  return out;
}

struct UnifyState {
  std::map<std::string, std::optional<BoundValue>> commitments;  // nullopt = stays unbound

  bool commit(const std::string& name, const std::optional<BoundValue>& v) {
    auto [it, fresh] = commitments.emplace(name, v);
    return fresh || it->second == v;
  }
};

// Can `to` be obtained from `from` by interpreting variables only?
bool unify_element(const SchemaElement& from, const SchemaElement& to,
                   const KindUniverse& u, UnifyState& st) {
  if (from.kind == SchemaElement::Kind::Variable) {
    if (to == from) return st.commit(from.var_name, std::nullopt);
    if (!to.fully_constant()) return false;
    if (!from.range.contains(to.constant_kind, u)) return false;
    return st.commit(from.var_name,
                     BoundValue{BoundConstant{to.constant_kind, element_params(to)}});
  }
  if (from.kind == SchemaElement::Kind::Parameterized) {
    if (to.kind != SchemaElement::Kind::Parameterized) return false;
    if (to.constant_kind != from.constant_kind) return false;
    if (to.params.size() != from.params.size()) return false;
    for (const auto& [pname, entry] : from.params) {
      auto tit = to.params.find(pname);
      if (tit == to.params.end()) return false;
      if (const auto* value = std::get_if<ParamValue>(&entry)) {
        if (tit->second != ParamEntry{*value}) return false;
      } else {
        const ParamVar& pv = std::get<ParamVar>(entry);
        if (tit->second == entry) {
          if (!st.commit(pv.name, std::nullopt)) return false;
        } else if (const auto* tv = std::get_if<ParamValue>(&tit->second)) {
          if (!pv.range.contains(*tv)) return false;
          if (!st.commit(pv.name, BoundValue{*tv})) return false;
        } else {
          return false;
        }
      }
    }
    return true;
  }
  return from == to;
}

template <class SchemaT>
bool same_shape(const SchemaT& s, const SchemaT& t) {
  if (s.universe != t.universe) return false;
  if (s.nodes.size() != t.nodes.size() || s.links.size() != t.links.size()) return false;
  for (const auto& [n, el] : s.nodes)
    if (!t.nodes.count(n)) return false;
  for (const auto& [l, slot] : s.links) {
    auto it = t.links.find(l);
    if (it == t.links.end() || it->second.link_class != slot.link_class ||
        it->second.channel != slot.channel)
      return false;
  }
  if constexpr (requires { s.ports; }) {
    if (s.ports.size() != t.ports.size()) return false;
    for (const auto& [p, slot] : s.ports) {
      auto it = t.ports.find(p);
      if (it == t.ports.end() || it->second.direction != slot.direction ||
          it->second.locus != slot.locus)
        return false;
    }
  }
  return true;
}

template <class SchemaT>
std::optional<Binding> concretization_witness(const SchemaT& s, const SchemaT& t) {
  if (!same_shape(s, t)) return std::nullopt;
  if constexpr (requires { s.ports; }) {
    if (s.internal_assignment != t.internal_assignment || s.adjacency != t.adjacency ||
        s.external_assignment != t.external_assignment)
      return std::nullopt;
  } else {
    if (s.node_adjacency != t.node_adjacency) return std::nullopt;
  }

  UnifyState st;
  for (const auto& [n, el] : s.nodes)
    if (!unify_element(el, t.nodes.at(n), s.universe, st)) return std::nullopt;
  for (const auto& [l, slot] : s.links)
    if (!unify_element(slot.element, t.links.at(l).element, s.universe, st))
      return std::nullopt;
  if constexpr (requires { s.ports; }) {
    for (const auto& [p, slot] : s.ports)
      if (!unify_element(slot.element, t.ports.at(p).element, s.universe, st))
        return std::nullopt;
  }

  Binding b;
  for (const auto& [name, v] : st.commitments)
    if (v) b.by_name.emplace(name, *v);
  return b;
}

// Range/set restrictions turning s into t, when they exist.
template <class SchemaT>
std::optional<DeterminationSpec> determination_witness(const SchemaT& s, const SchemaT& t) {
  if (!same_shape(s, t)) return std::nullopt;

  DeterminationSpec spec;
  auto element_restricts = [&](const SchemaElement& from, const SchemaElement& to) {
    if (from.kind != to.kind) return false;
    if (from.kind == SchemaElement::Kind::Variable) {
      if (from.var_name != to.var_name) return false;
      if (!to.range.subset_of(from.range, s.universe)) return false;
      if (to.range != from.range) spec.variable_ranges[from.var_name] = to.range;
      return true;
    }
    if (from.kind == SchemaElement::Kind::Parameterized) {
      if (from.constant_kind != to.constant_kind ||
          from.params.size() != to.params.size())
        return false;
      for (const auto& [pname, entry] : from.params) {
        auto tit = to.params.find(pname);
        if (tit == to.params.end()) return false;
        const auto* fv = std::get_if<ParamVar>(&entry);
        const auto* tv = std::get_if<ParamVar>(&tit->second);
        if (fv && tv) {
          if (fv->name != tv->name) return false;
          if (!tv->range.subset_of(fv->range, s.universe)) return false;
          if (tv->range != fv->range) spec.variable_ranges[fv->name] = tv->range;
        } else if (entry != tit->second) {
          return false;
        }
      }
      return true;
    }
    return from == to;
  };

  for (const auto& [n, el] : s.nodes)
    if (!element_restricts(el, t.nodes.at(n))) return std::nullopt;
  for (const auto& [l, slot] : s.links)
    if (!element_restricts(slot.element, t.links.at(l).element)) return std::nullopt;

  auto set_restricts = [](const auto& from, const auto& to, auto& record) {
    for (const auto& [key, fset] : from) {
      const auto& tset = to.at(key);
      if (!std::includes(fset.begin(), fset.end(), tset.begin(), tset.end()))
        return false;
      if (tset != fset) record[key] = tset;
    }
    return true;
  };

  if constexpr (requires { s.ports; }) {
    for (const auto& [p, slot] : s.ports)
      if (!element_restricts(slot.element, t.ports.at(p).element)) return std::nullopt;
    if (s.internal_assignment.size() != t.internal_assignment.size() ||
        s.adjacency.size() != t.adjacency.size() ||
        s.external_assignment.size() != t.external_assignment.size())
      return std::nullopt;
    for (const auto& [p, owners] : s.internal_assignment)
      if (!t.internal_assignment.count(p)) return std::nullopt;
    for (const auto& [p, targets] : s.external_assignment)
      if (!t.external_assignment.count(p)) return std::nullopt;
    if (!set_restricts(s.internal_assignment, t.internal_assignment,
                       spec.internal_assignment))
      return std::nullopt;
    if (!set_restricts(s.adjacency, t.adjacency, spec.adjacency)) return std::nullopt;
    if (!set_restricts(s.external_assignment, t.external_assignment,
                       spec.external_assignment))
      return std::nullopt;
  } else {
    if (!set_restricts(s.node_adjacency, t.node_adjacency, spec.node_adjacency))
      return std::nullopt;
  }
  return spec;
}

template <class SchemaT>
CompareResult compare_impl(const SchemaT& s, const SchemaT& t_in) {
  auto sv = validate_schema(s);
  auto tv = validate_schema(t_in);
  if (!sv.empty() || !tv.empty())
    throw Error(Errc::InvalidSchema, "compare needs valid schemas");

  // The orders relate schema content; document names and annotations are
  // bookkeeping and do not count.
  SchemaT t = t_in;
  t.name = s.name;
  t.annotations = s.annotations;

  CompareResult out;
  if (auto b = concretization_witness(s, t)) {
    out.more_concrete = true;
    out.concrete_witness = std::move(*b);
  }
  if (auto b = concretization_witness(t, s)) {
    out.more_general = true;
    out.general_witness = std::move(*b);
  }
  if (auto d = determination_witness(s, t)) {
    out.more_determined = true;
    out.determined_witness = std::move(*d);
  }
  return out;
}

}  // namespace

CompareResult compare(const Schema& s, const Schema& t) {
  if (s.index() != t.index()) return {};
  if (std::holds_alternative<PortSchema>(s))
    return compare_impl(std::get<PortSchema>(s), std::get<PortSchema>(t));
  return compare_impl(std::get<BasicSchema>(s), std::get<BasicSchema>(t));
}

// ---------------------------------------------------------------------------
// strong equivalence

namespace {

struct RenameState {
  std::map<std::string, std::string> forward;
  std::map<std::string, std::string> backward;

  bool bind(const std::string& a, const std::string& b) {
    auto fit = forward.find(a);
    if (fit != forward.end()) return fit->second == b;
    auto bit = backward.find(b);
    if (bit != backward.end()) return false;
    forward.emplace(a, b);
    backward.emplace(b, a);
    return true;
  }
};

bool elements_match(const SchemaElement& a, const SchemaElement& b, RenameState& st) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case SchemaElement::Kind::Constant:
      return a == b;
    case SchemaElement::Kind::Variable:
      return a.range == b.range && st.bind(a.var_name, b.var_name);
    case SchemaElement::Kind::Parameterized: {
      if (a.constant_kind != b.constant_kind || a.params.size() != b.params.size())
        return false;
      for (const auto& [pname, entry] : a.params) {
        auto bit = b.params.find(pname);
        if (bit == b.params.end()) return false;
        const auto* av = std::get_if<ParamVar>(&entry);
        const auto* bv = std::get_if<ParamVar>(&bit->second);
        if (av && bv) {
          if (av->range != bv->range || !st.bind(av->name, bv->name)) return false;
        } else if (entry != bit->second) {
          return false;
        }
      }
      return true;
    }
  }
  return false;
}

// Backtracking isomorphism search with variable renaming. Works for both
// flavors; the port block is compiled away for basic schemas.
template <class SchemaT>
class IsoSearch {
 public:
  IsoSearch(const SchemaT& s, const SchemaT& t, std::size_t budget)
      : s_(s), t_(t), budget_(budget) {
    for (const auto& [n, el] : s_.nodes) s_nodes_.push_back(n);
    for (const auto& [n, el] : t_.nodes) t_nodes_.push_back(n);
    for (const auto& [l, slot] : s_.links) s_links_.push_back(l);
    for (const auto& [l, slot] : t_.links) t_links_.push_back(l);
    if constexpr (requires { s_.ports; }) {
      for (const auto& [p, slot] : s_.ports) s_ports_.push_back(p);
      for (const auto& [p, slot] : t_.ports) t_ports_.push_back(p);
    }
  }

  std::optional<Renaming> run() {
    if (s_nodes_.size() != t_nodes_.size() || s_links_.size() != t_links_.size() ||
        s_ports_.size() != t_ports_.size())
      return std::nullopt;
    if (match_node(0)) return result_;
    return std::nullopt;
  }

 private:
  void spend() {
    if (++steps_ > budget_)
      throw Error(Errc::SearchSpaceTooLarge, "equivalence search budget exceeded");
  }

  bool match_node(std::size_t i) {
    if (i == s_nodes_.size()) return match_port(0);
    const NodeId& a = s_nodes_[i];
    for (const NodeId& b : t_nodes_) {
      spend();
      if (used_nodes_.count(b)) continue;
      RenameState saved = names_;
      if (elements_match(s_.nodes.at(a), t_.nodes.at(b), names_)) {
        node_map_[a] = b;
        used_nodes_.insert(b);
        if (match_node(i + 1)) return true;
        used_nodes_.erase(b);
        node_map_.erase(a);
      }
      names_ = saved;
    }
    return false;
  }

  bool match_port(std::size_t i) {
    if constexpr (!requires { s_.ports; }) {
      (void)i;
      return match_link(0);
    } else {
      if (i == s_ports_.size()) return match_link(0);
      const PortId& a = s_ports_[i];
      const auto& aslot = s_.ports.at(a);
      for (const PortId& b : t_ports_) {
        spend();
        if (used_ports_.count(b)) continue;
        const auto& bslot = t_.ports.at(b);
        if (aslot.direction != bslot.direction || aslot.locus != bslot.locus) continue;
        RenameState saved = names_;
        if (elements_match(aslot.element, bslot.element, names_) &&
            owners_match(a, b)) {
          port_map_[a] = b;
          used_ports_.insert(b);
          if (match_port(i + 1)) return true;
          used_ports_.erase(b);
          port_map_.erase(a);
        }
        names_ = saved;
      }
      return false;
    }
  }

  bool owners_match(const PortId& a, const PortId& b) {
    if constexpr (requires { s_.ports; }) {
      auto ait = s_.internal_assignment.find(a);
      auto bit = t_.internal_assignment.find(b);
      if ((ait == s_.internal_assignment.end()) != (bit == t_.internal_assignment.end()))
        return false;
      if (ait == s_.internal_assignment.end()) return true;
      if (ait->second.size() != bit->second.size()) return false;
      std::set<NodeId> mapped;
      for (const auto& n : ait->second) mapped.insert(node_map_.at(n));
      return mapped == bit->second;
    }
    return true;
  }

  bool match_link(std::size_t i) {
    if (i == s_links_.size()) return finish();
    const LinkId& a = s_links_[i];
    const auto& aslot = s_.links.at(a);
    for (const LinkId& b : t_links_) {
      spend();
      if (used_links_.count(b)) continue;
      const auto& bslot = t_.links.at(b);
      if (aslot.link_class != bslot.link_class || aslot.channel != bslot.channel)
        continue;
      RenameState saved = names_;
      if (elements_match(aslot.element, bslot.element, names_) && adjacency_match(a, b)) {
        link_map_[a] = b;
        used_links_.insert(b);
        if (match_link(i + 1)) return true;
        used_links_.erase(b);
        link_map_.erase(a);
      }
      names_ = saved;
    }
    return false;
  }

  bool adjacency_match(const LinkId& a, const LinkId& b) {
    if constexpr (requires { s_.ports; }) {
      const auto& aset = s_.adjacency.at(a);
      const auto& bset = t_.adjacency.at(b);
      if (aset.size() != bset.size()) return false;
      std::set<PortAttachment> mapped;
      for (const auto& att : aset) {
        PortAttachment m;
        m.kind = att.kind;
        if (att.begin) m.begin = port_map_.at(*att.begin);
        if (att.end) m.end = port_map_.at(*att.end);
        mapped.insert(m);
      }
      return mapped == bset;
    } else {
      const auto& aset = s_.node_adjacency.at(a);
      const auto& bset = t_.node_adjacency.at(b);
      if (aset.size() != bset.size()) return false;
      std::set<NodeAttachment> mapped;
      for (const auto& att : aset) {
        NodeAttachment m;
        m.kind = att.kind;
        if (att.begin) m.begin = node_map_.at(*att.begin);
        if (att.end) m.end = node_map_.at(*att.end);
        mapped.insert(m);
      }
      return mapped == bset;
    }
  }

  bool finish() {
    if constexpr (requires { s_.ports; }) {
      // External assignments can reference links, so check them last.
      if (s_.external_assignment.size() != t_.external_assignment.size()) return false;
      for (const auto& [p, targets] : s_.external_assignment) {
        auto it = t_.external_assignment.find(port_map_.at(p));
        if (it == t_.external_assignment.end()) return false;
        std::set<ExternalTarget> mapped;
        for (const auto& target : targets) {
          ExternalTarget m = target;
          switch (target.kind) {
            case ExternalTarget::Kind::Node:
              m.id = node_map_.at(NodeId{target.id}).value;
              break;
            case ExternalTarget::Kind::Port:
              m.id = port_map_.at(PortId{target.id}).value;
              break;
            case ExternalTarget::Kind::Link:
              m.id = link_map_.at(LinkId{target.id}).value;
              break;
          }
          mapped.insert(m);
        }
        if (mapped != it->second) return false;
      }
    }
    result_.variables = names_.forward;
    result_.nodes = node_map_;
    result_.ports = port_map_;
    result_.links = link_map_;
    return true;
  }

  const SchemaT& s_;
  const SchemaT& t_;
  std::vector<NodeId> s_nodes_, t_nodes_;
  std::vector<PortId> s_ports_, t_ports_;
  std::vector<LinkId> s_links_, t_links_;
  std::map<NodeId, NodeId> node_map_;
  std::map<PortId, PortId> port_map_;
  std::map<LinkId, LinkId> link_map_;
  std::set<NodeId> used_nodes_;
  std::set<PortId> used_ports_;
  std::set<LinkId> used_links_;
  RenameState names_;
  Renaming result_;
  std::size_t budget_;
  std::size_t steps_ = 0;
};

template <class SchemaT>
StrongEquivalence strongly_equivalent_impl(const SchemaT& s, const SchemaT& t) {
  auto sv = validate_schema(s);
  auto tv = validate_schema(t);
  if (!sv.empty() || !tv.empty())
    throw Error(Errc::InvalidSchema, "strong equivalence needs valid schemas");
  if (s.universe != t.universe) return {};
  IsoSearch<SchemaT> search(s, t, 5000000);
  if (auto witness = search.run()) return {true, std::move(witness)};
  return {};
}

}  // namespace

StrongEquivalence strongly_equivalent(const Schema& s, const Schema& t) {
  if (s.index() != t.index()) return {};
  if (std::holds_alternative<PortSchema>(s))
    return strongly_equivalent_impl(std::get<PortSchema>(s), std::get<PortSchema>(t));
  return strongly_equivalent_impl(std::get<BasicSchema>(s), std::get<BasicSchema>(t));
}

// ---------------------------------------------------------------------------
// realization enumeration and plain equivalence

namespace {

template <class SchemaT, class AutomatonT>
std::vector<AutomatonT> enumerate_impl(const SchemaT& s, std::size_t budget) {
  VariableMultiset vars = variable_multiset(s);
  if (!is_deterministic(s)) return {};

  std::vector<std::string> names;
  std::vector<std::vector<BoundValue>> choices;
  double product = 1.0;
  for (const auto& [name, info] : vars.by_name) {
    names.push_back(name);
    std::vector<BoundValue> vals;
    if (info.range.kind == RangeDescriptor::Kind::ParamSet) {
      for (const auto& v : info.range.values) vals.push_back(v);
    } else {
      for (const auto& k : info.range.enumerate_kinds(s.universe))
        vals.push_back(BoundConstant{k, {}});
    }
    if (vals.empty()) return {};
    product *= static_cast<double>(vals.size());
    choices.push_back(std::move(vals));
  }
  if (product > static_cast<double>(budget))
    throw Error(Errc::SearchSpaceTooLarge, "realization enumeration budget exceeded");

  std::vector<AutomatonT> out;
  std::vector<std::size_t> pick(names.size(), 0);
  while (true) {
    Binding b;
    for (std::size_t i = 0; i < names.size(); ++i)
      b.by_name.emplace(names[i], choices[i][pick[i]]);
    out.push_back(realize(s, b));
    std::size_t i = names.size();
    bool advanced = false;
    while (i > 0) {
      --i;
      if (++pick[i] < choices[i].size()) {
        advanced = true;
        break;
      }
      pick[i] = 0;
    }
    if (!advanced) break;
  }
  return out;
}

template <class SchemaT, class AutomatonT>
bool equivalent_impl(const SchemaT& s, const SchemaT& t,
                     const std::function<bool(const AutomatonT&)>& in_class) {
  auto collect = [&](const SchemaT& schema) {
    std::set<std::string> forms;
    for (const auto& automaton : enumerate_impl<SchemaT, AutomatonT>(schema, 200000))
      if (!in_class || in_class(automaton)) forms.insert(canonical_form(automaton));
    return forms;
  };
  return collect(s) == collect(t);
}

}  // namespace

std::vector<GridAutomaton> enumerate_realizations(const PortSchema& s, std::size_t budget) {
  return enumerate_impl<PortSchema, GridAutomaton>(s, budget);
}

std::vector<BasicGridAutomaton> enumerate_realizations(const BasicSchema& s,
                                                       std::size_t budget) {
  return enumerate_impl<BasicSchema, BasicGridAutomaton>(s, budget);
}

bool equivalent(const PortSchema& s, const PortSchema& t,
                const std::function<bool(const GridAutomaton&)>& in_class) {
  return equivalent_impl<PortSchema, GridAutomaton>(s, t, in_class);
}

bool equivalent(const BasicSchema& s, const BasicSchema& t,
                const std::function<bool(const BasicGridAutomaton&)>& in_class) {
  return equivalent_impl<BasicSchema, BasicGridAutomaton>(s, t, in_class);
}

// ---------------------------------------------------------------------------
// maximal abstraction and closure

PortSchema maximal_abstraction(const PortSchema& s) {
  auto v = validate_schema(s);
  if (!v.empty()) throw Error(Errc::InvalidSchema, "maximal abstraction needs a valid schema");

  PortSchema out = s;
  for (auto& [n, el] : out.nodes)
    el = SchemaElement::variable("N_" + n.value, RangeDescriptor::universal(Sort::Node));
  for (auto& [p, slot] : out.ports)
    slot.element =
        SchemaElement::variable("P_" + p.value, RangeDescriptor::universal(Sort::Port));
  for (auto& [l, slot] : out.links)
    slot.element =
        SchemaElement::variable("L_" + l.value, RangeDescriptor::universal(Sort::Link));

  std::set<NodeId> all_nodes;
  for (const auto& [n, el] : s.nodes) all_nodes.insert(n);
  std::set<PortId> inlets, outlets;
  for (const auto& [p, slot] : s.ports)
    if (slot.locus == PortLocus::Internal) {
      if (slot.direction == PortDirection::Inlet) inlets.insert(p);
      else outlets.insert(p);
    }

  for (auto& [p, owners] : out.internal_assignment) owners = all_nodes;

  std::set<PortAttachment> every_attachment;
  for (const auto& o : outlets) {
    every_attachment.insert(PortAttachment::begin_only(o));
    for (const auto& i : inlets) every_attachment.insert(PortAttachment::closed(o, i));
  }
  for (const auto& i : inlets) every_attachment.insert(PortAttachment::end_only(i));
  for (auto& [l, options] : out.adjacency) options = every_attachment;

  std::set<ExternalTarget> every_target;
  for (const auto& n : all_nodes) every_target.insert(ExternalTarget::node(n));
  for (const auto& p : inlets) every_target.insert(ExternalTarget::port(p));
  for (const auto& p : outlets) every_target.insert(ExternalTarget::port(p));
  for (const auto& [l, slot] : s.links) every_target.insert(ExternalTarget::link(l));
  for (auto& [p, targets] : out.external_assignment) targets = every_target;

  out.provenance = Provenance{"maxabs", s.name, ""};
  return out;
}

BasicSchema maximal_abstraction(const BasicSchema& s) {
  auto v = validate_schema(s);
  if (!v.empty()) throw Error(Errc::InvalidSchema, "maximal abstraction needs a valid schema");

  BasicSchema out = s;
  for (auto& [n, el] : out.nodes)
    el = SchemaElement::variable("N_" + n.value, RangeDescriptor::universal(Sort::Node));
  for (auto& [l, slot] : out.links)
    slot.element =
        SchemaElement::variable("L_" + l.value, RangeDescriptor::universal(Sort::Link));

  std::set<NodeAttachment> every_attachment;
  for (const auto& [a, ael] : s.nodes) {
    every_attachment.insert(NodeAttachment::begin_only(a));
    every_attachment.insert(NodeAttachment::end_only(a));
    for (const auto& [b, bel] : s.nodes)
      every_attachment.insert(NodeAttachment::closed(a, b));
  }
  for (auto& [l, options] : out.node_adjacency) options = every_attachment;

  out.provenance = Provenance{"maxabs", s.name, ""};
  return out;
}

Schema maximal_abstraction(const Schema& s) {
  return std::visit([](const auto& v) -> Schema { return maximal_abstraction(v); }, s);
}

KindPath environment_stub_kind() { return KindPath{{"environment_stub"}}; }

namespace {

std::string fresh_id(const std::set<std::string>& taken, std::string base) {
  while (taken.count(base)) base += '_';
  return base;
}

CloseResult close_port(const PortSchema& s) {
  auto v = validate_schema(s);
  if (!v.empty()) throw Error(Errc::InvalidSchema, "closure needs a valid schema");

  PortSchema out = s;
  ClosureEmbedding emb;

  std::set<std::string> node_ids, port_ids;
  for (const auto& [n, el] : s.nodes) node_ids.insert(n.value);
  for (const auto& [p, slot] : s.ports) port_ids.insert(p.value);

  auto add_stub_node = [&](const std::string& base) {
    NodeId stub{fresh_id(node_ids, base)};
    node_ids.insert(stub.value);
    out.nodes.emplace(stub, SchemaElement::constant(environment_stub_kind()));
    out.universe.register_kind(Sort::Node, environment_stub_kind());
    emb.added_nodes.insert(stub);
    return stub;
  };
  auto add_stub_port = [&](const std::string& base, PortDirection dir, const NodeId& owner) {
    PortId port{fresh_id(port_ids, base)};
    port_ids.insert(port.value);
    out.ports.emplace(port, PortSlot{dir, PortLocus::Internal,
                                     SchemaElement::constant(generic_port_kind())});
    out.internal_assignment[port] = {owner};
    emb.added_ports.insert(port);
    return port;
  };

  for (const auto& [l, options] : s.adjacency) {
    bool open = std::any_of(options.begin(), options.end(),
                            [](const PortAttachment& a) { return !a.is_closed(); });
    if (!open) continue;
    emb.absorbed_links.insert(l);
    NodeId stub = add_stub_node("env_" + l.value);
    std::optional<PortId> stub_in, stub_out;
    std::set<PortAttachment> closed;
    for (const auto& att : options) {
      switch (att.kind) {
        case AttachmentCase::Closed:
          closed.insert(att);
          break;
        case AttachmentCase::BeginOnly:
          if (!stub_in)
            stub_in = add_stub_port(stub.value + "_in", PortDirection::Inlet, stub);
          closed.insert(PortAttachment::closed(*att.begin, *stub_in));
          break;
        case AttachmentCase::EndOnly:
          if (!stub_out)
            stub_out = add_stub_port(stub.value + "_out", PortDirection::Outlet, stub);
          closed.insert(PortAttachment::closed(*stub_out, *att.end));
          break;
      }
    }
    out.adjacency[l] = std::move(closed);
  }

  std::vector<PortId> externals;
  for (const auto& [p, slot] : s.ports)
    if (slot.locus == PortLocus::External) externals.push_back(p);
  if (!externals.empty()) {
    NodeId home = add_stub_node("env_ports");
    for (const auto& p : externals) {
      auto eit = s.external_assignment.find(p);
      emb.rehomed_ports[p] =
          eit == s.external_assignment.end() ? std::set<ExternalTarget>{} : eit->second;
      out.external_assignment.erase(p);
      out.ports.at(p).locus = PortLocus::Internal;
      out.internal_assignment[p] = {home};
    }
  }

  out.provenance = Provenance{"close", s.name, ""};
  if (emb.identity()) return {s, emb};
  return {std::move(out), std::move(emb)};
}

CloseResult close_basic(const BasicSchema& s) {
  auto v = validate_schema(s);
  if (!v.empty()) throw Error(Errc::InvalidSchema, "closure needs a valid schema");

  BasicSchema out = s;
  ClosureEmbedding emb;
  std::set<std::string> node_ids;
  for (const auto& [n, el] : s.nodes) node_ids.insert(n.value);

  for (const auto& [l, options] : s.node_adjacency) {
    bool open = std::any_of(options.begin(), options.end(),
                            [](const NodeAttachment& a) { return !a.is_closed(); });
    if (!open) continue;
    emb.absorbed_links.insert(l);
    NodeId stub{fresh_id(node_ids, "env_" + l.value)};
    node_ids.insert(stub.value);
    out.nodes.emplace(stub, SchemaElement::constant(environment_stub_kind()));
    out.universe.register_kind(Sort::Node, environment_stub_kind());
    emb.added_nodes.insert(stub);
    std::set<NodeAttachment> closed;
    for (const auto& att : options) {
      switch (att.kind) {
        case AttachmentCase::Closed: closed.insert(att); break;
        case AttachmentCase::BeginOnly:
          closed.insert(NodeAttachment::closed(*att.begin, stub));
          break;
        case AttachmentCase::EndOnly:
          closed.insert(NodeAttachment::closed(stub, *att.end));
          break;
      }
    }
    out.node_adjacency[l] = std::move(closed);
  }

  out.provenance = Provenance{"close", s.name, ""};
  if (emb.identity()) return {s, emb};
  return {std::move(out), std::move(emb)};
}

}  // namespace

CloseResult close_schema(const Schema& s) {
  if (std::holds_alternative<PortSchema>(s)) return close_port(std::get<PortSchema>(s));
  return close_basic(std::get<BasicSchema>(s));
}

}  // namespace schemata

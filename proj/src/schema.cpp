#include "schemata/schema.hpp"

#include <algorithm>

namespace schemata {

RangeDescriptor RangeDescriptor::kind_set(Sort s, std::set<KindPath> ks) {
  RangeDescriptor r;
  r.kind = Kind::KindSet;
  r.sort = s;
  r.kinds = std::move(ks);
  return r;
}

RangeDescriptor RangeDescriptor::universal(Sort s) {
  RangeDescriptor r;
  r.kind = Kind::Universal;
  r.sort = s;
  return r;
}

RangeDescriptor RangeDescriptor::param_set(std::set<ParamValue> vs) {
  RangeDescriptor r;
  r.kind = Kind::ParamSet;
  r.values = std::move(vs);
  return r;
}

bool RangeDescriptor::contains(const KindPath& k, const KindUniverse& u) const {
  switch (kind) {
    case Kind::KindSet: return kinds.count(k) > 0;
    case Kind::Universal: return u.contains(sort, k);
    case Kind::ParamSet: return false;
  }
  return false;
}

bool RangeDescriptor::contains(const ParamValue& v) const {
  return kind == Kind::ParamSet && values.count(v) > 0;
}

bool RangeDescriptor::is_empty(const KindUniverse& u) const {
  switch (kind) {
    case Kind::KindSet: return kinds.empty();
    case Kind::Universal: return u.kinds(sort).empty();
    case Kind::ParamSet: return values.empty();
  }
  return true;
}

bool RangeDescriptor::subset_of(const RangeDescriptor& other, const KindUniverse& u) const {
  if (kind == Kind::ParamSet || other.kind == Kind::ParamSet) {
    if (kind != Kind::ParamSet || other.kind != Kind::ParamSet) return false;
    return std::includes(other.values.begin(), other.values.end(),
                         values.begin(), values.end());
  }
  if (sort != other.sort) return false;
  if (other.kind == Kind::Universal) {
    if (kind == Kind::Universal) return true;
    return std::all_of(kinds.begin(), kinds.end(),
                       [&](const KindPath& k) { return u.contains(sort, k); });
  }
  // other is an explicit kind set
  if (kind == Kind::Universal)
    return std::includes(other.kinds.begin(), other.kinds.end(),
                         u.kinds(sort).begin(), u.kinds(sort).end());
  return std::includes(other.kinds.begin(), other.kinds.end(),
                       kinds.begin(), kinds.end());
}

std::vector<KindPath> RangeDescriptor::enumerate_kinds(const KindUniverse& u) const {
  std::vector<KindPath> out;
  if (kind == Kind::KindSet)
    out.assign(kinds.begin(), kinds.end());
  else if (kind == Kind::Universal)
    out.assign(u.kinds(sort).begin(), u.kinds(sort).end());
  return out;
}

SchemaElement SchemaElement::constant(KindPath k) {
  SchemaElement e;
  e.kind = Kind::Constant;
  e.constant_kind = std::move(k);
  return e;
}

SchemaElement SchemaElement::variable(std::string name, RangeDescriptor r) {
  SchemaElement e;
  e.kind = Kind::Variable;
  e.var_name = std::move(name);
  e.range = std::move(r);
  return e;
}

SchemaElement SchemaElement::parameterized(KindPath k,
                                           std::map<std::string, ParamEntry> ps) {
  SchemaElement e;
  e.kind = Kind::Parameterized;
  e.constant_kind = std::move(k);
  e.params = std::move(ps);
  return e;
}

bool SchemaElement::fully_constant() const {
  if (kind == Kind::Constant) return true;
  if (kind == Kind::Variable) return false;
  return std::all_of(params.begin(), params.end(), [](const auto& kv) {
    return std::holds_alternative<ParamValue>(kv.second);
  });
}

bool PortSchema::operator==(const PortSchema& other) const {
  return name == other.name && universe == other.universe && nodes == other.nodes &&
         ports == other.ports && links == other.links &&
         internal_assignment == other.internal_assignment &&
         adjacency == other.adjacency &&
         external_assignment == other.external_assignment &&
         annotations == other.annotations;
}

bool BasicSchema::operator==(const BasicSchema& other) const {
  return name == other.name && universe == other.universe && nodes == other.nodes &&
         links == other.links && node_adjacency == other.node_adjacency &&
         annotations == other.annotations;
}

std::string occurrence_str(const OccurrenceRef& o) {
  const char* slot = o.slot == OccurrenceRef::Slot::Node   ? "node"
                     : o.slot == OccurrenceRef::Slot::Port ? "port"
                                                           : "link";
  std::string out = std::string(slot) + ":" + o.id;
  if (!o.param.empty()) out += "." + o.param;
  return out;
}

std::size_t VariableMultiset::total_occurrences() const {
  std::size_t n = 0;
  for (const auto& [name, info] : by_name) n += info.occurrences.size();
  return n;
}

namespace {

Sort slot_sort(OccurrenceRef::Slot s) {
  switch (s) {
    case OccurrenceRef::Slot::Node: return Sort::Node;
    case OccurrenceRef::Slot::Port: return Sort::Port;
    case OccurrenceRef::Slot::Link: return Sort::Link;
  }
  return Sort::Node;
}

// Collects variable occurrences of one element into the multiset and checks
// name/range consistency.
void collect_element(const SchemaElement& el, OccurrenceRef::Slot slot,
                     const std::string& id, std::map<std::string, VariableInfo>& vars,
                     std::vector<Violation>* violations, const KindUniverse& u) {
  auto add = [&](const std::string& name, const RangeDescriptor& range,
                 const std::string& param) {
    OccurrenceRef ref{slot, id, param};
    auto [it, fresh] = vars.try_emplace(name);
    if (fresh) {
      it->second.range = range;
    } else if (it->second.range != range && violations) {
      violations->push_back({"RangeConflict", name,
                             "occurrence " + occurrence_str(ref) +
                                 " declares a different range"});
    }
    it->second.occurrences.push_back(ref);
    if (violations && range.is_empty(u))
      violations->push_back({"EmptyRange", name, "at " + occurrence_str(ref)});
  };

  if (el.kind == SchemaElement::Kind::Variable) {
    add(el.var_name, el.range, "");
    if (violations && el.range.kind != RangeDescriptor::Kind::ParamSet &&
        el.range.sort != slot_sort(slot))
      violations->push_back({"RangeSortMismatch", el.var_name,
                             "range sort does not match its slot"});
    if (violations && el.range.kind == RangeDescriptor::Kind::ParamSet)
      violations->push_back({"RangeSortMismatch", el.var_name,
                             "element variable cannot range over parameter values"});
  } else if (el.kind == SchemaElement::Kind::Parameterized) {
    for (const auto& [pname, entry] : el.params)
      if (const auto* pv = std::get_if<ParamVar>(&entry)) {
        add(pv->name, pv->range, pname);
        if (violations && pv->range.kind != RangeDescriptor::Kind::ParamSet)
          violations->push_back({"RangeSortMismatch", pv->name,
                                 "parameter variable needs a value domain"});
      }
  }
}

void finish_multiset(VariableMultiset& m) {
  for (auto& [name, info] : m.by_name) {
    std::set<OccurrenceRef::Slot> slots;
    for (const auto& occ : info.occurrences) slots.insert(occ.slot);
    if (info.occurrences.size() <= 1)
      info.scope = VariableScope::Individual;
    else if (slots.size() == 1)
      info.scope = VariableScope::Local;
    else
      info.scope = VariableScope::Global;

    // Descriptive dynamic typology: ranges over algorithm/schema classes are
    // function variables, link-sort ranges are process variables, the rest
    // are system variables.
    info.dynamic_type = DynamicType::System;
    if (info.range.kind == RangeDescriptor::Kind::KindSet ||
        info.range.kind == RangeDescriptor::Kind::Universal) {
      if (info.range.sort == Sort::Link) {
        info.dynamic_type = DynamicType::Process;
      } else if (info.range.kind == RangeDescriptor::Kind::KindSet &&
                 !info.range.kinds.empty() &&
                 std::all_of(info.range.kinds.begin(), info.range.kinds.end(),
                             [](const KindPath& k) {
                               return !k.tags.empty() &&
                                      (k.tags.front() == "algorithm" ||
                                       k.tags.front() == "schema" ||
                                       k.tags.front() == "function");
                             })) {
        info.dynamic_type = DynamicType::Function;
      }
    }
  }
}

template <class SchemaT>
VariableMultiset multiset_of(const SchemaT& s, std::vector<Violation>* violations);

template <>
VariableMultiset multiset_of(const PortSchema& s, std::vector<Violation>* violations) {
  VariableMultiset m;
  for (const auto& [n, el] : s.nodes)
    collect_element(el, OccurrenceRef::Slot::Node, n.value, m.by_name, violations, s.universe);
  for (const auto& [p, slot] : s.ports)
    collect_element(slot.element, OccurrenceRef::Slot::Port, p.value, m.by_name,
                    violations, s.universe);
  for (const auto& [l, slot] : s.links)
    collect_element(slot.element, OccurrenceRef::Slot::Link, l.value, m.by_name,
                    violations, s.universe);
  finish_multiset(m);
  return m;
}

template <>
VariableMultiset multiset_of(const BasicSchema& s, std::vector<Violation>* violations) {
  VariableMultiset m;
  for (const auto& [n, el] : s.nodes)
    collect_element(el, OccurrenceRef::Slot::Node, n.value, m.by_name, violations, s.universe);
  for (const auto& [l, slot] : s.links)
    collect_element(slot.element, OccurrenceRef::Slot::Link, l.value, m.by_name,
                    violations, s.universe);
  finish_multiset(m);
  return m;
}

void require_valid_port(const PortSchema& s) {
  auto v = validate_schema(s);
  if (!v.empty())
    throw Error(Errc::InvalidSchema, "'" + s.name + "': " + v.front().rule + " on '" +
                                         v.front().element + "'");
}

void require_valid_basic(const BasicSchema& s) {
  auto v = validate_schema(s);
  if (!v.empty())
    throw Error(Errc::InvalidSchema, "'" + s.name + "': " + v.front().rule + " on '" +
                                         v.front().element + "'");
}

}  // namespace

std::vector<Violation> validate_schema(const PortSchema& s) {
  std::vector<Violation> out;

  for (const auto& [p, slot] : s.ports) {
    if (slot.locus == PortLocus::Internal) {
      auto it = s.internal_assignment.find(p);
      if (it == s.internal_assignment.end() || it->second.empty()) {
        out.push_back({it == s.internal_assignment.end() ? "DanglingPort" : "EmptySet",
                       p.value, "internal port has no admissible owner"});
      } else {
        for (const auto& n : it->second)
          if (!s.nodes.count(n))
            out.push_back({"UnknownNode", p.value,
                           "owner option '" + n.value + "' is not a node"});
      }
      if (s.external_assignment.count(p))
        out.push_back({"LocusViolation", p.value,
                       "internal port carries an external assignment"});
    } else {
      if (s.internal_assignment.count(p))
        out.push_back({"LocusViolation", p.value,
                       "external port carries an internal assignment"});
      auto it = s.external_assignment.find(p);
      if (it != s.external_assignment.end()) {
        if (it->second.empty())
          out.push_back({"EmptySet", p.value, "external assignment set is empty"});
        for (const auto& t : it->second) {
          bool ok = false;
          switch (t.kind) {
            case ExternalTarget::Kind::Node: ok = s.nodes.count(NodeId{t.id}); break;
            case ExternalTarget::Kind::Port: {
              auto pit = s.ports.find(PortId{t.id});
              ok = pit != s.ports.end() && pit->second.locus == PortLocus::Internal;
              break;
            }
            case ExternalTarget::Kind::Link: ok = s.links.count(LinkId{t.id}); break;
          }
          if (!ok)
            out.push_back({"UnknownTarget", p.value,
                           "external option references missing element '" + t.id + "'"});
        }
      }
    }
  }

  for (const auto& [p, owners] : s.internal_assignment)
    if (!s.ports.count(p))
      out.push_back({"UnknownPort", p.value, "assignment entry for undeclared port"});
  for (const auto& [p, targets] : s.external_assignment)
    if (!s.ports.count(p))
      out.push_back({"UnknownPort", p.value, "external entry for undeclared port"});

  auto check_end = [&](const LinkId& l, const std::optional<PortId>& p,
                       PortDirection want, const char* side) {
    if (!p) return;
    auto it = s.ports.find(*p);
    if (it == s.ports.end()) {
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

  for (const auto& [l, slot] : s.links) {
    auto it = s.adjacency.find(l);
    if (it == s.adjacency.end() || it->second.empty()) {
      out.push_back({it == s.adjacency.end() ? "MissingAdjacency" : "EmptySet", l.value,
                     "link has no admissible attachment"});
      continue;
    }
    for (const auto& att : it->second) {
      check_end(l, att.begin, PortDirection::Outlet, "begin");
      check_end(l, att.end, PortDirection::Inlet, "end");
    }
  }
  for (const auto& [l, options] : s.adjacency)
    if (!s.links.count(l))
      out.push_back({"UnknownLink", l.value, "adjacency entry for undeclared link"});

  multiset_of(s, &out);
  return out;
}

std::vector<Violation> validate_schema(const BasicSchema& s) {
  std::vector<Violation> out;
  for (const auto& [l, slot] : s.links) {
    auto it = s.node_adjacency.find(l);
    if (it == s.node_adjacency.end() || it->second.empty()) {
      out.push_back({it == s.node_adjacency.end() ? "MissingAdjacency" : "EmptySet",
                     l.value, "link has no admissible attachment"});
      continue;
    }
    for (const auto& att : it->second) {
      if (att.begin && !s.nodes.count(*att.begin))
        out.push_back({"UnknownNode", l.value,
                       "attachment references missing node '" + att.begin->value + "'"});
      if (att.end && !s.nodes.count(*att.end))
        out.push_back({"UnknownNode", l.value,
                       "attachment references missing node '" + att.end->value + "'"});
    }
  }
  for (const auto& [l, options] : s.node_adjacency)
    if (!s.links.count(l))
      out.push_back({"UnknownLink", l.value, "adjacency entry for undeclared link"});
  multiset_of(s, &out);
  return out;
}

std::vector<Violation> validate_schema(const Schema& s) {
  return std::visit([](const auto& v) { return validate_schema(v); }, s);
}

VariableMultiset variable_multiset(const PortSchema& s) {
  require_valid_port(s);
  return multiset_of(s, nullptr);
}

VariableMultiset variable_multiset(const BasicSchema& s) {
  require_valid_basic(s);
  return multiset_of(s, nullptr);
}

VariableMultiset variable_multiset(const Schema& s) {
  return std::visit([](const auto& v) { return variable_multiset(v); }, s);
}

namespace {

std::set<NodeAttachment> lift_through_owners(
    const PortAttachment& att, const std::map<PortId, std::set<NodeId>>& owners) {
  std::set<NodeAttachment> out;
  switch (att.kind) {
    case AttachmentCase::Closed:
      for (const auto& a : owners.at(*att.begin))
        for (const auto& b : owners.at(*att.end))
          out.insert(NodeAttachment::closed(a, b));
      break;
    case AttachmentCase::BeginOnly:
      for (const auto& a : owners.at(*att.begin)) out.insert(NodeAttachment::begin_only(a));
      break;
    case AttachmentCase::EndOnly:
      for (const auto& b : owners.at(*att.end)) out.insert(NodeAttachment::end_only(b));
      break;
  }
  return out;
}

}  // namespace

BasicSchema derive_basic_schema(const PortSchema& s) {
  require_valid_port(s);
  BasicSchema b;
  b.name = s.name;
  b.universe = s.universe;
  b.nodes = s.nodes;
  b.links = s.links;
  b.annotations = s.annotations;
  for (const auto& [l, options] : s.adjacency) {
    std::set<NodeAttachment> lifted;
    for (const auto& att : options) {
      auto one = lift_through_owners(att, s.internal_assignment);
      lifted.insert(one.begin(), one.end());
    }
    b.node_adjacency.emplace(l, std::move(lifted));
  }
  return b;
}

VariableMultigraph schema_grid(const PortSchema& s) {
  require_valid_port(s);
  VariableMultigraph g;
  for (const auto& [n, el] : s.nodes) g.vertices.insert(vertex_of(n));
  for (const auto& [l, options] : s.adjacency) {
    std::set<Attachment> atts;
    for (const auto& att : options) {
      switch (att.kind) {
        case AttachmentCase::Closed:
          for (const auto& a : s.internal_assignment.at(*att.begin))
            for (const auto& b : s.internal_assignment.at(*att.end))
              atts.insert(Attachment::closed(vertex_of(a), vertex_of(b)));
          break;
        case AttachmentCase::BeginOnly:
          for (const auto& a : s.internal_assignment.at(*att.begin))
            atts.insert(Attachment::begin_only(vertex_of(a)));
          break;
        case AttachmentCase::EndOnly:
          for (const auto& b : s.internal_assignment.at(*att.end))
            atts.insert(Attachment::end_only(vertex_of(b)));
          break;
      }
    }
    g.edges.emplace(edge_of(l), std::move(atts));
  }
  return g;
}

VariableMultigraph schema_grid(const BasicSchema& s) {
  require_valid_basic(s);
  VariableMultigraph g;
  for (const auto& [n, el] : s.nodes) g.vertices.insert(vertex_of(n));
  for (const auto& [l, options] : s.node_adjacency) {
    std::set<Attachment> atts;
    for (const auto& att : options) {
      Attachment a;
      a.kind = att.kind;
      if (att.begin) a.begin = vertex_of(*att.begin);
      if (att.end) a.end = vertex_of(*att.end);
      atts.insert(a);
    }
    g.edges.emplace(edge_of(l), std::move(atts));
  }
  return g;
}

VariableMultigraph schema_grid(const Schema& s) {
  return std::visit([](const auto& v) { return schema_grid(v); }, s);
}

VariableMultigraph schema_connection_grid(const PortSchema& s) {
  require_valid_port(s);
  VariableMultigraph g;
  for (const auto& [p, slot] : s.ports)
    if (slot.locus == PortLocus::Internal) g.vertices.insert(vertex_of(p));
  for (const auto& [l, options] : s.adjacency) {
    std::set<Attachment> atts;
    for (const auto& att : options) {
      Attachment a;
      a.kind = att.kind;
      if (att.begin) a.begin = vertex_of(*att.begin);
      if (att.end) a.end = vertex_of(*att.end);
      atts.insert(a);
    }
    g.edges.emplace(edge_of(l), std::move(atts));
  }
  return g;
}

std::optional<GraphMorphism> schema_owner_morphism(const PortSchema& s) {
  GraphMorphism m;
  for (const auto& [p, slot] : s.ports) {
    if (slot.locus != PortLocus::Internal) continue;
    const auto& owners = s.internal_assignment.at(p);
    if (owners.size() != 1) return std::nullopt;
    m.vertex_map[vertex_of(p)] = vertex_of(*owners.begin());
  }
  for (const auto& [l, options] : s.adjacency) m.edge_map[edge_of(l)] = edge_of(l);
  return m;
}

std::set<PortId> free_ports(const PortSchema& s) {
  std::set<PortId> touched;
  for (const auto& [l, options] : s.adjacency)
    for (const auto& att : options) {
      if (att.begin) touched.insert(*att.begin);
      if (att.end) touched.insert(*att.end);
    }
  std::set<PortId> out;
  for (const auto& [p, slot] : s.ports) {
    if (touched.count(p)) continue;
    if (slot.locus == PortLocus::External && s.external_assignment.count(p)) continue;
    out.insert(p);
  }
  return out;
}

namespace {

SchemaClassification classify_from(const VariableMultigraph& grid, bool ext_in,
                                   bool ext_out, bool potentially_open) {
  SchemaClassification c;
  c.potentially_open = potentially_open;
  for (const auto& [has_end, has_begin] : achievable_openness(grid)) {
    bool in = ext_in || has_end;
    bool out = ext_out || has_begin;
    if (in && out) c.roles.insert(Role::Transducer);
    else if (in) c.roles.insert(Role::Acceptor);
    else if (out) c.roles.insert(Role::Transmitter);
    else c.roles.insert(Role::Closed);
  }
  return c;
}

}  // namespace

SchemaClassification classify_schema(const PortSchema& s) {
  bool ext_in = false, ext_out = false;
  for (const auto& [p, slot] : s.ports)
    if (slot.locus == PortLocus::External) {
      if (slot.direction == PortDirection::Inlet) ext_in = true;
      else ext_out = true;
    }
  return classify_from(schema_grid(s), ext_in, ext_out, !free_ports(s).empty());
}

SchemaClassification classify_schema(const BasicSchema& s) {
  return classify_from(schema_grid(s), false, false, false);
}

SchemaClassification classify_schema(const Schema& s) {
  return std::visit([](const auto& v) { return classify_schema(v); }, s);
}

bool is_deterministic(const PortSchema& s) {
  for (const auto& [p, owners] : s.internal_assignment)
    if (owners.size() != 1) return false;
  for (const auto& [l, options] : s.adjacency)
    if (options.size() != 1) return false;
  for (const auto& [p, targets] : s.external_assignment)
    if (targets.size() != 1) return false;
  return true;
}

bool is_deterministic(const BasicSchema& s) {
  for (const auto& [l, options] : s.node_adjacency)
    if (options.size() != 1) return false;
  return true;
}

namespace {

SchemaElement element_of(const KindPath& kind,
                         const std::map<std::string, ParamValue>& params) {
  if (params.empty()) return SchemaElement::constant(kind);
  std::map<std::string, ParamEntry> entries;
  for (const auto& [k, v] : params) entries.emplace(k, v);
  return SchemaElement::parameterized(kind, std::move(entries));
}

}  // namespace

PortSchema as_port_schema(const GridAutomaton& ga) {
  PortSchema s;
  s.name = ga.name;
  s.universe = ga.universe;
  for (const auto& [n, node] : ga.nodes) s.nodes.emplace(n, element_of(node.kind, node.params));
  for (const auto& [p, port] : ga.ports)
    s.ports.emplace(p, PortSlot{port.direction, port.locus, element_of(port.kind, port.params)});
  for (const auto& [l, link] : ga.links) {
    KindPath kind = link.kind.empty()
                        ? generic_link_kind(static_cast<int>(link.link_class))
                        : link.kind;
    s.links.emplace(l, LinkSlot{link.link_class, link.channel, element_of(kind, link.params)});
  }
  for (const auto& [p, n] : ga.internal_assignment) s.internal_assignment[p] = {n};
  for (const auto& [l, att] : ga.adjacency) s.adjacency[l] = {att};
  for (const auto& [p, t] : ga.external_assignment) s.external_assignment[p] = {t};
  return s;
}

BasicSchema as_basic_schema(const BasicGridAutomaton& ga) {
  BasicSchema s;
  s.name = ga.name;
  s.universe = ga.universe;
  for (const auto& [n, node] : ga.nodes) s.nodes.emplace(n, element_of(node.kind, node.params));
  for (const auto& [l, link] : ga.links) {
    KindPath kind = link.kind.empty()
                        ? generic_link_kind(static_cast<int>(link.link_class))
                        : link.kind;
    s.links.emplace(l, LinkSlot{link.link_class, link.channel, element_of(kind, link.params)});
  }
  for (const auto& [l, att] : ga.node_adjacency) s.node_adjacency[l] = {att};
  return s;
}

PortSchema embed_basic(const BasicSchema& s) {
  require_valid_basic(s);
  PortSchema p;
  p.name = s.name;
  p.universe = s.universe;
  p.nodes = s.nodes;
  p.links = s.links;
  p.annotations = s.annotations;
  for (const auto& [n, el] : s.nodes) {
    PortId in{n.value + "__in"}, out{n.value + "__out"};
    p.ports.emplace(in, PortSlot{PortDirection::Inlet, PortLocus::Internal,
                                 SchemaElement::constant(generic_port_kind())});
    p.ports.emplace(out, PortSlot{PortDirection::Outlet, PortLocus::Internal,
                                  SchemaElement::constant(generic_port_kind())});
    p.internal_assignment[in] = {n};
    p.internal_assignment[out] = {n};
  }
  for (const auto& [l, options] : s.node_adjacency) {
    std::set<PortAttachment> atts;
    for (const auto& att : options) {
      switch (att.kind) {
        case AttachmentCase::Closed:
          atts.insert(PortAttachment::closed(PortId{att.begin->value + "__out"},
                                             PortId{att.end->value + "__in"}));
          break;
        case AttachmentCase::BeginOnly:
          atts.insert(PortAttachment::begin_only(PortId{att.begin->value + "__out"}));
          break;
        case AttachmentCase::EndOnly:
          atts.insert(PortAttachment::end_only(PortId{att.end->value + "__in"}));
          break;
      }
    }
    p.adjacency.emplace(l, std::move(atts));
  }
  return p;
}

const std::string& schema_name(const Schema& s) {
  return std::visit([](const auto& v) -> const std::string& { return v.name; }, s);
}

}  // namespace schemata

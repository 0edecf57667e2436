#include "schemata/morphism.hpp"

#include <algorithm>

namespace schemata {

namespace {

template <class SchemaT>
void require_valid(const SchemaT& s) {
  auto v = validate_schema(s);
  if (!v.empty())
    throw Error(Errc::InvalidSchema, "'" + s.name + "': " + v.front().rule + " on '" +
                                         v.front().element + "'");
}

void require_valid_any(const Schema& s) {
  std::visit([](const auto& v) { require_valid(v); }, s);
}

// Pushes a set of attachments through an id map; nullopt when an endpoint
// has no image.
template <class Id>
std::optional<std::set<Attach<Id>>> map_attachments(const std::set<Attach<Id>>& atts,
                                                    const std::map<Id, Id>& m) {
  std::set<Attach<Id>> out;
  for (const auto& att : atts) {
    Attach<Id> mapped;
    mapped.kind = att.kind;
    if (att.begin) {
      auto it = m.find(*att.begin);
      if (it == m.end()) return std::nullopt;
      mapped.begin = it->second;
    }
    if (att.end) {
      auto it = m.find(*att.end);
      if (it == m.end()) return std::nullopt;
      mapped.end = it->second;
    }
    out.insert(mapped);
  }
  return out;
}

std::map<VertexId, VertexId> as_vertex_map(const std::map<NodeId, NodeId>& m) {
  std::map<VertexId, VertexId> out;
  for (const auto& [a, b] : m) out.emplace(vertex_of(a), vertex_of(b));
  return out;
}

// Node-level adjacency commutation: the mapped attachment options of every
// domain edge must be admissible for its image edge.
bool grids_commute(const VariableMultigraph& gs, const VariableMultigraph& gt,
                   const std::map<NodeId, NodeId>& node_map,
                   const std::map<LinkId, LinkId>& edge_map) {
  auto vm = as_vertex_map(node_map);
  for (const auto& [e, options] : gs.edges) {
    auto mapped = map_attachments(options, vm);
    if (!mapped) return false;
    auto it = gt.edges.find(edge_of(edge_map.at(LinkId{e.value})));
    if (it == gt.edges.end()) return false;
    if (!std::includes(it->second.begin(), it->second.end(), mapped->begin(),
                       mapped->end()))
      return false;
  }
  return true;
}

const SchemaElement& element_at_node(const PortSchema& s, const NodeId& n) {
  return s.nodes.at(n);
}
const SchemaElement& element_at_node(const BasicSchema& s, const NodeId& n) {
  return s.nodes.at(n);
}

// Def 5.20-style per-element condition: variables land on variables (or
// parameterized elements / constants whose kind lies in the range),
// constants land on constants of the same kind.
bool element_type_ok(const SchemaElement& from, const SchemaElement& to,
                     const KindUniverse& u) {
  switch (from.kind) {
    case SchemaElement::Kind::Variable:
      if (to.kind == SchemaElement::Kind::Variable) return true;
      return from.range.contains(to.constant_kind, u);
    case SchemaElement::Kind::Constant:
      return to.kind != SchemaElement::Kind::Variable &&
             to.constant_kind == from.constant_kind;
    case SchemaElement::Kind::Parameterized:
      return to.kind != SchemaElement::Kind::Variable &&
             to.constant_kind == from.constant_kind;
  }
  return false;
}

template <class SchemaT>
bool type_conditions_impl(const SchemaT& s, const SchemaT& t, const SchemaMorphism& m) {
  for (const auto& [a, el] : s.nodes) {
    auto it = m.node_map.find(a);
    if (it == m.node_map.end() || !t.nodes.count(it->second)) return false;
    if (!element_type_ok(el, t.nodes.at(it->second), s.universe)) return false;
  }
  for (const auto& [a, slot] : s.links) {
    auto it = m.edge_map.find(a);
    if (it == m.edge_map.end() || !t.links.count(it->second)) return false;
    const auto& tslot = t.links.at(it->second);
    if (tslot.link_class != slot.link_class || tslot.channel != slot.channel) return false;
    if (!element_type_ok(slot.element, tslot.element, s.universe)) return false;
  }
  if constexpr (requires { s.ports; }) {
    if (!m.port_map.empty()) {
      for (const auto& [a, slot] : s.ports) {
        auto it = m.port_map.find(a);
        if (it == m.port_map.end() || !t.ports.count(it->second)) return false;
        if (!element_type_ok(slot.element, t.ports.at(it->second).element, s.universe))
          return false;
      }
    }
  }
  return true;
}

template <class SchemaT>
MorphismFlags check_structural_impl(const SchemaT& s, const SchemaT& t,
                                    const SchemaMorphism& m) {
  require_valid(s);
  require_valid(t);

  for (const auto& [a, el] : s.nodes)
    if (!m.node_map.count(a))
      throw Error(Errc::PartialMap, "node '" + a.value + "' has no image");
  for (const auto& [a, slot] : s.links)
    if (!m.edge_map.count(a))
      throw Error(Errc::PartialMap, "link '" + a.value + "' has no image");
  for (const auto& [a, b] : m.node_map)
    if (s.nodes.count(a) && !t.nodes.count(b))
      throw Error(Errc::PartialMap, "node image '" + b.value + "' is not in the codomain");
  for (const auto& [a, b] : m.edge_map)
    if (s.links.count(a) && !t.links.count(b))
      throw Error(Errc::PartialMap, "link image '" + b.value + "' is not in the codomain");

  MorphismFlags flags;
  flags.weak = grids_commute(schema_grid(s), schema_grid(t), m.node_map, m.edge_map);

  if constexpr (requires { s.ports; }) {
    bool port_map_total = true;
    for (const auto& [p, slot] : s.ports)
      if (!m.port_map.count(p)) port_map_total = false;
    if (!m.port_map.empty() && !port_map_total)
      throw Error(Errc::PartialMap, "port map misses some ports");
    for (const auto& [a, b] : m.port_map)
      if (s.ports.count(a) && !t.ports.count(b))
        throw Error(Errc::PartialMap, "port image '" + b.value + "' is not in the codomain");

    flags.structural = port_map_total && !s.ports.empty();
    if (s.ports.empty()) flags.structural = flags.weak;
    if (port_map_total && !s.ports.empty()) {
      for (const auto& [p, slot] : s.ports) {
        const PortId& q = m.port_map.at(p);
        const auto& tslot = t.ports.at(q);
        if (tslot.direction != slot.direction || tslot.locus != slot.locus) {
          flags.structural = false;
          break;
        }
        if (slot.locus == PortLocus::Internal) {
          std::set<NodeId> mapped;
          for (const auto& n : s.internal_assignment.at(p))
            mapped.insert(m.node_map.at(n));
          const auto& towners = t.internal_assignment.at(q);
          if (!std::includes(towners.begin(), towners.end(), mapped.begin(),
                             mapped.end())) {
            flags.structural = false;
            break;
          }
        } else {
          auto eit = s.external_assignment.find(p);
          if (eit == s.external_assignment.end()) continue;
          auto tit = t.external_assignment.find(q);
          if (tit == t.external_assignment.end()) {
            flags.structural = false;
            break;
          }
          std::set<ExternalTarget> mapped;
          bool mappable = true;
          for (const auto& target : eit->second) {
            ExternalTarget img = target;
            switch (target.kind) {
              case ExternalTarget::Kind::Node: {
                auto nit = m.node_map.find(NodeId{target.id});
                if (nit == m.node_map.end()) mappable = false;
                else img.id = nit->second.value;
                break;
              }
              case ExternalTarget::Kind::Port: {
                auto pit = m.port_map.find(PortId{target.id});
                if (pit == m.port_map.end()) mappable = false;
                else img.id = pit->second.value;
                break;
              }
              case ExternalTarget::Kind::Link: {
                auto lit = m.edge_map.find(LinkId{target.id});
                if (lit == m.edge_map.end()) mappable = false;
                else img.id = lit->second.value;
                break;
              }
            }
            mapped.insert(img);
          }
          if (!mappable ||
              !std::includes(tit->second.begin(), tit->second.end(), mapped.begin(),
                             mapped.end())) {
            flags.structural = false;
            break;
          }
        }
      }
      if (flags.structural) {
        for (const auto& [l, options] : s.adjacency) {
          auto mapped = map_attachments(options, m.port_map);
          const auto& topts = t.adjacency.at(m.edge_map.at(l));
          if (!mapped || !std::includes(topts.begin(), topts.end(), mapped->begin(),
                                        mapped->end())) {
            flags.structural = false;
            break;
          }
        }
      }
    }
  } else {
    flags.structural = flags.weak;
  }

  flags.typed = flags.structural && type_conditions_impl(s, t, m);

  std::set<NodeId> node_images;
  bool v_mono = true;
  for (const auto& [a, el] : s.nodes)
    if (!node_images.insert(m.node_map.at(a)).second) v_mono = false;
  flags.v_mono = v_mono;
  flags.v_epi = node_images.size() == t.nodes.size();

  std::set<LinkId> edge_images;
  bool e_mono = true;
  for (const auto& [a, slot] : s.links)
    if (!edge_images.insert(m.edge_map.at(a)).second) e_mono = false;
  flags.e_mono = e_mono;
  flags.e_epi = edge_images.size() == t.links.size();

  return flags;
}

}  // namespace

namespace {

// A morphism between different flavors (a port schema into its basic
// reduction, say) can still be weak: only the node-level adjacency and the
// node/link maps matter.
MorphismFlags check_mixed(const Schema& s, const Schema& t, const SchemaMorphism& m) {
  require_valid_any(s);
  require_valid_any(t);

  const auto& s_nodes = std::visit(
      [](const auto& v) -> const std::map<NodeId, SchemaElement>& { return v.nodes; }, s);
  const auto& s_links = std::visit(
      [](const auto& v) -> const std::map<LinkId, LinkSlot>& { return v.links; }, s);
  const auto& t_nodes = std::visit(
      [](const auto& v) -> const std::map<NodeId, SchemaElement>& { return v.nodes; }, t);
  const auto& t_links = std::visit(
      [](const auto& v) -> const std::map<LinkId, LinkSlot>& { return v.links; }, t);

  for (const auto& [a, el] : s_nodes)
    if (!m.node_map.count(a))
      throw Error(Errc::PartialMap, "node '" + a.value + "' has no image");
  for (const auto& [a, slot] : s_links)
    if (!m.edge_map.count(a))
      throw Error(Errc::PartialMap, "link '" + a.value + "' has no image");
  for (const auto& [a, b] : m.node_map)
    if (s_nodes.count(a) && !t_nodes.count(b))
      throw Error(Errc::PartialMap, "node image '" + b.value + "' is not in the codomain");
  for (const auto& [a, b] : m.edge_map)
    if (s_links.count(a) && !t_links.count(b))
      throw Error(Errc::PartialMap, "link image '" + b.value + "' is not in the codomain");

  MorphismFlags flags;
  flags.weak = grids_commute(schema_grid(s), schema_grid(t), m.node_map, m.edge_map);

  std::set<NodeId> node_images;
  flags.v_mono = true;
  for (const auto& [a, el] : s_nodes)
    if (!node_images.insert(m.node_map.at(a)).second) flags.v_mono = false;
  flags.v_epi = node_images.size() == t_nodes.size();
  std::set<LinkId> edge_images;
  flags.e_mono = true;
  for (const auto& [a, slot] : s_links)
    if (!edge_images.insert(m.edge_map.at(a)).second) flags.e_mono = false;
  flags.e_epi = edge_images.size() == t_links.size();
  return flags;
}

}  // namespace

MorphismFlags check_structural(const Schema& s, const Schema& t, const SchemaMorphism& m) {
  if (s.index() != t.index()) return check_mixed(s, t, m);
  if (std::holds_alternative<PortSchema>(s))
    return check_structural_impl(std::get<PortSchema>(s), std::get<PortSchema>(t), m);
  return check_structural_impl(std::get<BasicSchema>(s), std::get<BasicSchema>(t), m);
}

namespace {

bool type_conditions_mixed(const Schema& s, const Schema& t, const SchemaMorphism& m) {
  const auto& s_nodes = std::visit(
      [](const auto& v) -> const std::map<NodeId, SchemaElement>& { return v.nodes; }, s);
  const auto& s_links = std::visit(
      [](const auto& v) -> const std::map<LinkId, LinkSlot>& { return v.links; }, s);
  const auto& t_nodes = std::visit(
      [](const auto& v) -> const std::map<NodeId, SchemaElement>& { return v.nodes; }, t);
  const auto& t_links = std::visit(
      [](const auto& v) -> const std::map<LinkId, LinkSlot>& { return v.links; }, t);
  const KindUniverse& universe =
      std::visit([](const auto& v) -> const KindUniverse& { return v.universe; }, s);

  for (const auto& [a, el] : s_nodes) {
    auto it = m.node_map.find(a);
    if (it == m.node_map.end() || !t_nodes.count(it->second)) return false;
    if (!element_type_ok(el, t_nodes.at(it->second), universe)) return false;
  }
  for (const auto& [a, slot] : s_links) {
    auto it = m.edge_map.find(a);
    if (it == m.edge_map.end() || !t_links.count(it->second)) return false;
    const auto& tslot = t_links.at(it->second);
    if (tslot.link_class != slot.link_class || tslot.channel != slot.channel) return false;
    if (!element_type_ok(slot.element, tslot.element, universe)) return false;
  }
  return true;
}

}  // namespace

bool type_conditions_hold(const Schema& s, const Schema& t, const SchemaMorphism& m) {
  if (s.index() != t.index()) return type_conditions_mixed(s, t, m);
  if (std::holds_alternative<PortSchema>(s))
    return type_conditions_impl(std::get<PortSchema>(s), std::get<PortSchema>(t), m);
  return type_conditions_impl(std::get<BasicSchema>(s), std::get<BasicSchema>(t), m);
}

bool check_typed(const Schema& s, const Schema& t, const SchemaMorphism& m) {
  MorphismFlags flags = check_structural(s, t, m);
  if (!flags.structural)
    throw Error(Errc::NotStructural, "typed check needs a structural homomorphism");
  return flags.typed;
}

SchemaMorphism identity_morphism(const Schema& s) {
  return slot_identity_morphism(s, s);
}

SchemaMorphism slot_identity_morphism(const Schema& from, const Schema& to) {
  SchemaMorphism m;
  m.domain = schema_name(from);
  m.codomain = schema_name(to);
  std::visit(
      [&](const auto& v) {
        for (const auto& [n, el] : v.nodes) m.node_map[n] = n;
        for (const auto& [l, slot] : v.links) m.edge_map[l] = l;
        if constexpr (requires { v.ports; }) {
          for (const auto& [p, slot] : v.ports) m.port_map[p] = p;
        }
      },
      from);
  return m;
}

SchemaMorphism compose(const SchemaMorphism& first, const SchemaMorphism& then) {
  SchemaMorphism out;
  out.domain = first.domain;
  out.codomain = then.codomain;
  auto chain = [](const auto& a, const auto& b, auto& result) {
    for (const auto& [x, y] : a) {
      auto it = b.find(y);
      if (it == b.end())
        throw Error(Errc::NotComposable, "'" + y.value + "' has no second image");
      result[x] = it->second;
    }
  };
  chain(first.node_map, then.node_map, out.node_map);
  chain(first.edge_map, then.edge_map, out.edge_map);
  if (!first.port_map.empty()) chain(first.port_map, then.port_map, out.port_map);
  return out;
}

// ---------------------------------------------------------------------------
// image

namespace {

template <class SchemaT>
SchemaT image_schema(const SchemaT& s, const SchemaT& t, const SchemaMorphism& m) {
  SchemaT img;
  img.name = t.name;
  img.universe = t.universe;
  img.annotations = t.annotations;

  for (const auto& [a, el] : s.nodes) {
    const NodeId& b = m.node_map.at(a);
    img.nodes.emplace(b, t.nodes.at(b));
  }
  for (const auto& [a, slot] : s.links) {
    const LinkId& b = m.edge_map.at(a);
    img.links.emplace(b, t.links.at(b));
  }

  if constexpr (requires { s.ports; }) {
    for (const auto& [a, slot] : s.ports) {
      const PortId& b = m.port_map.at(a);
      img.ports.emplace(b, t.ports.at(b));
    }
    for (const auto& [a, slot] : s.ports) {
      const PortId& b = m.port_map.at(a);
      if (slot.locus == PortLocus::Internal) {
        for (const auto& n : s.internal_assignment.at(a))
          img.internal_assignment[b].insert(m.node_map.at(n));
      } else {
        auto eit = s.external_assignment.find(a);
        if (eit == s.external_assignment.end()) continue;
        for (const auto& target : eit->second) {
          ExternalTarget mapped = target;
          switch (target.kind) {
            case ExternalTarget::Kind::Node:
              mapped.id = m.node_map.at(NodeId{target.id}).value;
              break;
            case ExternalTarget::Kind::Port:
              mapped.id = m.port_map.at(PortId{target.id}).value;
              break;
            case ExternalTarget::Kind::Link:
              mapped.id = m.edge_map.at(LinkId{target.id}).value;
              break;
          }
          img.external_assignment[b].insert(mapped);
        }
      }
    }
    for (const auto& [a, options] : s.adjacency) {
      const LinkId& b = m.edge_map.at(a);
      auto mapped = map_attachments(options, m.port_map);
      img.adjacency[b].insert(mapped->begin(), mapped->end());
    }
  } else {
    for (const auto& [a, options] : s.node_adjacency) {
      const LinkId& b = m.edge_map.at(a);
      auto mapped = map_attachments(options, m.node_map);
      img.node_adjacency[b].insert(mapped->begin(), mapped->end());
    }
  }
  return img;
}

}  // namespace

ImageResult image(const Schema& s, const Schema& t, const SchemaMorphism& m) {
  MorphismFlags flags = check_structural(s, t, m);
  if (!flags.structural)
    throw Error(Errc::NotStructural, "image needs a structural homomorphism");

  Schema img = std::visit(
      [&](const auto& sv) -> Schema {
        using T = std::decay_t<decltype(sv)>;
        return image_schema(sv, std::get<T>(t), m);
      },
      s);

  SchemaMorphism onto = m;
  onto.domain = schema_name(s);
  onto.codomain = schema_name(img);
  SchemaMorphism inclusion = slot_identity_morphism(img, t);
  return {std::move(img), std::move(onto), std::move(inclusion)};
}

// ---------------------------------------------------------------------------
// subschema, completeness, preimage, restriction

namespace {

template <class Key, class Value>
bool entrywise_subset(const std::map<Key, std::set<Value>>& sub,
                      const std::map<Key, std::set<Value>>& super) {
  for (const auto& [key, sset] : sub) {
    auto it = super.find(key);
    if (it == super.end()) return false;
    if (!std::includes(it->second.begin(), it->second.end(), sset.begin(), sset.end()))
      return false;
  }
  return true;
}

template <class SchemaT>
SubschemaResult subschema_impl(const SchemaT& p, const SchemaT& r) {
  require_valid(p);
  require_valid(r);

  SubschemaResult out;

  bool slots_ok = true;
  for (const auto& [n, el] : p.nodes) {
    auto it = r.nodes.find(n);
    if (it == r.nodes.end() || it->second != el) slots_ok = false;
  }
  for (const auto& [l, slot] : p.links) {
    auto it = r.links.find(l);
    if (it == r.links.end() || it->second != slot) slots_ok = false;
  }
  if constexpr (requires { p.ports; }) {
    for (const auto& [q, slot] : p.ports) {
      auto it = r.ports.find(q);
      if (it == r.ports.end() || it->second != slot) slots_ok = false;
    }
    if (slots_ok)
      slots_ok = entrywise_subset(p.internal_assignment, r.internal_assignment) &&
                 entrywise_subset(p.adjacency, r.adjacency) &&
                 entrywise_subset(p.external_assignment, r.external_assignment);
  } else {
    if (slots_ok) slots_ok = entrywise_subset(p.node_adjacency, r.node_adjacency);
  }
  out.subschema = slots_ok;

  out.structural = is_submultigraph(schema_grid(p), schema_grid(r));

  if constexpr (requires { p.ports; }) {
    out.strong_structural =
        is_submultigraph(schema_connection_grid(p), schema_connection_grid(r)) &&
        entrywise_subset(p.internal_assignment, r.internal_assignment);
  } else {
    out.strong_structural = out.structural;
  }

  if (out.subschema) {
    SchemaMorphism inc;
    inc.domain = p.name;
    inc.codomain = r.name;
    for (const auto& [n, el] : p.nodes) inc.node_map[n] = n;
    for (const auto& [l, slot] : p.links) inc.edge_map[l] = l;
    if constexpr (requires { p.ports; }) {
      for (const auto& [q, slot] : p.ports) inc.port_map[q] = q;
    }
    out.witness = std::move(inc);
  }
  return out;
}

}  // namespace

SubschemaResult subschema_check(const Schema& p, const Schema& r) {
  if (p.index() != r.index()) {
    require_valid_any(p);
    require_valid_any(r);
    return {};
  }
  if (std::holds_alternative<PortSchema>(p))
    return subschema_impl(std::get<PortSchema>(p), std::get<PortSchema>(r));
  return subschema_impl(std::get<BasicSchema>(p), std::get<BasicSchema>(r));
}

namespace {

template <class SchemaT>
CompletenessFlags completeness_impl(const SchemaT& q, const SchemaT& r) {
  CompletenessFlags flags;
  flags.v_complete = q.nodes.size() == r.nodes.size();

  flags.e_complete = true;
  VariableMultigraph grid = schema_grid(r);
  for (const auto& [e, options] : grid.edges) {
    if (q.links.count(LinkId{e.value})) continue;
    for (const auto& att : options) {
      bool touches_q = (att.begin && q.nodes.count(NodeId{att.begin->value})) ||
                       (att.end && q.nodes.count(NodeId{att.end->value}));
      if (touches_q) {
        flags.e_complete = false;
        break;
      }
    }
    if (!flags.e_complete) break;
  }

  if constexpr (requires { q.ports; }) {
    flags.p_complete = q.ports.size() == r.ports.size();
  } else {
    flags.p_complete = true;  // port-free flavor
  }
  return flags;
}

}  // namespace

CompletenessFlags completeness_flags(const Schema& q, const Schema& r) {
  if (!subschema_check(q, r).subschema)
    throw Error(Errc::NotASubschema, "completeness flags need a subschema");
  if (std::holds_alternative<PortSchema>(q))
    return completeness_impl(std::get<PortSchema>(q), std::get<PortSchema>(r));
  return completeness_impl(std::get<BasicSchema>(q), std::get<BasicSchema>(r));
}

namespace {

template <class SchemaT>
SchemaT preimage_impl(const SchemaT& s, const SchemaT&, const SchemaMorphism& m,
                      const SchemaT& q) {
  SchemaT out;
  out.name = s.name;
  out.universe = s.universe;
  out.annotations = s.annotations;

  for (const auto& [a, el] : s.nodes)
    if (q.nodes.count(m.node_map.at(a))) out.nodes.emplace(a, el);

  if constexpr (requires { s.ports; }) {
    for (const auto& [p, slot] : s.ports) {
      if (!q.ports.count(m.port_map.at(p))) continue;
      if (slot.locus == PortLocus::Internal) {
        std::set<NodeId> owners;
        for (const auto& n : s.internal_assignment.at(p))
          if (out.nodes.count(n)) owners.insert(n);
        if (owners.empty()) continue;  // port would dangle
        out.ports.emplace(p, slot);
        out.internal_assignment.emplace(p, std::move(owners));
      } else {
        out.ports.emplace(p, slot);
        auto eit = s.external_assignment.find(p);
        if (eit == s.external_assignment.end()) continue;
        std::set<ExternalTarget> kept;
        for (const auto& target : eit->second) {
          bool in = false;
          switch (target.kind) {
            case ExternalTarget::Kind::Node: in = out.nodes.count(NodeId{target.id}); break;
            case ExternalTarget::Kind::Port: in = out.ports.count(PortId{target.id}); break;
            case ExternalTarget::Kind::Link: in = s.links.count(LinkId{target.id}); break;
          }
          if (in) kept.insert(target);
        }
        if (!kept.empty()) out.external_assignment.emplace(p, std::move(kept));
      }
    }
    for (const auto& [l, slot] : s.links) {
      if (!q.links.count(m.edge_map.at(l))) continue;
      std::set<PortAttachment> kept;
      for (const auto& att : s.adjacency.at(l)) {
        bool ok = (!att.begin || out.ports.count(*att.begin)) &&
                  (!att.end || out.ports.count(*att.end));
        if (ok) kept.insert(att);
      }
      if (kept.empty()) continue;
      out.links.emplace(l, slot);
      out.adjacency.emplace(l, std::move(kept));
    }
    // External link targets must point at kept links.
    for (auto it = out.external_assignment.begin(); it != out.external_assignment.end();) {
      std::set<ExternalTarget> kept;
      for (const auto& target : it->second)
        if (target.kind != ExternalTarget::Kind::Link || out.links.count(LinkId{target.id}))
          kept.insert(target);
      if (kept.empty()) it = out.external_assignment.erase(it);
      else {
        it->second = std::move(kept);
        ++it;
      }
    }
  } else {
    for (const auto& [l, slot] : s.links) {
      if (!q.links.count(m.edge_map.at(l))) continue;
      std::set<NodeAttachment> kept;
      for (const auto& att : s.node_adjacency.at(l)) {
        bool ok = (!att.begin || out.nodes.count(*att.begin)) &&
                  (!att.end || out.nodes.count(*att.end));
        if (ok) kept.insert(att);
      }
      if (kept.empty()) continue;
      out.links.emplace(l, slot);
      out.node_adjacency.emplace(l, std::move(kept));
    }
  }
  return out;
}

}  // namespace

Schema preimage(const Schema& s, const Schema& t, const SchemaMorphism& m,
                const Schema& q) {
  MorphismFlags flags = check_structural(s, t, m);
  if (!flags.structural)
    throw Error(Errc::NotStructural, "preimage needs a structural homomorphism");
  if (!subschema_check(q, t).subschema)
    throw Error(Errc::NotASubschema, "preimage needs a subschema of the codomain");

  return std::visit(
      [&](const auto& sv) -> Schema {
        using T = std::decay_t<decltype(sv)>;
        return preimage_impl(sv, std::get<T>(t), m, std::get<T>(q));
      },
      s);
}

SchemaMorphism restrict_morphism(const Schema& s, const Schema& t,
                                 const SchemaMorphism& m, const Schema& q) {
  check_structural(s, t, m);  // totality checks
  if (!subschema_check(q, s).subschema)
    throw Error(Errc::NotASubschema, "restriction needs a subschema of the domain");

  SchemaMorphism out;
  out.domain = schema_name(q);
  out.codomain = m.codomain;
  std::visit(
      [&](const auto& qv) {
        for (const auto& [n, el] : qv.nodes) out.node_map[n] = m.node_map.at(n);
        for (const auto& [l, slot] : qv.links) out.edge_map[l] = m.edge_map.at(l);
        if constexpr (requires { qv.ports; }) {
          if (!m.port_map.empty())
            for (const auto& [p, slot] : qv.ports) out.port_map[p] = m.port_map.at(p);
        }
      },
      q);
  return out;
}

// ---------------------------------------------------------------------------
// homomorphism search

namespace {

std::string element_order_key(const SchemaElement& el) {
  switch (el.kind) {
    case SchemaElement::Kind::Constant: return el.constant_kind.str();
    case SchemaElement::Kind::Parameterized: return el.constant_kind.str();
    case SchemaElement::Kind::Variable: return "~" + el.var_name;
  }
  return "~";
}

struct NodeDegrees {
  std::size_t min_in = 0, min_out = 0;  // forced by every attachment option
  std::size_t max_in = 0, max_out = 0;  // possible under some option
};

std::map<VertexId, NodeDegrees> degree_bounds(const VariableMultigraph& g) {
  std::map<VertexId, NodeDegrees> out;
  for (const auto& v : g.vertices) out[v];
  for (const auto& [e, options] : g.edges) {
    std::set<VertexId> some_begin, some_end;
    std::optional<VertexId> all_begin, all_end;
    bool first = true;
    for (const auto& att : options) {
      if (att.begin) some_begin.insert(*att.begin);
      if (att.end) some_end.insert(*att.end);
      if (first) {
        if (att.begin) all_begin = att.begin;
        if (att.end) all_end = att.end;
        first = false;
      } else {
        if (!att.begin || (all_begin && *all_begin != *att.begin)) all_begin.reset();
        if (!att.end || (all_end && *all_end != *att.end)) all_end.reset();
      }
    }
    for (const auto& v : some_begin) ++out[v].max_out;
    for (const auto& v : some_end) ++out[v].max_in;
    if (all_begin) ++out[*all_begin].min_out;
    if (all_end) ++out[*all_end].min_in;
  }
  return out;
}

template <class SchemaT>
class HomSearch {
 public:
  HomSearch(const SchemaT& s, const SchemaT& t, const HomSearchOptions& options)
      : s_(s), t_(t), opt_(options), gs_(schema_grid(s)), gt_(schema_grid(t)) {
    for (const auto& [n, el] : s_.nodes) s_nodes_.push_back(n);
    for (const auto& [n, el] : t_.nodes) t_nodes_.push_back(n);
    sort_by_key(t_nodes_, [&](const NodeId& n) { return element_order_key(t_.nodes.at(n)); });
    for (const auto& [l, slot] : s_.links) s_links_.push_back(l);
    for (const auto& [l, slot] : t_.links) t_links_.push_back(l);
    sort_by_key(t_links_,
                [&](const LinkId& l) { return element_order_key(t_.links.at(l).element); });
    if constexpr (requires { s_.ports; }) {
      if (!opt_.weak_only) {
        for (const auto& [p, slot] : s_.ports) s_ports_.push_back(p);
        for (const auto& [p, slot] : t_.ports) t_ports_.push_back(p);
        sort_by_key(t_ports_,
                    [&](const PortId& p) { return element_order_key(t_.ports.at(p).element); });
      }
    }
    s_degrees_ = degree_bounds(gs_);
    t_degrees_ = degree_bounds(gt_);
    for (const auto& [e, options] : gs_.edges) {
      std::set<NodeId>& needs = link_needs_[LinkId{e.value}];
      for (const auto& att : options) {
        if (att.begin) needs.insert(NodeId{att.begin->value});
        if (att.end) needs.insert(NodeId{att.end->value});
      }
    }
  }

  std::vector<SchemaMorphism> run() {
    assign_node(0);
    return std::move(found_);
  }

 private:
  template <class V, class F>
  static void sort_by_key(std::vector<V>& items, F key) {
    std::stable_sort(items.begin(), items.end(), [&](const V& a, const V& b) {
      auto ka = key(a), kb = key(b);
      if (ka != kb) return ka < kb;
      return a < b;
    });
  }

  bool budget_ok() {
    if (++steps_ <= opt_.budget) return true;
    throw Error(Errc::SearchSpaceTooLarge, "homomorphism search budget exceeded");
  }

  bool done() const { return opt_.limit && found_.size() >= opt_.limit; }

  void assign_node(std::size_t i) {
    if (done()) return;
    if (i == s_nodes_.size()) {
      assign_port(0);
      return;
    }
    const NodeId& a = s_nodes_[i];
    const auto& a_el = s_.nodes.at(a);
    const NodeDegrees& ad = s_degrees_.at(vertex_of(a));
    for (const NodeId& b : t_nodes_) {
      if (done()) return;
      if (!budget_ok()) return;
      if (opt_.mono && used_nodes_.count(b)) continue;
      if (opt_.typed && !element_type_ok(a_el, t_.nodes.at(b), s_.universe)) continue;
      if (opt_.mono) {
        const NodeDegrees& bd = t_degrees_.at(vertex_of(b));
        if (ad.min_in > bd.max_in || ad.min_out > bd.max_out) continue;
      }
      node_map_[a] = b;
      used_nodes_.insert(b);
      if (links_still_feasible(a)) assign_node(i + 1);
      used_nodes_.erase(b);
      node_map_.erase(a);
    }
  }

  // Once every node an edge mentions has an image, some codomain edge must
  // already admit the mapped attachment options.
  bool links_still_feasible(const NodeId& just_assigned) {
    for (const auto& [l, needs] : link_needs_) {
      if (!needs.count(just_assigned)) continue;
      bool ready = true;
      for (const auto& n : needs)
        if (!node_map_.count(n)) {
          ready = false;
          break;
        }
      if (!ready) continue;

      std::set<Attachment> mapped;
      for (const auto& att : gs_.edges.at(edge_of(l))) {
        Attachment img;
        img.kind = att.kind;
        if (att.begin) img.begin = vertex_of(node_map_.at(NodeId{att.begin->value}));
        if (att.end) img.end = vertex_of(node_map_.at(NodeId{att.end->value}));
        mapped.insert(img);
      }
      const auto& a_slot = s_.links.at(l);
      bool feasible = false;
      for (const LinkId& b : t_links_) {
        if (opt_.typed) {
          const auto& b_slot = t_.links.at(b);
          if (b_slot.link_class != a_slot.link_class ||
              b_slot.channel != a_slot.channel ||
              !element_type_ok(a_slot.element, b_slot.element, s_.universe))
            continue;
        }
        const auto& bset = gt_.edges.at(edge_of(b));
        if (std::includes(bset.begin(), bset.end(), mapped.begin(), mapped.end())) {
          feasible = true;
          break;
        }
      }
      if (!feasible) return false;
    }
    return true;
  }

  void assign_port(std::size_t i) {
    if (done()) return;
    if constexpr (!requires { s_.ports; }) {
      (void)i;
      assign_link(0);
    } else {
      if (opt_.weak_only || i == s_ports_.size()) {
        assign_link(0);
        return;
      }
      const PortId& a = s_ports_[i];
      const auto& a_slot = s_.ports.at(a);
      for (const PortId& b : t_ports_) {
        if (done()) return;
        if (!budget_ok()) return;
        if (opt_.mono && used_ports_.count(b)) continue;
        const auto& b_slot = t_.ports.at(b);
        if (b_slot.direction != a_slot.direction || b_slot.locus != a_slot.locus) continue;
        if (opt_.typed &&
            !element_type_ok(a_slot.element, b_slot.element, s_.universe))
          continue;
        if (!port_assignment_ok(a, b, a_slot)) continue;
        port_map_[a] = b;
        used_ports_.insert(b);
        assign_port(i + 1);
        used_ports_.erase(b);
        port_map_.erase(a);
      }
    }
  }

  bool port_assignment_ok(const PortId& a, const PortId& b, const PortSlot& a_slot) {
    if constexpr (requires { s_.ports; }) {
      if (a_slot.locus == PortLocus::Internal) {
        std::set<NodeId> mapped;
        for (const auto& n : s_.internal_assignment.at(a)) mapped.insert(node_map_.at(n));
        const auto& towners = t_.internal_assignment.at(b);
        return std::includes(towners.begin(), towners.end(), mapped.begin(), mapped.end());
      }
      // External targets can reference links; defer those to the final check.
      return true;
    }
    return true;
  }

  void assign_link(std::size_t i) {
    if (done()) return;
    if (i == s_links_.size()) {
      emit();
      return;
    }
    const LinkId& a = s_links_[i];
    const auto& a_slot = s_.links.at(a);
    for (const LinkId& b : t_links_) {
      if (done()) return;
      if (!budget_ok()) return;
      if (opt_.mono && used_links_.count(b)) continue;
      const auto& b_slot = t_.links.at(b);
      if (opt_.typed && (b_slot.link_class != a_slot.link_class ||
                         b_slot.channel != a_slot.channel ||
                         !element_type_ok(a_slot.element, b_slot.element, s_.universe)))
        continue;
      if (!adjacency_ok(a, b)) continue;
      edge_map_[a] = b;
      used_links_.insert(b);
      assign_link(i + 1);
      used_links_.erase(b);
      edge_map_.erase(a);
    }
  }

  bool adjacency_ok(const LinkId& a, const LinkId& b) {
    if constexpr (requires { s_.ports; }) {
      if (!opt_.weak_only) {
        const auto& aset = s_.adjacency.at(a);
        auto mapped = map_attachments(aset, port_map_);
        if (!mapped) return false;
        const auto& bset = t_.adjacency.at(b);
        return std::includes(bset.begin(), bset.end(), mapped->begin(), mapped->end());
      }
    }
    const auto& aset = gs_.edges.at(edge_of(a));
    std::set<Attachment> mapped;
    for (const auto& att : aset) {
      Attachment img;
      img.kind = att.kind;
      if (att.begin) img.begin = vertex_of(node_map_.at(NodeId{att.begin->value}));
      if (att.end) img.end = vertex_of(node_map_.at(NodeId{att.end->value}));
      mapped.insert(img);
    }
    const auto& bset = gt_.edges.at(edge_of(b));
    return std::includes(bset.begin(), bset.end(), mapped.begin(), mapped.end());
  }

  void emit() {
    if (opt_.epi) {
      std::set<NodeId> nimg;
      for (const auto& [a, b] : node_map_) nimg.insert(b);
      if (nimg.size() != t_.nodes.size()) return;
      std::set<LinkId> limg;
      for (const auto& [a, b] : edge_map_) limg.insert(b);
      if (limg.size() != t_.links.size()) return;
    }
    SchemaMorphism m;
    m.domain = s_.name;
    m.codomain = t_.name;
    m.node_map = node_map_;
    m.edge_map = edge_map_;
    m.port_map = port_map_;
    if constexpr (requires { s_.ports; }) {
      if (!opt_.weak_only) {
        // External assignment commutation could not be checked while links
        // were unassigned; verify it now.
        for (const auto& [p, slot] : s_.ports) {
          if (slot.locus != PortLocus::External) continue;
          auto eit = s_.external_assignment.find(p);
          if (eit == s_.external_assignment.end()) continue;
          auto tit = t_.external_assignment.find(port_map_.at(p));
          if (tit == t_.external_assignment.end()) return;
          std::set<ExternalTarget> mapped;
          for (const auto& target : eit->second) {
            ExternalTarget img = target;
            switch (target.kind) {
              case ExternalTarget::Kind::Node:
                img.id = node_map_.at(NodeId{target.id}).value;
                break;
              case ExternalTarget::Kind::Port:
                img.id = port_map_.at(PortId{target.id}).value;
                break;
              case ExternalTarget::Kind::Link:
                img.id = edge_map_.at(LinkId{target.id}).value;
                break;
            }
            mapped.insert(img);
          }
          if (!std::includes(tit->second.begin(), tit->second.end(), mapped.begin(),
                             mapped.end()))
            return;
        }
      }
    }
    found_.push_back(std::move(m));
  }

  const SchemaT& s_;
  const SchemaT& t_;
  HomSearchOptions opt_;
  VariableMultigraph gs_, gt_;
  std::vector<NodeId> s_nodes_, t_nodes_;
  std::vector<PortId> s_ports_, t_ports_;
  std::vector<LinkId> s_links_, t_links_;
  std::map<VertexId, NodeDegrees> s_degrees_, t_degrees_;
  std::map<LinkId, std::set<NodeId>> link_needs_;
  std::map<NodeId, NodeId> node_map_;
  std::map<PortId, PortId> port_map_;
  std::map<LinkId, LinkId> edge_map_;
  std::set<NodeId> used_nodes_;
  std::set<PortId> used_ports_;
  std::set<LinkId> used_links_;
  std::vector<SchemaMorphism> found_;
  std::size_t steps_ = 0;
};

}  // namespace

std::vector<SchemaMorphism> find_homomorphisms(const Schema& s, const Schema& t,
                                               const HomSearchOptions& options) {
  if (s.index() != t.index())
    throw Error(Errc::SchemaMismatch, "search between different schema flavors");
  require_valid_any(s);
  require_valid_any(t);
  if (std::holds_alternative<PortSchema>(s)) {
    HomSearch<PortSchema> search(std::get<PortSchema>(s), std::get<PortSchema>(t), options);
    return search.run();
  }
  HomSearch<BasicSchema> search(std::get<BasicSchema>(s), std::get<BasicSchema>(t), options);
  return search.run();
}

}  // namespace schemata

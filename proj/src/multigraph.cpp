#include "schemata/multigraph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace schemata {

namespace {

void check_endpoint(const std::set<VertexId>& vertices,
                    const std::optional<VertexId>& v, const EdgeId& e,
                    std::vector<Violation>& out) {
  if (v && vertices.count(*v) == 0)
    out.push_back({"UnknownVertex", e.value,
                   "attachment references missing vertex '" + v->value + "'"});
}

}  // namespace

std::vector<Violation> validate_multigraph(const GeneralizedMultigraph& g) {
  std::vector<Violation> out;
  for (const auto& [e, att] : g.edges) {
    check_endpoint(g.vertices, att.begin, e, out);
    check_endpoint(g.vertices, att.end, e, out);
  }
  return out;
}

std::vector<Violation> validate_multigraph(const VariableMultigraph& g) {
  std::vector<Violation> out;
  for (const auto& [e, options] : g.edges) {
    if (options.empty())
      out.push_back({"EmptyAttachmentSet", e.value, "edge has no admissible attachment"});
    for (const auto& att : options) {
      check_endpoint(g.vertices, att.begin, e, out);
      check_endpoint(g.vertices, att.end, e, out);
    }
  }
  return out;
}

bool VariableMultigraph::is_deterministic() const {
  for (const auto& [e, options] : edges)
    if (options.size() != 1) return false;
  return true;
}

std::optional<GeneralizedMultigraph> VariableMultigraph::to_deterministic() const {
  GeneralizedMultigraph g;
  g.vertices = vertices;
  for (const auto& [e, options] : edges) {
    if (options.size() != 1) return std::nullopt;
    g.edges.emplace(e, *options.begin());
  }
  return g;
}

VariableMultigraph VariableMultigraph::lift(const GeneralizedMultigraph& g) {
  VariableMultigraph v;
  v.vertices = g.vertices;
  for (const auto& [e, att] : g.edges) v.edges[e] = {att};
  return v;
}

bool is_conventional(const GeneralizedMultigraph& g) {
  return std::all_of(g.edges.begin(), g.edges.end(),
                     [](const auto& kv) { return kv.second.is_closed(); });
}

bool is_conventional(const VariableMultigraph& g) {
  for (const auto& [e, options] : g.edges)
    for (const auto& att : options)
      if (!att.is_closed()) return false;
  return true;
}

bool is_simple(const GeneralizedMultigraph& g) {
  std::set<Attachment> seen;
  for (const auto& [e, att] : g.edges)
    if (!seen.insert(att).second) return false;
  return true;
}

OpenEdges open_edges(const GeneralizedMultigraph& g) {
  OpenEdges out;
  for (const auto& [e, att] : g.edges) {
    if (att.kind == AttachmentCase::BeginOnly) out.begin_open.insert(e);
    if (att.kind == AttachmentCase::EndOnly) out.end_open.insert(e);
  }
  return out;
}

std::vector<std::set<VertexId>> components(const GeneralizedMultigraph& g) {
  std::map<VertexId, std::vector<VertexId>> neighbors;
  for (const auto& [e, att] : g.edges)
    if (att.is_closed()) {
      neighbors[*att.begin].push_back(*att.end);
      neighbors[*att.end].push_back(*att.begin);
    }

  std::vector<std::set<VertexId>> out;
  std::set<VertexId> seen;
  for (const auto& start : g.vertices) {
    if (seen.count(start)) continue;
    std::set<VertexId> comp;
    std::queue<VertexId> frontier;
    frontier.push(start);
    seen.insert(start);
    while (!frontier.empty()) {
      VertexId v = frontier.front();
      frontier.pop();
      comp.insert(v);
      auto it = neighbors.find(v);
      if (it == neighbors.end()) continue;
      for (const auto& w : it->second)
        if (seen.insert(w).second) frontier.push(w);
    }
    out.push_back(std::move(comp));
  }
  // Vertices iterate in order, so components already appear by least vertex.
  return out;
}

bool is_connected(const GeneralizedMultigraph& g) {
  return components(g).size() <= 1;
}

FanDegrees fan_degrees(const GeneralizedMultigraph& g, const VertexId& v) {
  if (!g.has_vertex(v))
    throw Error(Errc::UnknownVertex, "no vertex '" + v.value + "'");
  FanDegrees d;
  for (const auto& [e, att] : g.edges) {
    if (att.end && *att.end == v) ++d.fan_in;
    if (att.begin && *att.begin == v) ++d.fan_out;
  }
  return d;
}

namespace {

// The attachment of e pushed through the vertex map; nullopt when an
// endpoint has no image.
std::optional<Attachment> mapped_attachment(const Attachment& att,
                                            const std::map<VertexId, VertexId>& vm) {
  auto img = [&](const std::optional<VertexId>& v) -> std::optional<VertexId> {
    if (!v) return std::nullopt;
    auto it = vm.find(*v);
    if (it == vm.end()) return std::nullopt;
    return it->second;
  };
  switch (att.kind) {
    case AttachmentCase::Closed: {
      auto b = img(att.begin), e = img(att.end);
      if (!b || !e) return std::nullopt;
      return Attachment::closed(*b, *e);
    }
    case AttachmentCase::BeginOnly: {
      auto b = img(att.begin);
      if (!b) return std::nullopt;
      return Attachment::begin_only(*b);
    }
    case AttachmentCase::EndOnly: {
      auto e = img(att.end);
      if (!e) return std::nullopt;
      return Attachment::end_only(*e);
    }
  }
  return std::nullopt;
}

}  // namespace

bool check_graph_morphism(const GeneralizedMultigraph& g,
                          const GeneralizedMultigraph& h,
                          const GraphMorphism& m) {
  for (const auto& v : g.vertices)
    if (!m.vertex_map.count(v))
      throw Error(Errc::PartialMap, "vertex '" + v.value + "' has no image");
  for (const auto& [e, att] : g.edges)
    if (!m.edge_map.count(e))
      throw Error(Errc::PartialMap, "edge '" + e.value + "' has no image");

  for (const auto& [v, w] : m.vertex_map)
    if (g.has_vertex(v) && !h.has_vertex(w)) return false;

  for (const auto& [e, att] : g.edges) {
    const EdgeId& image = m.edge_map.at(e);
    auto it = h.edges.find(image);
    if (it == h.edges.end()) return false;
    auto mapped = mapped_attachment(att, m.vertex_map);
    if (!mapped || *mapped != it->second) return false;
  }
  return true;
}

std::vector<GraphMorphism> enumerate_graph_morphisms(
    const GeneralizedMultigraph& g, const GeneralizedMultigraph& h) {
  const std::vector<VertexId> gv(g.vertices.begin(), g.vertices.end());
  const std::vector<VertexId> hv(h.vertices.begin(), h.vertices.end());
  std::vector<EdgeId> ge;
  for (const auto& [e, att] : g.edges) ge.push_back(e);

  double budget = 1.0;
  for (std::size_t i = 0; i < gv.size(); ++i) budget *= static_cast<double>(hv.size());
  for (std::size_t i = 0; i < ge.size(); ++i)
    budget *= static_cast<double>(std::max<std::size_t>(h.edges.size(), 1));
  if (budget > 1e7)
    throw Error(Errc::SearchSpaceTooLarge, "morphism enumeration budget exceeded");

  std::vector<GraphMorphism> out;
  if (!gv.empty() && hv.empty()) return out;

  std::vector<std::size_t> pick(gv.size(), 0);
  while (true) {
    GraphMorphism m;
    for (std::size_t i = 0; i < gv.size(); ++i) m.vertex_map[gv[i]] = hv[pick[i]];

    // For this vertex map, each edge can go to any target edge carrying the
    // mapped attachment.
    std::vector<std::vector<EdgeId>> edge_candidates(ge.size());
    bool feasible = true;
    for (std::size_t i = 0; i < ge.size() && feasible; ++i) {
      auto mapped = mapped_attachment(g.edges.at(ge[i]), m.vertex_map);
      for (const auto& [he, hatt] : h.edges)
        if (mapped && hatt == *mapped) edge_candidates[i].push_back(he);
      if (edge_candidates[i].empty()) feasible = false;
    }

    if (feasible) {
      std::vector<std::size_t> epick(ge.size(), 0);
      while (true) {
        GraphMorphism full = m;
        for (std::size_t i = 0; i < ge.size(); ++i)
          full.edge_map[ge[i]] = edge_candidates[i][epick[i]];
        out.push_back(std::move(full));
        std::size_t i = ge.size();
        while (i > 0) {
          --i;
          if (++epick[i] < edge_candidates[i].size()) break;
          epick[i] = 0;
          if (i == 0) goto edges_done;
        }
        if (ge.empty()) break;
      }
    edges_done:;
    }

    std::size_t i = gv.size();
    bool advanced = false;
    while (i > 0) {
      --i;
      if (++pick[i] < hv.size()) {
        advanced = true;
        break;
      }
      pick[i] = 0;
    }
    if (!advanced) break;
  }
  return out;
}

GraphMorphism identity_graph_morphism(const GeneralizedMultigraph& g) {
  GraphMorphism m;
  for (const auto& v : g.vertices) m.vertex_map[v] = v;
  for (const auto& [e, att] : g.edges) m.edge_map[e] = e;
  return m;
}

GraphMorphism compose(const GraphMorphism& first, const GraphMorphism& then) {
  GraphMorphism out;
  for (const auto& [v, w] : first.vertex_map) {
    auto it = then.vertex_map.find(w);
    if (it == then.vertex_map.end())
      throw Error(Errc::NotComposable, "vertex '" + w.value + "' has no second image");
    out.vertex_map[v] = it->second;
  }
  for (const auto& [e, f] : first.edge_map) {
    auto it = then.edge_map.find(f);
    if (it == then.edge_map.end())
      throw Error(Errc::NotComposable, "edge '" + f.value + "' has no second image");
    out.edge_map[e] = it->second;
  }
  return out;
}

bool is_submultigraph(const GeneralizedMultigraph& sub,
                      const GeneralizedMultigraph& super) {
  if (!std::includes(super.vertices.begin(), super.vertices.end(),
                     sub.vertices.begin(), sub.vertices.end()))
    return false;
  for (const auto& [e, att] : sub.edges) {
    auto it = super.edges.find(e);
    if (it == super.edges.end() || it->second != att) return false;
  }
  return true;
}

bool is_submultigraph(const VariableMultigraph& sub,
                      const VariableMultigraph& super) {
  if (!std::includes(super.vertices.begin(), super.vertices.end(),
                     sub.vertices.begin(), sub.vertices.end()))
    return false;
  for (const auto& [e, options] : sub.edges) {
    auto it = super.edges.find(e);
    if (it == super.edges.end()) return false;
    if (!std::includes(it->second.begin(), it->second.end(), options.begin(),
                       options.end()))
      return false;
  }
  return true;
}

std::set<std::pair<bool, bool>> achievable_openness(const VariableMultigraph& g) {
  // Per edge, which attachment cases are on offer.
  bool all_can_close = true;       // every edge has a closed option
  bool all_can_avoid_end = true;   // every edge has a non-end-open option
  bool all_can_avoid_begin = true; // every edge has a non-begin-open option
  std::size_t end_capable = 0, begin_capable = 0;
  bool some_edge_end_and_other_begin = false;
  EdgeId first_end_capable, first_begin_capable;

  for (const auto& [e, options] : g.edges) {
    bool can_close = false, can_end = false, can_begin = false;
    for (const auto& att : options) {
      switch (att.kind) {
        case AttachmentCase::Closed: can_close = true; break;
        case AttachmentCase::EndOnly: can_end = true; break;
        case AttachmentCase::BeginOnly: can_begin = true; break;
      }
    }
    if (!can_close) all_can_close = false;
    if (!can_close && !can_begin) all_can_avoid_end = false;
    if (!can_close && !can_end) all_can_avoid_begin = false;
    if (can_end && ++end_capable == 1) first_end_capable = e;
    if (can_begin && ++begin_capable == 1) first_begin_capable = e;
  }

  if (end_capable && begin_capable &&
      (end_capable > 1 || begin_capable > 1 || first_end_capable != first_begin_capable))
    some_edge_end_and_other_begin = true;

  std::set<std::pair<bool, bool>> out;
  if (all_can_close) out.insert({false, false});
  if (end_capable && all_can_avoid_begin) out.insert({true, false});
  if (begin_capable && all_can_avoid_end) out.insert({false, true});
  if (some_edge_end_and_other_begin) out.insert({true, true});
  return out;
}

}  // namespace schemata

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "schemata/errors.hpp"
#include "schemata/ids.hpp"

namespace schemata {

enum class AttachmentCase { Closed, BeginOnly, EndOnly };

// An edge attachment: a pair of endpoints, or a single endpoint when the
// edge hangs loose on the other side (an open edge).
template <class Id>
struct Attach {
  AttachmentCase kind = AttachmentCase::Closed;
  std::optional<Id> begin;  // present for Closed and BeginOnly
  std::optional<Id> end;    // present for Closed and EndOnly

  static Attach closed(Id b, Id e) {
    return Attach{AttachmentCase::Closed, std::move(b), std::move(e)};
  }
  static Attach begin_only(Id b) {
    return Attach{AttachmentCase::BeginOnly, std::move(b), std::nullopt};
  }
  static Attach end_only(Id e) {
    return Attach{AttachmentCase::EndOnly, std::nullopt, std::move(e)};
  }

  bool is_closed() const { return kind == AttachmentCase::Closed; }

  auto operator<=>(const Attach&) const = default;
};

using Attachment = Attach<VertexId>;
using PortAttachment = Attach<PortId>;
using NodeAttachment = Attach<NodeId>;

// Generalized oriented multigraph: vertices plus an incidence mapping that
// sends each edge to an attachment. Distinct edges may share an attachment.
struct GeneralizedMultigraph {
  std::set<VertexId> vertices;
  std::map<EdgeId, Attachment> edges;

  bool has_vertex(const VertexId& v) const { return vertices.count(v) > 0; }

  auto operator<=>(const GeneralizedMultigraph&) const = default;
};

// Variable flavor: the incidence mapping is set-valued. Every edge maps to a
// nonempty set of admissible attachments; singleton sets everywhere mean the
// graph is deterministic.
struct VariableMultigraph {
  std::set<VertexId> vertices;
  std::map<EdgeId, std::set<Attachment>> edges;

  bool is_deterministic() const;
  std::optional<GeneralizedMultigraph> to_deterministic() const;
  static VariableMultigraph lift(const GeneralizedMultigraph& g);

  auto operator<=>(const VariableMultigraph&) const = default;
};

// A vertex pair / edge pair mapping between two multigraphs.
struct GraphMorphism {
  std::map<VertexId, VertexId> vertex_map;
  std::map<EdgeId, EdgeId> edge_map;

  auto operator<=>(const GraphMorphism&) const = default;
};

std::vector<Violation> validate_multigraph(const GeneralizedMultigraph& g);
std::vector<Violation> validate_multigraph(const VariableMultigraph& g);

// True iff every edge is attached on both sides (Im c lies in V x V).
bool is_conventional(const GeneralizedMultigraph& g);
bool is_conventional(const VariableMultigraph& g);

// True when the incidence mapping is injective, i.e. no two edges share an
// attachment. Recorded distinction between multigraphs and plain graphs;
// nothing else in the library depends on it.
bool is_simple(const GeneralizedMultigraph& g);

struct OpenEdges {
  std::set<EdgeId> begin_open;
  std::set<EdgeId> end_open;

  bool empty() const { return begin_open.empty() && end_open.empty(); }
  auto operator<=>(const OpenEdges&) const = default;
};

OpenEdges open_edges(const GeneralizedMultigraph& g);

// Weak-connectivity partition of the vertices, ignoring edge direction.
// Open edges connect nothing. Components come out ordered by their least
// vertex id.
std::vector<std::set<VertexId>> components(const GeneralizedMultigraph& g);

bool is_connected(const GeneralizedMultigraph& g);

struct FanDegrees {
  std::size_t fan_in = 0;
  std::size_t fan_out = 0;

  auto operator<=>(const FanDegrees&) const = default;
};

// fan_in counts edges whose end attaches to v, fan_out those whose begin
// does. Throws UnknownVertex when v is not in g.
FanDegrees fan_degrees(const GeneralizedMultigraph& g, const VertexId& v);

// True iff m maps g into h preserving the attachment case and endpoint
// images of every edge. Throws PartialMap when m misses a vertex or edge
// of g.
bool check_graph_morphism(const GeneralizedMultigraph& g,
                          const GeneralizedMultigraph& h,
                          const GraphMorphism& m);

// All morphisms g -> h in lexicographic order of their vertex maps (then
// edge maps). Guarded: throws SearchSpaceTooLarge when the raw candidate
// product exceeds 10^7.
std::vector<GraphMorphism> enumerate_graph_morphisms(
    const GeneralizedMultigraph& g, const GeneralizedMultigraph& h);

GraphMorphism identity_graph_morphism(const GeneralizedMultigraph& g);
GraphMorphism compose(const GraphMorphism& first, const GraphMorphism& then);

// Generalized oriented submultigraph check. For the variable flavor the
// attachment sets of the sub must be contained in those of the super.
bool is_submultigraph(const GeneralizedMultigraph& sub,
                      const GeneralizedMultigraph& super);
bool is_submultigraph(const VariableMultigraph& sub,
                      const VariableMultigraph& super);

// Which (has_end_open, has_begin_open) combinations some resolution of the
// set-valued incidence can realize. Drives the role classification of
// nondeterministic schemas.
std::set<std::pair<bool, bool>> achievable_openness(const VariableMultigraph& g);

}  // namespace schemata

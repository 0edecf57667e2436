#pragma once

#include <compare>
#include <string>

namespace schemata {

// Identifiers are strings with a phantom tag so node, port, link, vertex and
// edge ids cannot be mixed up accidentally. Ordering is the lexicographic
// order of the underlying string, which keeps every enumeration and
// serialization in this library reproducible.
template <class Tag>
struct Ident {
  std::string value;

  Ident() = default;
  explicit Ident(std::string v) : value(std::move(v)) {}

  auto operator<=>(const Ident&) const = default;
};

using NodeId = Ident<struct NodeIdTag>;
using PortId = Ident<struct PortIdTag>;
using LinkId = Ident<struct LinkIdTag>;
using VertexId = Ident<struct VertexIdTag>;
using EdgeId = Ident<struct EdgeIdTag>;

// Grid derivations reuse node/port ids as vertex ids and link ids as edge ids.
inline VertexId vertex_of(const NodeId& n) { return VertexId{n.value}; }
inline VertexId vertex_of(const PortId& p) { return VertexId{p.value}; }
inline EdgeId edge_of(const LinkId& l) { return EdgeId{l.value}; }

}  // namespace schemata

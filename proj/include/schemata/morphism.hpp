#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "schemata/schema.hpp"

namespace schemata {

// A mapping of schema slots: nodes, edges and (for port schemas) ports.
struct SchemaMorphism {
  std::string domain;
  std::string codomain;
  std::map<NodeId, NodeId> node_map;
  std::map<LinkId, LinkId> edge_map;
  std::map<PortId, PortId> port_map;

  auto operator<=>(const SchemaMorphism&) const = default;
};

struct MorphismFlags {
  bool structural = false;  // adjacency and port assignment commute
  bool weak = false;        // node-level adjacency alone commutes
  bool typed = false;       // structural and the type conditions hold
  bool v_mono = false;
  bool e_mono = false;
  bool v_epi = false;
  bool e_epi = false;

  bool ve_mono() const { return v_mono && e_mono; }
  bool ve_epi() const { return v_epi && e_epi; }

  auto operator<=>(const MorphismFlags&) const = default;
};

// Classification of a slot map. Throws PartialMap when the maps miss a
// domain slot and SchemaMismatch when the schemas' flavors differ.
MorphismFlags check_structural(const Schema& s, const Schema& t, const SchemaMorphism& m);

// The type conditions alone: variables land on variables or on constants
// inside their range, constants land on equal-kind constants.
bool type_conditions_hold(const Schema& s, const Schema& t, const SchemaMorphism& m);

// Def-style typed check; requires the morphism to be structural first and
// throws NotStructural otherwise.
bool check_typed(const Schema& s, const Schema& t, const SchemaMorphism& m);

SchemaMorphism identity_morphism(const Schema& s);

// Componentwise composition; throws NotComposable when the maps do not chain.
SchemaMorphism compose(const SchemaMorphism& first, const SchemaMorphism& then);

// The canonical slot-identity morphism between two same-shaped schemas
// (e.g. a concretization and its source).
SchemaMorphism slot_identity_morphism(const Schema& from, const Schema& to);

struct ImageResult {
  Schema image;
  SchemaMorphism onto;       // domain ->> image (V- and E-epi)
  SchemaMorphism inclusion;  // image -> codomain
};

// The image subschema: exactly the mapped slots, carrying the mapped
// structure. Throws NotStructural when m is not structural.
ImageResult image(const Schema& s, const Schema& t, const SchemaMorphism& m);

struct HomSearchOptions {
  bool typed = false;      // require the type conditions
  bool weak_only = false;  // node/edge maps only; ignore ports
  bool mono = false;       // require VE-mono
  bool epi = false;        // require VE-epi
  std::size_t limit = 0;   // 0 = unlimited
  std::size_t budget = 5000000;  // search steps before SearchSpaceTooLarge
};

// Backtracking search for structural homomorphisms s -> t, deterministic
// order (candidates sorted by kind path, then slot id).
std::vector<SchemaMorphism> find_homomorphisms(const Schema& s, const Schema& t,
                                               const HomSearchOptions& options = {});

struct SubschemaResult {
  bool subschema = false;          // slot containment plus restriction
  bool structural = false;         // G(p) is a submultigraph of G(r)
  bool strong_structural = false;  // CG-level containment plus assignment restriction
  std::optional<SchemaMorphism> witness;  // inclusion when subschema holds
};

SubschemaResult subschema_check(const Schema& p, const Schema& r);

struct CompletenessFlags {
  bool v_complete = false;
  bool e_complete = false;
  bool p_complete = false;

  auto operator<=>(const CompletenessFlags&) const = default;
};

// Flags for a subschema q of r; throws NotASubschema when it is not one.
CompletenessFlags completeness_flags(const Schema& q, const Schema& r);

// The largest subschema of the domain whose slots map into q. Throws
// NotStructural / NotASubschema on bad inputs.
Schema preimage(const Schema& s, const Schema& t, const SchemaMorphism& m,
                const Schema& q);

// Restriction of m to a subschema q of its domain.
SchemaMorphism restrict_morphism(const Schema& s, const Schema& t,
                                 const SchemaMorphism& m, const Schema& q);

}  // namespace schemata

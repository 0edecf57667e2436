#pragma once

#include <string>
#include <variant>

#include "schemata/morphism.hpp"
#include "schemata/schema.hpp"

namespace schemata {

// The linear form of schemas, automata and morphisms. One document per
// text; '#' starts a line comment; ids are [A-Za-z_][A-Za-z0-9_]*.
//
//   schema NAME {
//     kinds { node automaton/turing_machine ; link link/coax ; }
//     annotation "free text" ;
//     node n1 : const automaton/turing_machine ;
//     node n2 : var T range { automaton/turing_machine } ;
//     node n3 : param automaton/turing_machine with tapes = 2, heads = var H range { 1, 2 } ;
//     port p1 in internal of n1 ;
//     port p2 out internal of { n1 | n2 } ;
//     port p3 in external of node n1 ;
//     port p4 out external ;
//     link l1 : info simple from p2 to p1 ;
//     link l2 : control to p1 ;                      # end-open
//     link l3 : info attach { p2 -> p1 | p2 -> } ;   # general option set
//   }
//
// A basic_schema document has no ports and its links attach nodes. Morphism
// documents list the three maps:
//
//   morphism NAME { domain A ; codomain B ; node n1 -> m1 ; link l1 -> k1 ; }
//
// Zero-variable, single-valued schema documents are grid automata
// (realize them with an empty binding).

using Document = std::variant<PortSchema, BasicSchema, SchemaMorphism>;

// Strict parsing rejects documents with semantic violations (unknown
// references, direction errors, range conflicts); lenient parsing builds
// whatever the text declares so `validate` can report on it.
Document parse_document(const std::string& text, bool strict = true);

// Convenience: parse and require a schema document.
Schema parse_schema(const std::string& text, bool strict = true);

std::string serialize(const PortSchema& s);
std::string serialize(const BasicSchema& s);
std::string serialize(const Schema& s);
std::string serialize(const GridAutomaton& ga);
std::string serialize(const BasicGridAutomaton& ga);
std::string serialize(const SchemaMorphism& m);

// Kind registration files: one `node|port|link KINDPATH` per line.
KindUniverse parse_kind_universe(const std::string& text);
std::string serialize_kind_universe(const KindUniverse& universe);

}  // namespace schemata

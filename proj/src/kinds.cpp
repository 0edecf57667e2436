#include "schemata/kinds.hpp"

#include "schemata/errors.hpp"

#include <sstream>

namespace schemata {

const char* sort_name(Sort s) {
  switch (s) {
    case Sort::Node: return "node";
    case Sort::Port: return "port";
    case Sort::Link: return "link";
  }
  return "?";
}

std::string KindPath::str() const {
  std::string out;
  for (std::size_t i = 0; i < tags.size(); ++i) {
    if (i) out += '/';
    out += tags[i];
  }
  return out;
}

KindPath KindPath::parse(const std::string& text) {
  KindPath path;
  std::string tag;
  std::istringstream in(text);
  while (std::getline(in, tag, '/')) {
    if (tag.empty())
      throw Error(Errc::SemanticError, "empty tag in kind path '" + text + "'");
    path.tags.push_back(tag);
  }
  if (path.tags.empty())
    throw Error(Errc::SemanticError, "empty kind path");
  return path;
}

bool KindPath::under(const KindPath& prefix) const {
  if (prefix.tags.size() > tags.size()) return false;
  for (std::size_t i = 0; i < prefix.tags.size(); ++i)
    if (prefix.tags[i] != tags[i]) return false;
  return true;
}

std::string param_value_str(const ParamValue& v) {
  if (std::holds_alternative<std::int64_t>(v))
    return std::to_string(std::get<std::int64_t>(v));
  return std::get<std::string>(v);
}

KindPath generic_port_kind() { return KindPath{{"port"}}; }

KindPath generic_link_kind(int link_class_index) {
  switch (link_class_index) {
    case 0: return KindPath{{"link", "info"}};
    case 1: return KindPath{{"link", "control"}};
    default: return KindPath{{"link", "process"}};
  }
}

KindUniverse::KindUniverse() {
  registered_[static_cast<int>(Sort::Port)].insert(generic_port_kind());
  for (int c = 0; c < 3; ++c)
    registered_[static_cast<int>(Sort::Link)].insert(generic_link_kind(c));
}

void KindUniverse::register_kind(Sort sort, const KindPath& kind) {
  if (kind.empty())
    throw Error(Errc::SemanticError, "cannot register an empty kind path");
  registered_[static_cast<int>(sort)].insert(kind);
}

bool KindUniverse::contains(Sort sort, const KindPath& kind) const {
  return registered_[static_cast<int>(sort)].count(kind) > 0;
}

const std::set<KindPath>& KindUniverse::kinds(Sort sort) const {
  return registered_[static_cast<int>(sort)];
}

std::set<KindPath> KindUniverse::under(Sort sort, const KindPath& prefix) const {
  std::set<KindPath> out;
  for (const auto& k : kinds(sort))
    if (k.under(prefix)) out.insert(k);
  return out;
}

void KindUniverse::merge(const KindUniverse& other) {
  for (int s = 0; s < 3; ++s)
    registered_[s].insert(other.registered_[s].begin(), other.registered_[s].end());
}

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::UnknownVertex: return "UnknownVertex";
    case Errc::PartialMap: return "PartialMap";
    case Errc::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
    case Errc::InvalidAutomaton: return "InvalidAutomaton";
    case Errc::InvalidSchema: return "InvalidSchema";
    case Errc::UnknownVariable: return "UnknownVariable";
    case Errc::RangeViolation: return "RangeViolation";
    case Errc::ResidualVariables: return "ResidualVariables";
    case Errc::ResidualNondeterminism: return "ResidualNondeterminism";
    case Errc::RangeExcludesOriginal: return "RangeExcludesOriginal";
    case Errc::OccurrenceNotConstant: return "OccurrenceNotConstant";
    case Errc::EmptyRestriction: return "EmptyRestriction";
    case Errc::NotASubset: return "NotASubset";
    case Errc::NotStructural: return "NotStructural";
    case Errc::NotComposable: return "NotComposable";
    case Errc::SchemaMismatch: return "SchemaMismatch";
    case Errc::NotASubschema: return "NotASubschema";
    case Errc::MissingBehavior: return "MissingBehavior";
    case Errc::BehaviorKindMismatch: return "BehaviorKindMismatch";
    case Errc::AlphabetMismatch: return "AlphabetMismatch";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::SemanticError: return "SemanticError";
  }
  return "Error";
}

}  // namespace schemata

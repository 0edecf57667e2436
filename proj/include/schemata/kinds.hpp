#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace schemata {

// The three sorts of schema elements that carry a kind taxonomy.
enum class Sort { Node, Port, Link };

const char* sort_name(Sort s);

// A taxonomy path from the most general to the most specific tag,
// e.g. {"automaton", "turing_machine", "one_tape"}.
struct KindPath {
  std::vector<std::string> tags;

  KindPath() = default;
  explicit KindPath(std::vector<std::string> t) : tags(std::move(t)) {}

  bool empty() const { return tags.empty(); }
  std::string str() const;                  // tags joined with '/'
  static KindPath parse(const std::string& text);
  bool under(const KindPath& prefix) const;  // prefix of this path?

  auto operator<=>(const KindPath&) const = default;
};

// Parameter values are integers or bare identifiers.
using ParamValue = std::variant<std::int64_t, std::string>;

std::string param_value_str(const ParamValue& v);

// The registered, finite kind universe for one run. Membership checks,
// Universal-range enumeration and maximal abstraction are all relative to
// one of these. A handful of structural base kinds (generic port, the three
// link classes) is always present.
class KindUniverse {
 public:
  KindUniverse();

  void register_kind(Sort sort, const KindPath& kind);
  bool contains(Sort sort, const KindPath& kind) const;
  const std::set<KindPath>& kinds(Sort sort) const;

  // All registered kinds lying under the given prefix.
  std::set<KindPath> under(Sort sort, const KindPath& prefix) const;

  void merge(const KindUniverse& other);

  auto operator<=>(const KindUniverse&) const = default;

 private:
  std::array<std::set<KindPath>, 3> registered_;
};

// Base kinds that every universe carries.
KindPath generic_port_kind();
KindPath generic_link_kind(int link_class_index);  // 0 info, 1 control, 2 process

}  // namespace schemata

#include "schemata/canonical.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace schemata {

namespace {

std::string params_str(const std::map<std::string, ParamValue>& params) {
  std::string out;
  for (const auto& [k, v] : params) out += k + "=" + param_value_str(v) + ",";
  return out;
}

double factorial(std::size_t n) {
  double f = 1.0;
  for (std::size_t i = 2; i <= n; ++i) f *= static_cast<double>(i);
  return f;
}

// Serialization of a basic automaton under one node numbering: node kinds in
// index order, then link keys sorted. Links that stay tied are identical, so
// their relative order cannot matter.
std::string render_basic(const BasicGridAutomaton& ga,
                         const std::map<NodeId, std::size_t>& index) {
  std::vector<std::string> node_lines(index.size());
  for (const auto& [n, node] : ga.nodes)
    node_lines[index.at(n)] = node.kind.str() + "[" + params_str(node.params) + "]";

  std::vector<std::string> link_lines;
  for (const auto& [l, link] : ga.links) {
    const NodeAttachment& att = ga.node_adjacency.at(l);
    std::ostringstream key;
    switch (att.kind) {
      case AttachmentCase::Closed:
        key << "c:" << index.at(*att.begin) << ">" << index.at(*att.end);
        break;
      case AttachmentCase::BeginOnly: key << "b:" << index.at(*att.begin) << ">"; break;
      case AttachmentCase::EndOnly: key << "e:>" << index.at(*att.end); break;
    }
    key << ":" << link_class_name(link.link_class) << ":" << static_cast<int>(link.channel)
        << ":" << link.kind.str() << "[" << params_str(link.params) << "]";
    link_lines.push_back(key.str());
  }
  std::sort(link_lines.begin(), link_lines.end());

  std::string out;
  for (const auto& line : node_lines) out += line + ";";
  out += "|";
  for (const auto& line : link_lines) out += line + ";";
  return out;
}

}  // namespace

std::string canonical_form(const BasicGridAutomaton& ga, std::size_t budget) {
  std::vector<NodeId> nodes;
  for (const auto& [n, node] : ga.nodes) nodes.push_back(n);
  if (factorial(nodes.size()) > static_cast<double>(budget))
    throw Error(Errc::SearchSpaceTooLarge, "too many nodes to canonicalize");

  std::vector<std::size_t> perm(nodes.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::string best;
  do {
    std::map<NodeId, std::size_t> index;
    for (std::size_t i = 0; i < nodes.size(); ++i) index[nodes[i]] = perm[i];
    std::string form = render_basic(ga, index);
    if (best.empty() || form < best) best = std::move(form);
  } while (std::next_permutation(perm.begin(), perm.end()));
  if (best.empty()) best = render_basic(ga, {});
  return best;
}

namespace {

std::string render_port(const GridAutomaton& ga,
                        const std::map<NodeId, std::size_t>& node_index,
                        const std::map<PortId, std::size_t>& port_index) {
  std::vector<std::string> node_lines(node_index.size());
  for (const auto& [n, node] : ga.nodes)
    node_lines[node_index.at(n)] = node.kind.str() + "[" + params_str(node.params) + "]";

  std::vector<std::string> port_lines(port_index.size());
  for (const auto& [p, port] : ga.ports) {
    std::ostringstream line;
    line << (port.direction == PortDirection::Inlet ? "in" : "out") << ":";
    if (port.locus == PortLocus::Internal) {
      line << "int@" << node_index.at(ga.internal_assignment.at(p));
    } else {
      line << "ext";
      auto it = ga.external_assignment.find(p);
      if (it != ga.external_assignment.end()) {
        switch (it->second.kind) {
          case ExternalTarget::Kind::Node:
            line << "@n" << node_index.at(NodeId{it->second.id});
            break;
          case ExternalTarget::Kind::Port:
            line << "@p" << port_index.at(PortId{it->second.id});
            break;
          case ExternalTarget::Kind::Link: {
            // Parallel links with equal fingerprints are interchangeable, so
            // the target's fingerprint identifies it up to isomorphism.
            const LinkId target{it->second.id};
            const PortAttachment& att = ga.adjacency.at(target);
            line << "@l(";
            if (att.begin) line << port_index.at(*att.begin);
            line << ">";
            if (att.end) line << port_index.at(*att.end);
            line << ":" << link_class_name(ga.links.at(target).link_class) << ")";
            break;
          }
        }
      }
    }
    line << ":" << port.kind.str() << "[" << params_str(port.params) << "]";
    port_lines[port_index.at(p)] = line.str();
  }

  std::vector<std::string> link_lines;
  for (const auto& [l, link] : ga.links) {
    const PortAttachment& att = ga.adjacency.at(l);
    std::ostringstream key;
    switch (att.kind) {
      case AttachmentCase::Closed:
        key << "c:" << port_index.at(*att.begin) << ">" << port_index.at(*att.end);
        break;
      case AttachmentCase::BeginOnly: key << "b:" << port_index.at(*att.begin) << ">"; break;
      case AttachmentCase::EndOnly: key << "e:>" << port_index.at(*att.end); break;
    }
    key << ":" << link_class_name(link.link_class) << ":" << static_cast<int>(link.channel)
        << ":" << link.kind.str() << "[" << params_str(link.params) << "]";
    link_lines.push_back(key.str());
  }
  std::sort(link_lines.begin(), link_lines.end());

  std::string out;
  for (const auto& line : node_lines) out += line + ";";
  out += "|";
  for (std::size_t i = 0; i < port_lines.size(); ++i) out += port_lines[i] + ";";
  out += "|";
  for (const auto& line : link_lines) out += line + ";";
  return out;
}

}  // namespace

std::string canonical_form(const GridAutomaton& ga, std::size_t budget) {
  std::vector<NodeId> nodes;
  for (const auto& [n, node] : ga.nodes) nodes.push_back(n);

  // Ports are interchangeable within an (owner, direction, kind) symmetry
  // class; count the arrangements once for the budget check.
  double port_arrangements = 1.0;
  {
    std::map<std::string, std::size_t> sizes;
    for (const auto& [p, port] : ga.ports) {
      std::string key = (port.locus == PortLocus::Internal
                             ? "i:" + ga.internal_assignment.at(p).value
                             : "e:") +
                        ":" + (port.direction == PortDirection::Inlet ? "in" : "out") +
                        ":" + port.kind.str() + "[" + params_str(port.params) + "]";
      ++sizes[key];
    }
    for (const auto& [key, n] : sizes) port_arrangements *= factorial(n);
  }
  if (factorial(nodes.size()) * port_arrangements > static_cast<double>(budget))
    throw Error(Errc::SearchSpaceTooLarge, "too many symmetries to canonicalize");

  std::vector<std::size_t> node_perm(nodes.size());
  std::iota(node_perm.begin(), node_perm.end(), 0);
  std::string best;

  do {
    std::map<NodeId, std::size_t> node_index;
    for (std::size_t i = 0; i < nodes.size(); ++i) node_index[nodes[i]] = node_perm[i];

    // Group ports by a key that only mentions canonical node indices, so the
    // group order is identical for isomorphic automata.
    std::map<std::string, std::vector<PortId>> grouped;
    for (const auto& [p, port] : ga.ports) {
      std::string key = (port.locus == PortLocus::Internal
                             ? "i:" + std::to_string(node_index.at(
                                          ga.internal_assignment.at(p)))
                             : "e:") +
                        ":" + (port.direction == PortDirection::Inlet ? "in" : "out") +
                        ":" + port.kind.str() + "[" + params_str(port.params) + "]";
      grouped[key].push_back(p);
    }
    std::vector<std::vector<PortId>> groups;
    for (auto& [key, ports] : grouped) groups.push_back(ports);

    std::vector<std::vector<std::size_t>> perms(groups.size());
    for (std::size_t g = 0; g < groups.size(); ++g) {
      perms[g].resize(groups[g].size());
      std::iota(perms[g].begin(), perms[g].end(), 0);
    }

    while (true) {
      std::map<PortId, std::size_t> port_index;
      std::size_t next = 0;
      for (std::size_t g = 0; g < groups.size(); ++g)
        for (std::size_t i = 0; i < groups[g].size(); ++i)
          port_index[groups[g][perms[g][i]]] = next++;

      std::string form = render_port(ga, node_index, port_index);
      if (best.empty() || form < best) best = std::move(form);

      std::size_t g = groups.size();
      bool advanced = false;
      while (g > 0) {
        --g;
        if (std::next_permutation(perms[g].begin(), perms[g].end())) {
          advanced = true;
          break;
        }
        // next_permutation wrapped this group; carry into the previous one.
      }
      if (!advanced) break;
    }
  } while (std::next_permutation(node_perm.begin(), node_perm.end()));

  if (best.empty()) best = render_port(ga, {}, {});
  return best;
}

}  // namespace schemata

#include "schemata/dot_export.hpp"

#include <sstream>

namespace schemata {

namespace {

std::string element_label(const SchemaElement& el) {
  switch (el.kind) {
    case SchemaElement::Kind::Constant: return el.constant_kind.str();
    case SchemaElement::Kind::Variable: return el.var_name;
    case SchemaElement::Kind::Parameterized: {
      std::string out = el.constant_kind.str() + "[";
      bool first = true;
      for (const auto& [pname, entry] : el.params) {
        if (!first) out += ",";
        first = false;
        out += pname + "=";
        if (const auto* value = std::get_if<ParamValue>(&entry))
          out += param_value_str(*value);
        else
          out += std::get<ParamVar>(entry).name;
      }
      return out + "]";
    }
  }
  return "?";
}

const char* edge_style(LinkClass c) {
  switch (c) {
    case LinkClass::Information: return "solid";
    case LinkClass::Control: return "dashed";
    case LinkClass::Process: return "dotted";
  }
  return "solid";
}

// Renders the node-level view. The first (least) attachment option stands
// for a set-valued edge; a trailing '?' in the label marks the
// nondeterminism.
void render(std::ostringstream& out, const std::map<NodeId, SchemaElement>& nodes,
            const std::map<LinkId, LinkSlot>& links, const VariableMultigraph& grid,
            const DotOptions& options) {
  out << "digraph schema {\n";
  out << "  rankdir=" << options.rankdir << ";\n";
  for (const auto& [n, el] : nodes)
    out << "  \"" << n.value << "\" [label=\"" << n.value << " : " << element_label(el)
        << "\"];\n";
  int phantom = 0;
  for (const auto& [e, atts] : grid.edges) {
    const LinkSlot& slot = links.at(LinkId{e.value});
    const Attachment& att = *atts.begin();
    std::string label = e.value + (atts.size() > 1 ? "?" : "");
    std::string begin, end;
    if (att.begin) {
      begin = "\"" + att.begin->value + "\"";
    } else {
      begin = "\"__env_" + std::to_string(phantom++) + "\"";
      out << "  " << begin << " [shape=point,label=\"\"];\n";
    }
    if (att.end) {
      end = "\"" + att.end->value + "\"";
    } else {
      end = "\"__env_" + std::to_string(phantom++) + "\"";
      out << "  " << end << " [shape=point,label=\"\"];\n";
    }
    out << "  " << begin << " -> " << end << " [label=\"" << label << "\",style="
        << edge_style(slot.link_class) << "];\n";
  }
  out << "}\n";
}

}  // namespace

std::string export_dot(const PortSchema& s, const DotOptions& options) {
  std::ostringstream out;
  render(out, s.nodes, s.links, schema_grid(s), options);
  return out.str();
}

std::string export_dot(const BasicSchema& s, const DotOptions& options) {
  std::ostringstream out;
  render(out, s.nodes, s.links, schema_grid(s), options);
  return out.str();
}

std::string export_dot(const Schema& s, const DotOptions& options) {
  return std::visit([&](const auto& v) { return export_dot(v, options); }, s);
}

std::string export_dot(const GridAutomaton& ga, const DotOptions& options) {
  return export_dot(as_port_schema(ga), options);
}

std::string export_dot(const BasicGridAutomaton& ga, const DotOptions& options) {
  return export_dot(as_basic_schema(ga), options);
}

}  // namespace schemata

#include "schemata/text_format.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace schemata {

namespace {

// ---------------------------------------------------------------------------
// lexer

struct Token {
  enum class Kind { Ident, Int, String, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  long long number = 0;
  int line = 1;
  int col = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw Error(Errc::SyntaxError, "line " + std::to_string(line_) + ", col " +
                                       std::to_string(col_) + ": " + message);
  }

  char cur() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void bump() {
    if (pos_ >= text_.size()) return;
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void advance() {
    while (pos_ < text_.size()) {
      char c = cur();
      if (c == '#') {
        while (pos_ < text_.size() && cur() != '\n') bump();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        bump();
      } else {
        break;
      }
    }
    current_.line = line_;
    current_.col = col_;
    if (pos_ >= text_.size()) {
      current_.kind = Token::Kind::End;
      current_.text.clear();
      return;
    }
    char c = cur();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string word;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(cur())) || cur() == '_')) {
        word += cur();
        bump();
      }
      current_.kind = Token::Kind::Ident;
      current_.text = std::move(word);
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '-' && pos_ + 1 < text_.size() &&
         std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
      std::string digits;
      if (c == '-') {
        digits += c;
        bump();
      }
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(cur()))) {
        digits += cur();
        bump();
      }
      current_.kind = Token::Kind::Int;
      current_.text = digits;
      current_.number = std::stoll(digits);
      return;
    }
    if (c == '"') {
      bump();
      std::string value;
      while (pos_ < text_.size() && cur() != '"') {
        if (cur() == '\n') fail("unterminated string");
        value += cur();
        bump();
      }
      if (pos_ >= text_.size()) fail("unterminated string");
      bump();
      current_.kind = Token::Kind::String;
      current_.text = std::move(value);
      return;
    }
    if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
      bump();
      bump();
      current_.kind = Token::Kind::Punct;
      current_.text = "->";
      return;
    }
    static const std::string punct = "{}:;,|/=";
    if (punct.find(c) != std::string::npos) {
      current_.kind = Token::Kind::Punct;
      current_.text = std::string(1, c);
      bump();
      return;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token current_;
};

// ---------------------------------------------------------------------------
// parser

class Parser {
 public:
  explicit Parser(const std::string& text) : lex_(text) {}

  Document parse() {
    if (lex_.peek().kind == Token::Kind::End) {
      PortSchema empty;
      empty.name = "unnamed";
      return empty;
    }
    std::string keyword = expect_ident();
    if (keyword == "schema") return parse_port_schema();
    if (keyword == "basic_schema") return parse_basic_schema();
    if (keyword == "morphism") return parse_morphism();
    fail("expected 'schema', 'basic_schema' or 'morphism'");
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    const Token& t = lex_.peek();
    throw Error(Errc::SyntaxError, "line " + std::to_string(t.line) + ", col " +
                                       std::to_string(t.col) + ": " + message);
  }

  bool at_punct(const char* p) const {
    return lex_.peek().kind == Token::Kind::Punct && lex_.peek().text == p;
  }

  bool at_ident(const char* word) const {
    return lex_.peek().kind == Token::Kind::Ident && lex_.peek().text == word;
  }

  void expect_punct(const char* p) {
    if (!at_punct(p)) fail(std::string("expected '") + p + "'");
    lex_.take();
  }

  std::string expect_ident() {
    if (lex_.peek().kind != Token::Kind::Ident) fail("expected identifier");
    return lex_.take().text;
  }

  void expect_keyword(const char* word) {
    if (!at_ident(word)) fail(std::string("expected '") + word + "'");
    lex_.take();
  }

  KindPath parse_kind_path() {
    KindPath path;
    path.tags.push_back(expect_ident());
    while (at_punct("/")) {
      lex_.take();
      path.tags.push_back(expect_ident());
    }
    return path;
  }

  ParamValue parse_param_value() {
    if (lex_.peek().kind == Token::Kind::Int) return ParamValue{lex_.take().number};
    if (lex_.peek().kind == Token::Kind::Ident) return ParamValue{lex_.take().text};
    fail("expected a parameter value");
  }

  RangeDescriptor parse_range(Sort sort) {
    expect_keyword("range");
    if (at_ident("universal")) {
      lex_.take();
      return RangeDescriptor::universal(sort);
    }
    expect_punct("{");
    std::set<KindPath> kinds;
    if (!at_punct("}")) {
      kinds.insert(parse_kind_path());
      while (at_punct(",")) {
        lex_.take();
        kinds.insert(parse_kind_path());
      }
    }
    expect_punct("}");
    return RangeDescriptor::kind_set(sort, std::move(kinds));
  }

  RangeDescriptor parse_value_range() {
    expect_keyword("range");
    expect_punct("{");
    std::set<ParamValue> values;
    if (!at_punct("}")) {
      values.insert(parse_param_value());
      while (at_punct(",")) {
        lex_.take();
        values.insert(parse_param_value());
      }
    }
    expect_punct("}");
    return RangeDescriptor::param_set(std::move(values));
  }

  SchemaElement parse_element(Sort sort) {
    if (at_ident("const")) {
      lex_.take();
      return SchemaElement::constant(parse_kind_path());
    }
    if (at_ident("var")) {
      lex_.take();
      std::string name = expect_ident();
      return SchemaElement::variable(name, parse_range(sort));
    }
    if (at_ident("param")) {
      lex_.take();
      KindPath kind = parse_kind_path();
      expect_keyword("with");
      std::map<std::string, ParamEntry> entries;
      while (true) {
        std::string pname = expect_ident();
        expect_punct("=");
        if (at_ident("var")) {
          lex_.take();
          std::string vname = expect_ident();
          entries.emplace(pname, ParamVar{vname, parse_value_range()});
        } else {
          entries.emplace(pname, parse_param_value());
        }
        if (!at_punct(",")) break;
        lex_.take();
      }
      return SchemaElement::parameterized(std::move(kind), std::move(entries));
    }
    fail("expected 'const', 'var' or 'param'");
  }

  template <class Id>
  std::set<Id> parse_id_set() {
    std::set<Id> out;
    if (at_punct("{")) {
      lex_.take();
      out.insert(Id{expect_ident()});
      while (at_punct("|")) {
        lex_.take();
        out.insert(Id{expect_ident()});
      }
      expect_punct("}");
    } else {
      out.insert(Id{expect_ident()});
    }
    return out;
  }

  ExternalTarget parse_external_target() {
    std::string sort = expect_ident();
    std::string id = expect_ident();
    if (sort == "node") return ExternalTarget::node(NodeId{id});
    if (sort == "port") return ExternalTarget::port(PortId{id});
    if (sort == "link") return ExternalTarget::link(LinkId{id});
    fail("expected 'node', 'port' or 'link'");
  }

  void parse_kinds_section(KindUniverse& universe) {
    expect_punct("{");
    while (!at_punct("}")) {
      std::string sort = expect_ident();
      KindPath path = parse_kind_path();
      if (sort == "node") universe.register_kind(Sort::Node, path);
      else if (sort == "port") universe.register_kind(Sort::Port, path);
      else if (sort == "link") universe.register_kind(Sort::Link, path);
      else fail("expected 'node', 'port' or 'link'");
      expect_punct(";");
    }
    lex_.take();
  }

  // Attachment options for one link over an arbitrary id sort.
  template <class Id>
  std::set<Attach<Id>> parse_ends() {
    std::set<Attach<Id>> out;
    if (at_ident("attach")) {
      lex_.take();
      expect_punct("{");
      while (true) {
        if (at_punct("->")) {
          lex_.take();
          out.insert(Attach<Id>::end_only(Id{expect_ident()}));
        } else {
          Id begin{expect_ident()};
          expect_punct("->");
          if (at_punct("|") || at_punct("}")) {
            out.insert(Attach<Id>::begin_only(begin));
          } else {
            out.insert(Attach<Id>::closed(begin, Id{expect_ident()}));
          }
        }
        if (at_punct("|")) {
          lex_.take();
          continue;
        }
        break;
      }
      expect_punct("}");
      return out;
    }

    std::set<Id> begins, ends;
    if (at_ident("from")) {
      lex_.take();
      begins = parse_id_set<Id>();
    }
    if (at_ident("to")) {
      lex_.take();
      ends = parse_id_set<Id>();
    }
    if (begins.empty() && ends.empty())
      fail("link needs 'from', 'to' or 'attach'");
    if (ends.empty()) {
      for (const auto& b : begins) out.insert(Attach<Id>::begin_only(b));
    } else if (begins.empty()) {
      for (const auto& e : ends) out.insert(Attach<Id>::end_only(e));
    } else {
      for (const auto& b : begins)
        for (const auto& e : ends) out.insert(Attach<Id>::closed(b, e));
    }
    return out;
  }

  LinkClass parse_link_class() {
    std::string word = expect_ident();
    if (word == "info") return LinkClass::Information;
    if (word == "control") return LinkClass::Control;
    if (word == "process") return LinkClass::Process;
    fail("expected 'info', 'control' or 'process'");
  }

  ChannelKind maybe_channel() {
    if (at_ident("simple")) return lex_.take(), ChannelKind::Simple;
    if (at_ident("filter")) return lex_.take(), ChannelKind::Filtering;
    if (at_ident("correct")) return lex_.take(), ChannelKind::Correcting;
    return ChannelKind::Simple;
  }

  bool element_ahead() const {
    return at_ident("const") || at_ident("var") || at_ident("param");
  }

  PortSchema parse_port_schema() {
    PortSchema s;
    s.name = expect_ident();
    expect_punct("{");
    while (!at_punct("}")) {
      std::string keyword = expect_ident();
      if (keyword == "kinds") {
        parse_kinds_section(s.universe);
      } else if (keyword == "annotation") {
        if (lex_.peek().kind != Token::Kind::String) fail("expected a string");
        s.annotations.push_back(lex_.take().text);
        expect_punct(";");
      } else if (keyword == "node") {
        NodeId id{expect_ident()};
        expect_punct(":");
        if (!s.nodes.emplace(id, parse_element(Sort::Node)).second)
          fail("duplicate node '" + id.value + "'");
        expect_punct(";");
      } else if (keyword == "port") {
        PortId id{expect_ident()};
        PortSlot slot;
        std::string dir = expect_ident();
        if (dir == "in") slot.direction = PortDirection::Inlet;
        else if (dir == "out") slot.direction = PortDirection::Outlet;
        else fail("expected 'in' or 'out'");
        if (element_ahead()) slot.element = parse_element(Sort::Port);
        std::string locus = expect_ident();
        if (locus == "internal") {
          slot.locus = PortLocus::Internal;
          expect_keyword("of");
          s.internal_assignment.emplace(id, parse_id_set<NodeId>());
        } else if (locus == "external") {
          slot.locus = PortLocus::External;
          if (at_ident("of")) {
            lex_.take();
            std::set<ExternalTarget> targets;
            if (at_punct("{")) {
              lex_.take();
              targets.insert(parse_external_target());
              while (at_punct("|")) {
                lex_.take();
                targets.insert(parse_external_target());
              }
              expect_punct("}");
            } else {
              targets.insert(parse_external_target());
            }
            s.external_assignment.emplace(id, std::move(targets));
          }
        } else {
          fail("expected 'internal' or 'external'");
        }
        if (!s.ports.emplace(id, std::move(slot)).second)
          fail("duplicate port '" + id.value + "'");
        expect_punct(";");
      } else if (keyword == "link") {
        LinkId id{expect_ident()};
        expect_punct(":");
        LinkSlot slot;
        slot.link_class = parse_link_class();
        slot.channel = maybe_channel();
        slot.element = element_ahead()
                           ? parse_element(Sort::Link)
                           : SchemaElement::constant(
                                 generic_link_kind(static_cast<int>(slot.link_class)));
        s.adjacency.emplace(id, parse_ends<PortId>());
        if (!s.links.emplace(id, std::move(slot)).second)
          fail("duplicate link '" + id.value + "'");
        expect_punct(";");
      } else {
        fail("unexpected declaration '" + keyword + "'");
      }
    }
    lex_.take();
    return s;
  }

  BasicSchema parse_basic_schema() {
    BasicSchema s;
    s.name = expect_ident();
    expect_punct("{");
    while (!at_punct("}")) {
      std::string keyword = expect_ident();
      if (keyword == "kinds") {
        parse_kinds_section(s.universe);
      } else if (keyword == "annotation") {
        if (lex_.peek().kind != Token::Kind::String) fail("expected a string");
        s.annotations.push_back(lex_.take().text);
        expect_punct(";");
      } else if (keyword == "node") {
        NodeId id{expect_ident()};
        expect_punct(":");
        if (!s.nodes.emplace(id, parse_element(Sort::Node)).second)
          fail("duplicate node '" + id.value + "'");
        expect_punct(";");
      } else if (keyword == "link") {
        LinkId id{expect_ident()};
        expect_punct(":");
        LinkSlot slot;
        slot.link_class = parse_link_class();
        slot.channel = maybe_channel();
        slot.element = element_ahead()
                           ? parse_element(Sort::Link)
                           : SchemaElement::constant(
                                 generic_link_kind(static_cast<int>(slot.link_class)));
        s.node_adjacency.emplace(id, parse_ends<NodeId>());
        if (!s.links.emplace(id, std::move(slot)).second)
          fail("duplicate link '" + id.value + "'");
        expect_punct(";");
      } else {
        fail("unexpected declaration '" + keyword + "'");
      }
    }
    lex_.take();
    return s;
  }

  SchemaMorphism parse_morphism() {
    SchemaMorphism m;
    expect_ident();  // the morphism's own name is not material
    expect_punct("{");
    while (!at_punct("}")) {
      std::string keyword = expect_ident();
      if (keyword == "domain") {
        m.domain = expect_ident();
      } else if (keyword == "codomain") {
        m.codomain = expect_ident();
      } else if (keyword == "node") {
        NodeId from{expect_ident()};
        expect_punct("->");
        m.node_map.emplace(from, NodeId{expect_ident()});
      } else if (keyword == "port") {
        PortId from{expect_ident()};
        expect_punct("->");
        m.port_map.emplace(from, PortId{expect_ident()});
      } else if (keyword == "link") {
        LinkId from{expect_ident()};
        expect_punct("->");
        m.edge_map.emplace(from, LinkId{expect_ident()});
      } else {
        fail("unexpected declaration '" + keyword + "'");
      }
      expect_punct(";");
    }
    lex_.take();
    return m;
  }

  Lexer lex_;
};

void require_semantically_valid(const Document& doc) {
  std::vector<Violation> violations;
  if (const auto* port = std::get_if<PortSchema>(&doc)) violations = validate_schema(*port);
  if (const auto* basic = std::get_if<BasicSchema>(&doc)) violations = validate_schema(*basic);
  if (!violations.empty())
    throw Error(Errc::SemanticError, violations.front().rule + " on '" +
                                         violations.front().element + "': " +
                                         violations.front().detail);
}

}  // namespace

Document parse_document(const std::string& text, bool strict) {
  Parser parser(text);
  Document doc = parser.parse();
  if (strict) require_semantically_valid(doc);
  return doc;
}

Schema parse_schema(const std::string& text, bool strict) {
  Document doc = parse_document(text, strict);
  if (auto* port = std::get_if<PortSchema>(&doc)) return std::move(*port);
  if (auto* basic = std::get_if<BasicSchema>(&doc)) return std::move(*basic);
  throw Error(Errc::SemanticError, "expected a schema document, found a morphism");
}

// ---------------------------------------------------------------------------
// serialization

namespace {

std::string render_param_value(const ParamValue& v) { return param_value_str(v); }

std::string render_range(const RangeDescriptor& r) {
  if (r.kind == RangeDescriptor::Kind::Universal) return "range universal";
  std::string out = "range { ";
  bool first = true;
  if (r.kind == RangeDescriptor::Kind::KindSet) {
    for (const auto& k : r.kinds) {
      if (!first) out += ", ";
      first = false;
      out += k.str();
    }
  } else {
    for (const auto& v : r.values) {
      if (!first) out += ", ";
      first = false;
      out += render_param_value(v);
    }
  }
  out += " }";
  return out;
}

std::string render_element(const SchemaElement& el) {
  switch (el.kind) {
    case SchemaElement::Kind::Constant:
      return "const " + el.constant_kind.str();
    case SchemaElement::Kind::Variable:
      return "var " + el.var_name + " " + render_range(el.range);
    case SchemaElement::Kind::Parameterized: {
      std::string out = "param " + el.constant_kind.str() + " with ";
      bool first = true;
      for (const auto& [pname, entry] : el.params) {
        if (!first) out += ", ";
        first = false;
        out += pname + " = ";
        if (const auto* value = std::get_if<ParamValue>(&entry)) {
          out += render_param_value(*value);
        } else {
          const ParamVar& pv = std::get<ParamVar>(entry);
          out += "var " + pv.name + " " + render_range(pv.range);
        }
      }
      return out;
    }
  }
  return "";
}

template <class Id>
std::string render_id_set(const std::set<Id>& ids) {
  if (ids.size() == 1) return ids.begin()->value;
  std::string out = "{ ";
  bool first = true;
  for (const auto& id : ids) {
    if (!first) out += " | ";
    first = false;
    out += id.value;
  }
  out += " }";
  return out;
}

// Canonical attachment rendering: from/to sugar whenever the option set is a
// full begin x end product (or purely open on one side), the explicit
// attach-list otherwise.
template <class Id>
std::string render_ends(const std::set<Attach<Id>>& options) {
  std::set<Id> begins, ends;
  bool all_closed = true, all_begin = true, all_end = true;
  for (const auto& att : options) {
    if (att.kind != AttachmentCase::Closed) all_closed = false;
    if (att.kind != AttachmentCase::BeginOnly) all_begin = false;
    if (att.kind != AttachmentCase::EndOnly) all_end = false;
    if (att.begin) begins.insert(*att.begin);
    if (att.end) ends.insert(*att.end);
  }
  if (all_closed && options.size() == begins.size() * ends.size())
    return "from " + render_id_set(begins) + " to " + render_id_set(ends);
  if (all_begin) return "from " + render_id_set(begins);
  if (all_end) return "to " + render_id_set(ends);

  std::string out = "attach { ";
  bool first = true;
  for (const auto& att : options) {
    if (!first) out += " | ";
    first = false;
    if (att.begin) out += att.begin->value + " ";
    out += "->";
    if (att.end) out += " " + att.end->value;
  }
  out += " }";
  return out;
}

std::string render_kinds(const KindUniverse& universe) {
  const KindUniverse builtins;
  std::string body;
  auto emit = [&](Sort sort, const char* name) {
    for (const auto& k : universe.kinds(sort)) {
      if (builtins.contains(sort, k)) continue;
      body += std::string("    ") + name + " " + k.str() + " ;\n";
    }
  };
  emit(Sort::Node, "node");
  emit(Sort::Port, "port");
  emit(Sort::Link, "link");
  if (body.empty()) return "";
  return "  kinds {\n" + body + "  }\n";
}

const char* render_class(LinkClass c) { return link_class_name(c); }

std::string render_channel(ChannelKind c) {
  switch (c) {
    case ChannelKind::Simple: return "";
    case ChannelKind::Filtering: return " filter";
    case ChannelKind::Correcting: return " correct";
  }
  return "";
}

std::string render_link_element(const LinkSlot& slot) {
  SchemaElement def =
      SchemaElement::constant(generic_link_kind(static_cast<int>(slot.link_class)));
  if (slot.element == def) return "";
  return " " + render_element(slot.element);
}

std::string render_external_target(const ExternalTarget& t) {
  const char* sort = t.kind == ExternalTarget::Kind::Node   ? "node"
                     : t.kind == ExternalTarget::Kind::Port ? "port"
                                                            : "link";
  return std::string(sort) + " " + t.id;
}

}  // namespace

std::string serialize(const PortSchema& s) {
  std::ostringstream out;
  out << "schema " << (s.name.empty() ? "unnamed" : s.name) << " {\n";
  out << render_kinds(s.universe);
  for (const auto& note : s.annotations) out << "  annotation \"" << note << "\" ;\n";
  for (const auto& [n, el] : s.nodes)
    out << "  node " << n.value << " : " << render_element(el) << " ;\n";
  for (const auto& [p, slot] : s.ports) {
    out << "  port " << p.value << (slot.direction == PortDirection::Inlet ? " in" : " out");
    SchemaElement def = SchemaElement::constant(generic_port_kind());
    if (slot.element != def) out << " " << render_element(slot.element);
    if (slot.locus == PortLocus::Internal) {
      out << " internal of " << render_id_set(s.internal_assignment.at(p));
    } else {
      out << " external";
      auto it = s.external_assignment.find(p);
      if (it != s.external_assignment.end()) {
        out << " of ";
        if (it->second.size() == 1) {
          out << render_external_target(*it->second.begin());
        } else {
          out << "{ ";
          bool first = true;
          for (const auto& t : it->second) {
            if (!first) out << " | ";
            first = false;
            out << render_external_target(t);
          }
          out << " }";
        }
      }
    }
    out << " ;\n";
  }
  for (const auto& [l, slot] : s.links)
    out << "  link " << l.value << " : " << render_class(slot.link_class)
        << render_channel(slot.channel) << render_link_element(slot) << " "
        << render_ends(s.adjacency.at(l)) << " ;\n";
  out << "}\n";
  return out.str();
}

std::string serialize(const BasicSchema& s) {
  std::ostringstream out;
  out << "basic_schema " << (s.name.empty() ? "unnamed" : s.name) << " {\n";
  out << render_kinds(s.universe);
  for (const auto& note : s.annotations) out << "  annotation \"" << note << "\" ;\n";
  for (const auto& [n, el] : s.nodes)
    out << "  node " << n.value << " : " << render_element(el) << " ;\n";
  for (const auto& [l, slot] : s.links)
    out << "  link " << l.value << " : " << render_class(slot.link_class)
        << render_channel(slot.channel) << render_link_element(slot) << " "
        << render_ends(s.node_adjacency.at(l)) << " ;\n";
  out << "}\n";
  return out.str();
}

std::string serialize(const Schema& s) {
  return std::visit([](const auto& v) { return serialize(v); }, s);
}

std::string serialize(const GridAutomaton& ga) { return serialize(as_port_schema(ga)); }

std::string serialize(const BasicGridAutomaton& ga) {
  return serialize(as_basic_schema(ga));
}

std::string serialize(const SchemaMorphism& m) {
  std::ostringstream out;
  out << "morphism m {\n";
  out << "  domain " << (m.domain.empty() ? "unnamed" : m.domain) << " ;\n";
  out << "  codomain " << (m.codomain.empty() ? "unnamed" : m.codomain) << " ;\n";
  for (const auto& [a, b] : m.node_map)
    out << "  node " << a.value << " -> " << b.value << " ;\n";
  for (const auto& [a, b] : m.port_map)
    out << "  port " << a.value << " -> " << b.value << " ;\n";
  for (const auto& [a, b] : m.edge_map)
    out << "  link " << a.value << " -> " << b.value << " ;\n";
  out << "}\n";
  return out.str();
}

KindUniverse parse_kind_universe(const std::string& text) {
  KindUniverse universe;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream fields(line);
    std::string sort, path;
    if (!(fields >> sort)) continue;
    if (!(fields >> path))
      throw Error(Errc::SyntaxError,
                  "line " + std::to_string(lineno) + ": expected a kind path");
    Sort s;
    if (sort == "node") s = Sort::Node;
    else if (sort == "port") s = Sort::Port;
    else if (sort == "link") s = Sort::Link;
    else
      throw Error(Errc::SyntaxError,
                  "line " + std::to_string(lineno) + ": expected node, port or link");
    universe.register_kind(s, KindPath::parse(path));
  }
  return universe;
}

std::string serialize_kind_universe(const KindUniverse& universe) {
  std::string out;
  auto emit = [&](Sort sort, const char* name) {
    for (const auto& k : universe.kinds(sort))
      out += std::string(name) + " " + k.str() + "\n";
  };
  emit(Sort::Node, "node");
  emit(Sort::Port, "port");
  emit(Sort::Link, "link");
  return out;
}

}  // namespace schemata

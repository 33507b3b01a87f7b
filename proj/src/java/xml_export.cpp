#include "rulecraft/java/xml_export.hpp"

namespace rulecraft::java {
namespace {

void escape_into(std::string& out, std::string_view text) {
  for (char c : text) {
    switch (c) {
    case '&': out += "&amp;"; break;
    case '<': out += "&lt;"; break;
    case '>': out += "&gt;"; break;
    case '"': out += "&quot;"; break;
    case '\t': out += "&#9;"; break;
    case '\n': out += "&#10;"; break;
    case '\r': out += "&#13;"; break;
    default: out += c;
    }
  }
}

void attribute(std::string& out, std::string_view name, std::string_view value) {
  out += ' ';
  out += name;
  out += "=\"";
  escape_into(out, value);
  out += '"';
}

void list_attributes(std::string& out, std::string_view prefix,
                     const std::vector<std::string>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    attribute(out, std::string(prefix) + "-" + std::to_string(i + 1), values[i]);
  }
}

void write_attributes(std::string& out, const CodeTree& tree, const CodeNode& n) {
  switch (n.kind) {
  case NodeKind::CompilationUnit: attribute(out, "path", tree.path); break;
  case NodeKind::PackageDecl: attribute(out, "name", n.name); break;
  case NodeKind::ImportDecl:
    attribute(out, "name", n.name);
    list_attributes(out, "specifier", n.specifiers);
    break;
  case NodeKind::ClassDecl:
  case NodeKind::InterfaceDecl:
    attribute(out, "name", n.name);
    attribute(out, "visibility", n.visibility);
    list_attributes(out, "specifier", n.specifiers);
    if (n.kind == NodeKind::ClassDecl) attribute(out, "superclass", n.superclass_text);
    list_attributes(out, "interface", n.interface_texts);
    break;
  case NodeKind::FieldDecl:
  case NodeKind::LocalDeclStmt:
    attribute(out, "name", n.name);
    attribute(out, "visibility", n.visibility);
    list_attributes(out, "specifier", n.specifiers);
    attribute(out, "type", n.type_text);
    attribute(out, "init", n.initializer_text);
    break;
  case NodeKind::MethodDecl:
  case NodeKind::AbstractMethodDecl:
    attribute(out, "name", n.name);
    attribute(out, "visibility", n.visibility);
    list_attributes(out, "specifier", n.specifiers);
    attribute(out, "type", n.type_text);
    break;
  case NodeKind::ConstructorDecl:
    attribute(out, "name", n.name);
    attribute(out, "visibility", n.visibility);
    list_attributes(out, "specifier", n.specifiers);
    break;
  case NodeKind::Parameter:
    attribute(out, "name", n.name);
    list_attributes(out, "specifier", n.specifiers);
    attribute(out, "type", n.type_text);
    break;
  case NodeKind::ExpressionStmt:
  case NodeKind::ReturnStmt: attribute(out, "expr", n.expr_text); break;
  case NodeKind::Annotation: attribute(out, "text", n.annotation_text); break;
  case NodeKind::Block: break;
  }
  attribute(out, "line", std::to_string(n.span.start_line));
  attribute(out, "col", std::to_string(n.span.start_col));
  attribute(out, "endLine", std::to_string(n.span.end_line));
  attribute(out, "endCol", std::to_string(n.span.end_col));
}

void write_node(std::string& out, const CodeTree& tree, NodeId id, int depth) {
  const CodeNode& n = tree.node(id);
  out.append(static_cast<std::size_t>(depth) * 2, ' ');
  out += '<';
  out += node_kind_name(n.kind);
  write_attributes(out, tree, n);
  if (n.children.empty()) {
    out += "/>\n";
    return;
  }
  out += ">\n";
  for (NodeId child : n.children) write_node(out, tree, child, depth + 1);
  out.append(static_cast<std::size_t>(depth) * 2, ' ');
  out += "</";
  out += node_kind_name(n.kind);
  out += ">\n";
}

} // namespace

std::string export_xml(const CodeTree& tree) {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  if (!tree.nodes.empty()) write_node(out, tree, 0, 0);
  return out;
}

} // namespace rulecraft::java

#include "rulecraft/java/code_tree.hpp"

#include <array>

#include <openssl/evp.h>

namespace rulecraft::java {
namespace {

constexpr std::array<std::string_view, 15> kNames = {
    "compilationUnit", "packageDecl",        "importDecl",      "classDecl",
    "interfaceDecl",   "fieldDecl",          "methodDecl",      "abstractMethodDecl",
    "constructorDecl", "parameter",          "localDeclStmt",   "expressionStmt",
    "returnStmt",      "annotation",         "block",
};

bool same_attributes(const CodeNode& a, const CodeNode& b) {
  return a.kind == b.kind && a.name == b.name && a.visibility == b.visibility &&
         a.specifiers == b.specifiers && a.type_text == b.type_text &&
         a.superclass_text == b.superclass_text && a.interface_texts == b.interface_texts &&
         a.initializer_text == b.initializer_text && a.expr_text == b.expr_text &&
         a.annotation_text == b.annotation_text;
}

bool equal_subtree(const CodeTree& ta, NodeId a, const CodeTree& tb, NodeId b) {
  const CodeNode& na = ta.node(a);
  const CodeNode& nb = tb.node(b);
  if (!same_attributes(na, nb) || na.children.size() != nb.children.size()) return false;
  for (std::size_t i = 0; i < na.children.size(); ++i) {
    if (!equal_subtree(ta, na.children[i], tb, nb.children[i])) return false;
  }
  return true;
}

} // namespace

std::string_view node_kind_name(NodeKind kind) { return kNames[static_cast<std::size_t>(kind)]; }

std::optional<NodeKind> node_kind_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) return static_cast<NodeKind>(i);
  }
  return std::nullopt;
}

bool structurally_equal(const CodeTree& a, const CodeTree& b) {
  if (a.nodes.empty() || b.nodes.empty()) return a.nodes.empty() == b.nodes.empty();
  return equal_subtree(a, 0, b, 0);
}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(length * 2);
  for (unsigned int i = 0; i < length; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xF];
  }
  return out;
}

} // namespace rulecraft::java

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rulecraft::java {

enum class NodeKind : std::uint8_t {
  CompilationUnit,
  PackageDecl,
  ImportDecl,
  ClassDecl,
  InterfaceDecl,
  FieldDecl,
  MethodDecl,
  AbstractMethodDecl,
  ConstructorDecl,
  Parameter,
  LocalDeclStmt,
  ExpressionStmt,
  ReturnStmt,
  Annotation,
  Block,
};

// XML tag / display name, e.g. "methodDecl".
std::string_view node_kind_name(NodeKind kind);
std::optional<NodeKind> node_kind_from_name(std::string_view name);

// Lines and columns are 1-based; columns count bytes. The end position is
// the first character after the node (exclusive). `begin`/`end` are the
// matching byte offsets into the source.
struct SourceSpan {
  int start_line = 1;
  int start_col = 1;
  int end_line = 1;
  int end_col = 1;
  std::size_t begin = 0;
  std::size_t end = 0;

  bool operator==(const SourceSpan&) const = default;
  auto operator<=>(const SourceSpan&) const = default;
};

using NodeId = std::int32_t;
inline constexpr NodeId kNoNode = -1;

struct CodeNode {
  NodeKind kind = NodeKind::Block;
  // Which attributes are meaningful depends on the kind; see docs/xml-schema.md.
  std::string name;
  std::string visibility; // "public", "private", "protected" or "" (package-private)
  std::vector<std::string> specifiers;
  std::string type_text;
  std::string superclass_text;
  std::vector<std::string> interface_texts;
  std::string initializer_text;
  std::string expr_text;       // expression statement (without ';') or returned expression
  std::string annotation_text; // without the leading '@'
  SourceSpan span;
  NodeId parent = kNoNode;
  std::vector<NodeId> children;
};

// Nodes live in one array; index 0 is the compilation unit and every parent
// precedes its children.
struct CodeTree {
  std::string path;        // project-relative, forward slashes
  std::string source;
  std::string source_hash; // hex SHA-256 of `source`
  std::vector<CodeNode> nodes;

  const CodeNode& root() const { return nodes.front(); }
  const CodeNode& node(NodeId id) const { return nodes[static_cast<std::size_t>(id)]; }
  std::string_view text(const SourceSpan& span) const {
    return std::string_view(source).substr(span.begin, span.end - span.begin);
  }
};

// Compares kinds, attributes and children; spans are ignored.
bool structurally_equal(const CodeTree& a, const CodeTree& b);

std::string sha256_hex(std::string_view data);

} // namespace rulecraft::java

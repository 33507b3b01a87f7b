#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rulecraft/element_kind.hpp"
#include "rulecraft/pattern.hpp"
#include "rulecraft/rule_ast.hpp"

namespace rulecraft {

// Node attribute a test reads. Specifier and Interface are token lists.
enum class Attr { Name, Visibility, Specifier, Type, Superclass, Interface, Initializer, Expr, AnnotationText };

std::string_view attr_name(Attr attr);

// Expression literal compared after removing all whitespace.
struct ExprLiteral {
  std::string raw;
  std::string normalized;

  static ExprLiteral from(std::string raw, ElementKind kind);
};

std::string strip_whitespace(std::string_view text);

struct AttrTest {
  enum class Mode {
    Pattern,  // identifier pattern against the attribute (each token for lists)
    Expr,     // whitespace-free equality
    NonEmpty, // attribute or list is non-empty
  };
  Attr attr = Attr::Name;
  Mode mode = Mode::NonEmpty;
  std::optional<PatternExpr> pattern;
  std::string pattern_text;
  std::optional<ExprLiteral> expr;
};

struct NodeQuery;

// Boolean condition on a context node.
struct Cond {
  enum class Op {
    True,
    And,
    Or,
    Test,   // attribute test on the context node
    Exists, // some related node (child, member or body statement) matches `query`
    Self,   // the context node itself matches `query`
  };
  Op op = Op::True;
  std::vector<Cond> operands;
  std::optional<AttrTest> test;
  Box<NodeQuery> query;

  static Cond all(Cond lhs, Cond rhs);
  static Cond any(Cond lhs, Cond rhs);
};

struct NodeQuery {
  ElementKind target = ElementKind::Class;
  Cond condition;
  // Queries the owners must match, nearest first: ancestors[0] is tested
  // against the owner of the node, ancestors[1] against the owner's owner.
  // Ancestor queries have no ancestors of their own.
  std::vector<NodeQuery> ancestors;
};

struct QueryPair {
  NodeQuery quantifier;
  NodeQuery constraint;
  ElementKind eoi_kind = ElementKind::Class;
};

QueryPair compile(const RuleAst& rule);

// XPath 1.0 over the canonical XML export. `render_xpath` selects the nodes
// of a top-level query; ancestors render as enclosing location steps.
std::string render_xpath(const NodeQuery& query);

// Readable one-line form used by `explain`.
std::string describe(const NodeQuery& query);

} // namespace rulecraft

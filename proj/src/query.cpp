#include "rulecraft/query.hpp"

#include <cctype>

namespace rulecraft {
namespace {

using K = ElementKind;

bool is_property(ElementKind kind) {
  switch (kind) {
  case K::Type:
  case K::Extension:
  case K::Implementation:
  case K::InitialValue:
  case K::Name:
  case K::Specifier:
  case K::Visibility: return true;
  default: return false;
  }
}

AttrTest pattern_test(Attr attr, const std::string& text) {
  AttrTest t;
  t.attr = attr;
  t.mode = AttrTest::Mode::Pattern;
  t.pattern = parse_pattern(text).pattern;
  t.pattern_text = text;
  return t;
}

AttrTest expr_test(Attr attr, const std::string& text, ElementKind kind) {
  AttrTest t;
  t.attr = attr;
  t.mode = AttrTest::Mode::Expr;
  t.expr = ExprLiteral::from(text, kind);
  return t;
}

AttrTest non_empty(Attr attr) {
  AttrTest t;
  t.attr = attr;
  t.mode = AttrTest::Mode::NonEmpty;
  return t;
}

Cond test_cond(AttrTest test) {
  Cond c;
  c.op = Cond::Op::Test;
  c.test = std::move(test);
  return c;
}

// Test implied by a property leaf (or by the value of a statement element).
AttrTest value_test(const ElementNode& node) {
  const auto& v = node.value;
  const bool pattern = v && v->form == ValueLiteral::Form::Pattern;
  switch (node.kind) {
  case K::Name: return pattern ? pattern_test(Attr::Name, v->text) : non_empty(Attr::Name);
  case K::Visibility:
    return pattern ? pattern_test(Attr::Visibility, v->text) : non_empty(Attr::Visibility);
  case K::Specifier:
    return pattern ? pattern_test(Attr::Specifier, v->text) : non_empty(Attr::Specifier);
  case K::Type:
    if (!v) return non_empty(Attr::Type);
    return pattern ? pattern_test(Attr::Type, v->text) : expr_test(Attr::Type, v->text, node.kind);
  case K::Extension:
    return pattern ? pattern_test(Attr::Superclass, v->text) : non_empty(Attr::Superclass);
  case K::Implementation:
    return pattern ? pattern_test(Attr::Interface, v->text) : non_empty(Attr::Interface);
  case K::InitialValue:
    return v ? expr_test(Attr::Initializer, v->text, node.kind) : non_empty(Attr::Initializer);
  case K::ExpressionStatement:
  case K::ReturnValue: return expr_test(Attr::Expr, v->text, node.kind);
  case K::Annotation: return expr_test(Attr::AnnotationText, v->text, node.kind);
  default: return non_empty(Attr::Name);
  }
}

Cond compile_expr(const ConditionExpr& e);

NodeQuery compile_element(const ElementNode& node) {
  NodeQuery q;
  q.target = node.kind;
  if (is_structural(node.kind)) {
    if (node.with) q.condition = compile_expr(*node.with);
  } else if (node.value) {
    q.condition = test_cond(value_test(node));
  }
  for (const ElementNode* p = node.parent.get(); p != nullptr; p = p->parent.get()) {
    NodeQuery owner = compile_element(*p);
    owner.ancestors.clear();
    q.ancestors.push_back(std::move(owner));
  }
  return q;
}

Cond compile_leaf(const ElementNode& leaf) {
  if (!is_property(leaf.kind)) {
    Cond c;
    c.op = Cond::Op::Exists;
    c.query = compile_element(leaf);
    return c;
  }
  Cond test = test_cond(value_test(leaf));
  if (!leaf.parent) return test;
  // A property belongs to the context node, so `of` constrains the context.
  Cond self;
  self.op = Cond::Op::Self;
  self.query = compile_element(*leaf.parent);
  return Cond::all(std::move(test), std::move(self));
}

Cond compile_expr(const ConditionExpr& e) {
  switch (e.op) {
  case ConditionExpr::Op::Leaf: return compile_leaf(*e.leaf);
  case ConditionExpr::Op::Group: return compile_expr(e.operands[0]);
  case ConditionExpr::Op::And:
    return Cond::all(compile_expr(e.operands[0]), compile_expr(e.operands[1]));
  case ConditionExpr::Op::Or:
    return Cond::any(compile_expr(e.operands[0]), compile_expr(e.operands[1]));
  }
  return {};
}

// ---- XPath

std::string xpath_literal(std::string_view s) {
  if (s.find('"') == std::string_view::npos) return "\"" + std::string(s) + "\"";
  if (s.find('\'') == std::string_view::npos) return "'" + std::string(s) + "'";
  std::string out = "concat(";
  std::size_t start = 0;
  bool first = true;
  while (start <= s.size()) {
    const auto quote = s.find('"', start);
    const auto piece = s.substr(start, quote == std::string_view::npos ? s.size() - start : quote - start);
    if (!piece.empty()) {
      out += (first ? "" : ",") + ("\"" + std::string(piece) + "\"");
      first = false;
    }
    if (quote == std::string_view::npos) break;
    out += (first ? "" : ",") + std::string("'\"'");
    first = false;
    start = quote + 1;
  }
  return out + ")";
}

std::size_t codepoints(std::string_view s) {
  std::size_t n = 0;
  for (unsigned char c : s) n += (c & 0xC0) != 0x80;
  return n;
}

std::string part_xpath(const PatternPart& part, const std::string& value) {
  const std::string lit = xpath_literal(part.literal);
  std::string test;
  switch (part.anchor) {
  case Anchor::Exact: test = value + "=" + lit; break;
  case Anchor::Prefix: test = "starts-with(" + value + "," + lit + ")"; break;
  case Anchor::Contains: test = "contains(" + value + "," + lit + ")"; break;
  case Anchor::Suffix:
    test = "substring(" + value + ",string-length(" + value + ")-" +
           std::to_string(codepoints(part.literal) - 1) + ")=" + lit;
    break;
  }
  return part.negated ? "not(" + test + ")" : test;
}

std::string pattern_xpath(const PatternExpr& p, const std::string& value) {
  std::string out;
  for (std::size_t i = 0; i < p.alternatives.size(); ++i) {
    if (i > 0) out += " or ";
    const auto& conj = p.alternatives[i];
    std::string c;
    for (std::size_t j = 0; j < conj.size(); ++j) {
      if (j > 0) c += " and ";
      c += part_xpath(conj[j], value);
    }
    out += conj.size() > 1 ? "(" + c + ")" : c;
  }
  return p.alternatives.size() > 1 ? "(" + out + ")" : out;
}

std::string erased(const std::string& value) {
  return "substring-before(concat(" + value + ",\"<\"),\"<\")";
}

std::string single_attr(Attr attr) { return "@" + std::string(attr_name(attr)); }

std::string test_xpath(const AttrTest& t) {
  const bool list = t.attr == Attr::Specifier || t.attr == Attr::Interface;
  if (list) {
    const std::string items =
        "@*[starts-with(name(),\"" + std::string(attr_name(t.attr)) + "-\")]";
    if (t.mode == AttrTest::Mode::NonEmpty) return items;
    const std::string value = t.attr == Attr::Interface ? erased(".") : ".";
    std::string out = items + "[" + pattern_xpath(*t.pattern, value) + "]";
    if (t.pattern->matches("")) out = "(" + out + " or not(" + items + "))";
    return out;
  }
  std::string value = single_attr(t.attr);
  switch (t.mode) {
  case AttrTest::Mode::NonEmpty: return value + "!=\"\"";
  case AttrTest::Mode::Expr:
    return "translate(" + value + ",\" \t\n\r\",\"\")=" + xpath_literal(t.expr->normalized);
  case AttrTest::Mode::Pattern:
    if (t.attr == Attr::Superclass) value = erased(value);
    return pattern_xpath(*t.pattern, value);
  }
  return {};
}

std::string self_kind_test(ElementKind kind) {
  switch (kind) {
  case K::Class: return "self::classDecl";
  case K::Function: return "self::methodDecl";
  case K::AbstractFunction: return "self::abstractMethodDecl";
  case K::Constructor: return "self::constructorDecl";
  case K::DeclarationStatement: return "(self::fieldDecl or self::localDeclStmt)";
  case K::Parameter: return "self::parameter";
  case K::ExpressionStatement: return "self::expressionStmt";
  case K::ReturnValue: return "(self::returnStmt and @expr!=\"\")";
  case K::Annotation: return "self::annotation";
  default: return "false()";
  }
}

// Whether the owner of a `kind` node (whose owner query has `owner_kind`)
// is the nearest enclosing method or constructor rather than the parent.
bool owned_by_body(ElementKind kind, std::optional<ElementKind> owner_kind) {
  if (kind == K::ExpressionStatement || kind == K::ReturnValue) return true;
  if (kind == K::DeclarationStatement && owner_kind) {
    return *owner_kind == K::Function || *owner_kind == K::Constructor;
  }
  return false;
}

// Node test for one location step selecting `kind`, given what owns it.
std::string step_test(ElementKind kind, std::optional<ElementKind> owner_kind) {
  switch (kind) {
  case K::Class: return "classDecl";
  case K::Function: return "methodDecl";
  case K::AbstractFunction: return "abstractMethodDecl";
  case K::Constructor: return "constructorDecl";
  case K::DeclarationStatement:
    if (!owner_kind) return "*[self::fieldDecl or self::localDeclStmt]";
    return owned_by_body(kind, owner_kind) ? "localDeclStmt" : "fieldDecl";
  case K::Parameter: return "parameter";
  case K::ExpressionStatement: return "expressionStmt";
  case K::ReturnValue: return "returnStmt[@expr!=\"\"]";
  case K::Annotation: return "annotation";
  default: return "*[false()]";
  }
}

std::string cond_xpath(const Cond& c, ElementKind context);

std::string predicate(const Cond& c, ElementKind context) {
  if (c.op == Cond::Op::True) return {};
  return "[" + cond_xpath(c, context) + "]";
}

// Predicates requiring the owners of a `kind` node to match `ancestors`
// starting at index `i`.
std::string owner_predicates(ElementKind kind, const std::vector<NodeQuery>& ancestors,
                             std::size_t i) {
  if (i >= ancestors.size()) return {};
  const NodeQuery& owner = ancestors[i];
  std::string step;
  if (owned_by_body(kind, owner.target)) {
    step = "ancestor::*[self::methodDecl or self::constructorDecl][1][" +
           self_kind_test(owner.target) + "]";
  } else {
    step = "parent::" + step_test(owner.target, std::nullopt);
  }
  return "[" + step + predicate(owner.condition, owner.target) +
         owner_predicates(owner.target, ancestors, i + 1) + "]";
}

std::optional<ElementKind> first_owner(const NodeQuery& q) {
  if (q.ancestors.empty()) return std::nullopt;
  return q.ancestors.front().target;
}

// Path from a `context` node to the related nodes of `q.target`.
std::string related_path(const NodeQuery& q, ElementKind context) {
  std::string path;
  switch (q.target) {
  case K::DeclarationStatement:
    path = context == K::Class ? "fieldDecl" : ".//localDeclStmt";
    break;
  case K::ExpressionStatement:
  case K::ReturnValue: path = ".//" + step_test(q.target, std::nullopt); break;
  default: path = step_test(q.target, std::nullopt); break;
  }
  return path + predicate(q.condition, q.target) + owner_predicates(q.target, q.ancestors, 0);
}

std::string cond_xpath(const Cond& c, ElementKind context) {
  switch (c.op) {
  case Cond::Op::True: return "true()";
  case Cond::Op::And:
  case Cond::Op::Or: {
    const char* op = c.op == Cond::Op::And ? " and " : " or ";
    return "(" + cond_xpath(c.operands[0], context) + op + cond_xpath(c.operands[1], context) +
           ")";
  }
  case Cond::Op::Test: return test_xpath(*c.test);
  case Cond::Op::Exists: return related_path(*c.query, context);
  case Cond::Op::Self:
    return "self::*[" + self_kind_test(c.query->target) + "]" +
           predicate(c.query->condition, c.query->target) +
           owner_predicates(c.query->target, c.query->ancestors, 0);
  }
  return {};
}

std::string describe_cond(const Cond& c);

std::string describe_test(const AttrTest& t) {
  std::string out(attr_name(t.attr));
  switch (t.mode) {
  case AttrTest::Mode::Pattern: return out + "~\"" + t.pattern_text + "\"";
  case AttrTest::Mode::Expr: return out + "==\"" + t.expr->normalized + "\"";
  case AttrTest::Mode::NonEmpty: return out + "?";
  }
  return out;
}

std::string describe_node(const NodeQuery& q) {
  std::string out(kind_id(q.target));
  if (q.condition.op != Cond::Op::True) out += "[" + describe_cond(q.condition) + "]";
  return out;
}

std::string describe_cond(const Cond& c) {
  switch (c.op) {
  case Cond::Op::True: return "true";
  case Cond::Op::And: return "(" + describe_cond(c.operands[0]) + " & " + describe_cond(c.operands[1]) + ")";
  case Cond::Op::Or: return "(" + describe_cond(c.operands[0]) + " | " + describe_cond(c.operands[1]) + ")";
  case Cond::Op::Test: return describe_test(*c.test);
  case Cond::Op::Exists: return "has " + describe(*c.query);
  case Cond::Op::Self: return "is " + describe(*c.query);
  }
  return {};
}

} // namespace

std::string_view attr_name(Attr attr) {
  switch (attr) {
  case Attr::Name: return "name";
  case Attr::Visibility: return "visibility";
  case Attr::Specifier: return "specifier";
  case Attr::Type: return "type";
  case Attr::Superclass: return "superclass";
  case Attr::Interface: return "interface";
  case Attr::Initializer: return "init";
  case Attr::Expr: return "expr";
  case Attr::AnnotationText: return "text";
  }
  return {};
}

std::string strip_whitespace(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  }
  return out;
}

ExprLiteral ExprLiteral::from(std::string raw, ElementKind kind) {
  ExprLiteral e;
  e.normalized = strip_whitespace(raw);
  if (kind == K::ExpressionStatement && e.normalized.ends_with(';')) e.normalized.pop_back();
  if (kind == K::Annotation && e.normalized.starts_with('@')) e.normalized.erase(0, 1);
  e.raw = std::move(raw);
  return e;
}

Cond Cond::all(Cond lhs, Cond rhs) {
  if (lhs.op == Op::True) return rhs;
  if (rhs.op == Op::True) return lhs;
  Cond c;
  c.op = Op::And;
  c.operands.push_back(std::move(lhs));
  c.operands.push_back(std::move(rhs));
  return c;
}

Cond Cond::any(Cond lhs, Cond rhs) {
  if (lhs.op == Op::True || rhs.op == Op::True) return Cond{};
  Cond c;
  c.op = Op::Or;
  c.operands.push_back(std::move(lhs));
  c.operands.push_back(std::move(rhs));
  return c;
}

QueryPair compile(const RuleAst& rule) {
  QueryPair pair;
  pair.quantifier = compile_element(rule.quantifier);
  pair.constraint = pair.quantifier;
  pair.constraint.condition =
      Cond::all(pair.quantifier.condition, compile_expr(rule.constraint));
  pair.eoi_kind = rule.quantifier.kind;
  return pair;
}

std::string render_xpath(const NodeQuery& query) {
  // Outermost ancestor first, each following step relative to its owner.
  std::string path;
  const auto& chain = query.ancestors;
  for (std::size_t i = chain.size(); i-- > 0;) {
    const NodeQuery& a = chain[i];
    const std::optional<ElementKind> owner =
        i + 1 < chain.size() ? std::optional(chain[i + 1].target) : std::nullopt;
    path += (owner && owned_by_body(a.target, owner)) ? "//" : (owner ? "/" : "//");
    path += step_test(a.target, owner) + predicate(a.condition, a.target);
  }
  const auto owner = first_owner(query);
  path += (owner && !owned_by_body(query.target, owner)) ? "/" : "//";
  path += step_test(query.target, owner) + predicate(query.condition, query.target);
  return path;
}

std::string describe(const NodeQuery& query) {
  std::string out = describe_node(query);
  for (const auto& a : query.ancestors) out += " of " + describe_node(a);
  return out;
}

} // namespace rulecraft

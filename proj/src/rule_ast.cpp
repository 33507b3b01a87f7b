#include "rulecraft/rule_ast.hpp"

#include "rulecraft/grammar.hpp"

namespace rulecraft {

const char* severity_name(Severity severity) {
  return severity == Severity::Error ? "error" : "warning";
}

ConditionExpr ConditionExpr::make_leaf(ElementNode node) {
  ConditionExpr e;
  e.op = Op::Leaf;
  e.leaf = std::move(node);
  return e;
}

ConditionExpr ConditionExpr::make_group(ConditionExpr inner) {
  ConditionExpr e;
  e.op = Op::Group;
  e.operands.push_back(std::move(inner));
  return e;
}

ConditionExpr ConditionExpr::make_binary(Op op, ConditionExpr lhs, ConditionExpr rhs) {
  ConditionExpr e;
  e.op = op;
  e.operands.push_back(std::move(lhs));
  e.operands.push_back(std::move(rhs));
  return e;
}

namespace {

const ConditionExpr& skip_groups(const ConditionExpr& e) {
  const ConditionExpr* cur = &e;
  while (cur->op == ConditionExpr::Op::Group) cur = &cur->operands[0];
  return *cur;
}

template <bool Exact>
bool equal_expr(const ConditionExpr& a, const ConditionExpr& b);

template <bool Exact>
bool equal_element(const ElementNode& a, const ElementNode& b) {
  if (a.kind != b.kind || a.value != b.value) return false;
  if (static_cast<bool>(a.with) != static_cast<bool>(b.with)) return false;
  if (a.with && !equal_expr<Exact>(*a.with, *b.with)) return false;
  if (static_cast<bool>(a.parent) != static_cast<bool>(b.parent)) return false;
  return !a.parent || equal_element<Exact>(*a.parent, *b.parent);
}

template <bool Exact>
bool equal_expr(const ConditionExpr& a0, const ConditionExpr& b0) {
  const ConditionExpr& a = Exact ? a0 : skip_groups(a0);
  const ConditionExpr& b = Exact ? b0 : skip_groups(b0);
  if (a.op != b.op) return false;
  if (a.op == ConditionExpr::Op::Leaf) return equal_element<Exact>(*a.leaf, *b.leaf);
  if (a.operands.size() != b.operands.size()) return false;
  for (std::size_t i = 0; i < a.operands.size(); ++i) {
    if (!equal_expr<Exact>(a.operands[i], b.operands[i])) return false;
  }
  return true;
}

ElementNode strip_element(const ElementNode& node) {
  ElementNode out;
  out.kind = node.kind;
  out.value = node.value;
  out.span = node.span;
  if (node.with) out.with = strip_groups(*node.with);
  if (node.parent) out.parent = strip_element(*node.parent);
  return out;
}

void dump_expr(const ConditionExpr& e, int depth, std::string& out);

void indent(int depth, std::string& out) { out.append(static_cast<std::size_t>(depth) * 2, ' '); }

void dump_element(const ElementNode& node, int depth, std::string& out) {
  indent(depth, out);
  out += kind_id(node.kind);
  if (node.value) {
    switch (node.value->form) {
    case ValueLiteral::Form::Pattern: out += " pattern=\"" + node.value->text + "\""; break;
    case ValueLiteral::Form::Expr: out += " expr=\"" + node.value->text + "\""; break;
    case ValueLiteral::Form::Superclass: out += " superclass"; break;
    case ValueLiteral::Form::Interface: out += " interface"; break;
    }
  }
  out += '\n';
  if (node.with) {
    indent(depth + 1, out);
    out += "with\n";
    dump_expr(*node.with, depth + 2, out);
  }
  if (node.parent) {
    indent(depth + 1, out);
    out += "of\n";
    dump_element(*node.parent, depth + 2, out);
  }
}

void dump_expr(const ConditionExpr& e, int depth, std::string& out) {
  switch (e.op) {
  case ConditionExpr::Op::Leaf: dump_element(*e.leaf, depth, out); return;
  case ConditionExpr::Op::Group:
    indent(depth, out);
    out += "group\n";
    break;
  case ConditionExpr::Op::And:
    indent(depth, out);
    out += "and\n";
    break;
  case ConditionExpr::Op::Or:
    indent(depth, out);
    out += "or\n";
    break;
  }
  for (const auto& operand : e.operands) dump_expr(operand, depth + 1, out);
}

} // namespace

bool structurally_equal(const ElementNode& a, const ElementNode& b) {
  return equal_element<false>(a, b);
}
bool structurally_equal(const ConditionExpr& a, const ConditionExpr& b) {
  return equal_expr<false>(a, b);
}
bool structurally_equal(const RuleAst& a, const RuleAst& b) {
  return structurally_equal(a.quantifier, b.quantifier) &&
         structurally_equal(a.constraint, b.constraint);
}

bool exactly_equal(const ConditionExpr& a, const ConditionExpr& b) {
  return equal_expr<true>(a, b);
}
bool exactly_equal(const ElementNode& a, const ElementNode& b) {
  return equal_element<true>(a, b);
}
bool exactly_equal(const RuleAst& a, const RuleAst& b) {
  return exactly_equal(a.quantifier, b.quantifier) && exactly_equal(a.constraint, b.constraint);
}

ConditionExpr strip_groups(const ConditionExpr& expr) {
  const ConditionExpr& e = skip_groups(expr);
  if (e.op == ConditionExpr::Op::Leaf) return ConditionExpr::make_leaf(strip_element(*e.leaf));
  return ConditionExpr::make_binary(e.op, strip_groups(e.operands[0]),
                                    strip_groups(e.operands[1]));
}

std::string dump(const RuleAst& rule) {
  std::string out = "quantifier\n";
  dump_element(rule.quantifier, 1, out);
  out += "must have\n";
  dump_expr(rule.constraint, 1, out);
  return out;
}

} // namespace rulecraft

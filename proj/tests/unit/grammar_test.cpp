#include <doctest.h>

#include "../support/rule_gen.hpp"
#include "rulecraft/grammar.hpp"

using namespace rulecraft;
using Op = ConditionExpr::Op;

namespace {

RuleAst must_parse(std::string_view text) {
  auto parsed = parse_rule(text);
  std::string messages;
  for (const auto& d : parsed.diagnostics) messages += d.code + ": " + d.message + "\n";
  INFO(text);
  INFO(messages);
  REQUIRE(parsed.ok());
  CHECK(parsed.diagnostics.empty());
  return *parsed.rule;
}

Diagnostic first_error(std::string_view text) {
  auto parsed = parse_rule(text);
  INFO(text);
  REQUIRE_FALSE(parsed.ok());
  REQUIRE_FALSE(parsed.diagnostics.empty());
  const auto& d = parsed.diagnostics.front();
  CHECK(d.span.begin <= d.span.end);
  CHECK(d.span.end <= text.size());
  return d;
}

} // namespace

TEST_CASE("lexer joins two-word keywords") {
  auto lexed = lex_rule("declaration statement  with\ninitial value \"0\"");
  REQUIRE(lexed.tokens.size() == 4);
  CHECK(lexed.tokens[0].element == ElementKind::DeclarationStatement);
  CHECK(lexed.tokens[0].span == TextSpan{0, 21});
  CHECK(lexed.tokens[1].kind == TokenKind::With);
  CHECK(lexed.tokens[2].element == ElementKind::InitialValue);
  CHECK(lexed.tokens[3].kind == TokenKind::Literal);
  CHECK(lexed.tokens[3].text == "0");

  auto ext = lex_rule("extension of superclass");
  REQUIRE(ext.tokens.size() == 2);
  CHECK(ext.tokens[0].element == ElementKind::Extension);
  CHECK(ext.tokens[1].kind == TokenKind::Superclass);

  auto partial = lex_rule("declaration with");
  CHECK(partial.tokens[0].kind == TokenKind::Word);
}

TEST_CASE("table example parses to the expected tree") {
  auto ast = must_parse(
      "class must have declaration statement with visibility \"private\" and function with "
      "name \"get...\"");
  CHECK(ast.quantifier.kind == ElementKind::Class);
  CHECK_FALSE(ast.quantifier.with);
  REQUIRE(ast.constraint.op == Op::And);
  const auto& decl = *ast.constraint.operands[0].leaf;
  CHECK(decl.kind == ElementKind::DeclarationStatement);
  REQUIRE(decl.with);
  CHECK(decl.with->leaf->kind == ElementKind::Visibility);
  CHECK(decl.with->leaf->value->text == "private");
  const auto& fn = *ast.constraint.operands[1].leaf;
  CHECK(fn.kind == ElementKind::Function);
  CHECK(fn.with->leaf->value->text == "get...");
}

TEST_CASE("of clause attaches to the head") {
  auto ast = must_parse("function with type \"void\" of class must have name \"update||destroy\"");
  CHECK(ast.quantifier.kind == ElementKind::Function);
  REQUIRE(ast.quantifier.with);
  CHECK(ast.quantifier.with->leaf->kind == ElementKind::Type);
  CHECK(ast.quantifier.with->leaf->value->form == ValueLiteral::Form::Pattern);
  REQUIRE(ast.quantifier.parent);
  CHECK(ast.quantifier.parent->kind == ElementKind::Class);
  CHECK(ast.constraint.leaf->value->text == "update||destroy");
}

TEST_CASE("and binds tighter than or") {
  auto ast = must_parse(
      "function must have name \"...Mapper\" and visibility \"public\" or type \"void\"");
  REQUIRE(ast.constraint.op == Op::Or);
  CHECK(ast.constraint.operands[0].op == Op::And);
  CHECK(ast.constraint.operands[1].leaf->kind == ElementKind::Type);

  auto grouped = must_parse(
      "function must have ((name \"...Mapper\" and visibility \"public\") or type \"void\")");
  CHECK(structurally_equal(ast, grouped));
  CHECK_FALSE(exactly_equal(ast.constraint, grouped.constraint));

  auto left = must_parse("class must have name \"a\" or name \"b\" or name \"c\"");
  REQUIRE(left.constraint.op == Op::Or);
  CHECK(left.constraint.operands[0].op == Op::Or);
}

TEST_CASE("example corpus parses and renders canonically") {
  const std::vector<std::string> corpus = {
      "class must have declaration statement with visibility \"private\" and function with "
      "name \"get...\"",
      "class with visibility \"private\" must have function with name \"get...\"",
      "function with type \"void\" of class must have name \"update||destroy\"",
      "function must have name \"...Mapper\" and visibility \"public\" or type \"void\"",
      "function must have ((name \"...Mapper\" and visibility \"public\") or type \"void\")",
      "class with name \"...Cls\" must have function with specifier \"static\" and return value "
      "\"new ArrayList<String>()\"",
      "class must have implementation of \"I...\" and extension of \"...Repository\"",
      "class with name \"!BaseRepository&&...Repository\" must have extension of "
      "\"BaseRepository\" and implementation of interface and function with name \"...Mapper\"",
  };
  for (const auto& text : corpus) {
    auto ast = must_parse(text);
    const auto rendered = render_rule(ast);
    CHECK_MESSAGE(rendered == text, rendered);
    CHECK(render_rule(must_parse(rendered)) == rendered);
  }
}

TEST_CASE("renderer normalizes spacing and parenthesizes only when needed") {
  auto ast = must_parse("class   must have\n name \"...Cls\"   and visibility \"public\"");
  CHECK(render_rule(ast) == "class must have name \"...Cls\" and visibility \"public\"");

  RuleAst built;
  built.quantifier.kind = ElementKind::Function;
  auto leaf = [](ElementKind kind, std::string text) {
    ElementNode n;
    n.kind = kind;
    n.value = ValueLiteral{ValueLiteral::Form::Pattern, std::move(text)};
    return ConditionExpr::make_leaf(std::move(n));
  };
  built.constraint = ConditionExpr::make_binary(
      Op::And, leaf(ElementKind::Name, "a"),
      ConditionExpr::make_binary(Op::Or, leaf(ElementKind::Name, "b"), leaf(ElementKind::Type, "c")));
  CHECK(render_rule(built) == "function must have name \"a\" and (name \"b\" or type \"c\")");
  CHECK(structurally_equal(must_parse(render_rule(built)), built));
}

TEST_CASE("renderer keeps inner with clauses from swallowing conditions") {
  // function(with name) and visibility: visibility belongs to the class.
  RuleAst built;
  built.quantifier.kind = ElementKind::Class;
  ElementNode fn;
  fn.kind = ElementKind::Function;
  ElementNode name;
  name.kind = ElementKind::Name;
  fn.with = ConditionExpr::make_leaf(name);
  ElementNode vis;
  vis.kind = ElementKind::Visibility;
  built.constraint = ConditionExpr::make_binary(Op::And, ConditionExpr::make_leaf(fn),
                                                ConditionExpr::make_leaf(vis));
  const auto text = render_rule(built);
  CHECK(text == "class must have (function with name) and visibility");
  CHECK(structurally_equal(must_parse(text), built));

  // A function-level and a class-level condition the function cannot take.
  ElementNode ext;
  ext.kind = ElementKind::Extension;
  ext.value = ValueLiteral{ValueLiteral::Form::Superclass, {}};
  built.constraint = ConditionExpr::make_binary(Op::And, ConditionExpr::make_leaf(fn),
                                                ConditionExpr::make_leaf(ext));
  CHECK(render_rule(built) == "class must have function with name and extension of superclass");
}

TEST_CASE("random trees round-trip through text") {
  testing::RuleGenerator gen(20240601, 4);
  for (int i = 0; i < 1000; ++i) {
    const RuleAst ast = gen.rule();
    const std::string text = render_rule(ast);
    auto parsed = parse_rule(text);
    INFO(text);
    REQUIRE(parsed.ok());
    CHECK(structurally_equal(*parsed.rule, ast));
    CHECK(render_rule(*parsed.rule) == text);
  }
}

TEST_CASE("duplicate must is reported at the second occurrence") {
  const std::string text = "class must must have name \"X\"";
  auto parsed = parse_rule(text);
  REQUIRE(parsed.diagnostics.size() == 1);
  CHECK(parsed.diagnostics[0].code == "duplicate-must");
  CHECK(parsed.diagnostics[0].message == "only one 'must' is allowed");
  CHECK(parsed.diagnostics[0].span == TextSpan{11, 15});

  auto again = parse_rule("class must have name \"A\" must have");
  REQUIRE(again.diagnostics.size() == 1);
  CHECK(again.diagnostics[0].span.begin == 25);
}

TEST_CASE("error diagnostics") {
  CHECK(first_error("").code == "empty-rule");
  CHECK(first_error("   \n").code == "empty-rule");
  CHECK(first_error("class must name \"A\"").code == "missing-have");
  CHECK(first_error("class must").code == "incomplete");
  CHECK(first_error("class must have").code == "incomplete");
  CHECK(first_error("class must have name \"A\" and").code == "incomplete");
  CHECK(first_error("class must have name \"A").code == "unterminated-quote");
  CHECK(parse_rule("class must have name \"A").diagnostics.size() == 1);
  CHECK(first_error("class must have name \"A\" # x").code == "unexpected-character");
  CHECK(first_error("name must have type").code == "illegal-head");

  auto upper = first_error("Class must have name");
  CHECK(upper.code == "unknown-keyword");
  CHECK(upper.hint.value_or("").find("lowercase") != std::string::npos);
  auto split = first_error("declaration with name must have type");
  CHECK(split.code == "unknown-keyword");
  CHECK(split.hint.value_or("").find("declaration statement") != std::string::npos);

  CHECK(first_error("class must have name \"a.b\"").span == TextSpan{23, 24});
  CHECK(first_error("class must have extension of").code == "incomplete");
  CHECK(first_error("class must have extension of interface").code == "missing-value");
  CHECK(first_error("class must have name with type").code == "illegal-child");
  CHECK(first_error("parameter of function must have name").code == "illegal-parent");
  CHECK(first_error("function of parameter must have name").code == "illegal-parent");
  CHECK(first_error("class must have (name").code == "incomplete");
  CHECK(first_error("class must have name)").code == "unexpected-token");
  CHECK(first_error("class must have annotation \"  \"").code == "empty-value");
}

TEST_CASE("every kind rejects an illegal child") {
  for (auto owner : kAllElementKinds) {
    ElementKind illegal{};
    bool found = false;
    for (auto candidate : kAllElementKinds) {
      if (!is_legal_child(owner, candidate)) {
        illegal = candidate;
        found = true;
        break;
      }
    }
    REQUIRE(found);
    std::string child(surface_form(illegal));
    if (value_slot(illegal) == ValueSlot::PatternOrSuperclass) child += " superclass";
    if (value_slot(illegal) == ValueSlot::PatternOrInterface) child += " interface";
    std::string text;
    if (is_structural(owner)) {
      text = std::string(surface_form(owner)) + " must have " + child;
    } else {
      // Property kinds cannot own conditions at all: try to give them one.
      text = "class must have " + std::string(surface_form(owner)) +
             (value_slot(owner) == ValueSlot::PatternOrSuperclass   ? " superclass"
              : value_slot(owner) == ValueSlot::PatternOrInterface ? " interface"
                                                                    : "") +
             " with " + child;
      if (!is_legal_child(ElementKind::Class, owner)) {
        text = "function must have " + std::string(surface_form(owner)) + " with " + child;
      }
    }
    auto d = first_error(text);
    CHECK_MESSAGE(d.code == "illegal-child", text);
  }
  CHECK(first_error("class must have return value").code == "illegal-child");
}

TEST_CASE("prediction lists the terminals the grammar accepts next") {
  auto sorted = [](std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  CHECK(sorted(predict_next("").expected) ==
        sorted({"abstract function", "class", "constructor", "declaration statement", "function",
                "parameter"}));
  CHECK(predict_next("class must ").expected == std::vector<std::string>{"have"});
  auto decl = predict_next("declaration statement must have ");
  CHECK(sorted(decl.expected) == sorted({"(", "annotation", "specifier", "visibility", "type",
                                         "name", "initial value"}));
  auto after_name = predict_next("class must have name");
  CHECK(std::find(after_name.expected.begin(), after_name.expected.end(), "\"pattern\"") !=
        after_name.expected.end());
  CHECK(std::find(after_name.expected.begin(), after_name.expected.end(), "and") !=
        after_name.expected.end());
  auto inside = predict_next("class must have name \"ge");
  CHECK(inside.inside_literal);
  CHECK_FALSE(predict_next("class must must").parsed_to_end);
}

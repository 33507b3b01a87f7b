#include <doctest.h>

#include <functional>
#include <random>

#include "../support/rule_gen.hpp"
#include "../support/rules.hpp"
#include "rulecraft/grammar.hpp"
#include "rulecraft/model.hpp"
#include "rulecraft/query.hpp"

using namespace rulecraft;

namespace {

ValueLiteral pat(std::string text) { return ValueLiteral{ValueLiteral::Form::Pattern, std::move(text)}; }

std::string canonical(std::string_view text) {
  auto parsed = parse_rule(text);
  REQUIRE(parsed.rule);
  return render_rule(*parsed.rule);
}

GuiRuleModel from_text(std::string_view text) {
  auto parsed = text_to_model(text);
  REQUIRE(parsed.model);
  return std::move(*parsed.model);
}

// Scenario of the public-class getter rule: a public class whose function
// name is the only constraint.
struct GetterScenario {
  GuiRuleModel model = new_model();
  ElementId cls = 0, function = 0, name = 0;

  GetterScenario() {
    cls = model.root.id;
    const ElementId vis = add_element(model, cls, ElementKind::Visibility);
    set_value(model, vis, pat("public"));
    function = add_element(model, cls, ElementKind::Function);
    name = add_element(model, function, ElementKind::Name);
    set_value(model, name, pat("get..."));
    set_constraint(model, name, true);
  }
};

std::string code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const ModelError& e) {
    return e.code();
  }
  return "";
}

} // namespace

TEST_CASE("default element of interest is the function owning the constraint") {
  GetterScenario s;
  CHECK(default_eoi(s.model) == s.function);
  CHECK(model_to_text(s.model) == "function of class with visibility \"public\" must have name \"get...\"");
  CHECK(check_invariants(s.model).empty());
}

TEST_CASE("choosing the class changes the rendered rule but not the snippet") {
  GetterScenario s;
  const auto before = compile(model_to_ast(s.model));
  set_eoi(s.model, s.cls);
  CHECK(model_to_text(s.model) == "class with visibility \"public\" must have function with name \"get...\"");
  const auto after = compile(model_to_ast(s.model));
  CHECK(before.eoi_kind == ElementKind::Function);
  CHECK(after.eoi_kind == ElementKind::Class);
  CHECK(render_xpath(before.quantifier) != render_xpath(after.quantifier));
}

TEST_CASE("or-edit on the function conditions") {
  GuiRuleModel m = new_model();
  const ElementId cls = m.root.id;
  set_value(m, add_element(m, cls, ElementKind::Visibility), pat("public"));
  const ElementId fn = add_element(m, cls, ElementKind::Function);
  const ElementId type = add_element(m, fn, ElementKind::Type);
  set_value(m, type, pat("void"));
  const ElementId name = add_element(m, fn, ElementKind::Name);
  set_value(m, name, pat("get...||search...||find..."));
  set_constraint(m, type, true);
  set_constraint(m, name, true);
  CHECK(default_eoi(m) == fn);
  set_eoi(m, cls);
  CHECK(model_to_text(m) ==
        "class with visibility \"public\" must have function with (type \"void\" and name "
        "\"get...||search...||find...\")");
  set_connective(m, fn, Connective::Or);
  CHECK(model_to_text(m) ==
        "class with visibility \"public\" must have function with (type \"void\" or name "
        "\"get...||search...||find...\")");
  CHECK(parse_rule(model_to_text(m)).ok());
}

TEST_CASE("text to model marks the must-have content") {
  auto m = from_text("class must have declaration statement with visibility \"private\" and function "
                     "with name \"get...\"");
  CHECK(m.root.kind == ElementKind::Class);
  CHECK(m.root.active());
  CHECK(m.eoi == m.root.id);
  REQUIRE(m.root.children.size() == 2);
  CHECK(m.root.children[0].kind == ElementKind::DeclarationStatement);
  CHECK(m.root.children[1].kind == ElementKind::Function);
  for (const auto& child : m.root.children) {
    CHECK(child.constraint);
    for (const auto& grandchild : child.children) CHECK(grandchild.constraint);
  }
  CHECK(check_invariants(m).empty());

  auto minimal = from_text("function must have name \"x\"");
  REQUIRE(minimal.eoi);
  const GuiElement* fn = find_element(minimal, *minimal.eoi);
  REQUIRE(fn);
  CHECK(fn->kind == ElementKind::Function);
  CHECK_FALSE(minimal.root.active());
  CHECK(model_to_text(minimal) == "function must have name \"x\"");
}

TEST_CASE("canonical text is a fixed point") {
  for (const auto& rule : testing::fixture_rules()) {
    INFO(rule.text);
    CHECK(model_to_text(from_text(rule.text)) == canonical(rule.text));
  }
  for (std::string text : {
           "function with (type \"void\" or name \"a\") of class must have parameter",
           "class with name \"A\" or name \"B\" must have function and constructor",
           "class with name \"A\" or name \"B\" must have (function) or constructor",
           "function with name \"set...\" must have parameter with type \"int\"",
           "declaration statement of class with name \"A\" must have initial value \"0\"",
           "class must have function with name \"a\" of class with name \"B\"",
           "class with name \"A\" and (visibility \"public\" or specifier \"final\") must have function",
       }) {
    INFO(text);
    CHECK(model_to_text(from_text(text)) == canonical(text));
  }
}

TEST_CASE("random rules survive the model exactly") {
  testing::RuleGenerator gen(71, 4);
  for (int i = 0; i < 400; ++i) {
    const RuleAst rule = gen.rule();
    const std::string text = render_rule(rule);
    INFO(text);
    const GuiRuleModel m = ast_to_model(rule);
    CHECK(check_invariants(m).empty());
    const RuleAst back = model_to_ast(m);
    CHECK(exactly_equal(back, rule));
    CHECK(render_rule(back) == text);
    // Round trip through JSON keeps everything.
    CHECK(model_to_text(model_from_json(model_to_json(m))) == text);
  }
}

TEST_CASE("lowest common ancestor of constraints") {
  GuiRuleModel m = new_model();
  const ElementId cls = m.root.id;
  const ElementId field = add_element(m, cls, ElementKind::DeclarationStatement);
  const ElementId vis = add_element(m, field, ElementKind::Visibility);
  set_value(m, vis, pat("private"));
  const ElementId fn = add_element(m, cls, ElementKind::Function);
  const ElementId name = add_element(m, fn, ElementKind::Name);
  set_value(m, name, pat("get..."));
  set_constraint(m, vis, true);
  set_constraint(m, name, true);
  CHECK(default_eoi(m) == cls);

  GuiRuleModel p = new_model();
  const ElementId f = add_element(p, p.root.id, ElementKind::Function);
  const ElementId a = add_element(p, f, ElementKind::Parameter);
  const ElementId b = add_element(p, f, ElementKind::Parameter);
  set_state(p, a, ElementState::Active);
  set_state(p, b, ElementState::Active);
  set_constraint(p, a, true);
  set_constraint(p, b, true);
  CHECK(default_eoi(p) == f);
  CHECK(model_to_text(p) == "function must have parameter and parameter");

  // A function name and a parameter type select the function.
  GuiRuleModel q = new_model();
  const ElementId g = add_element(q, q.root.id, ElementKind::Function);
  const ElementId gname = add_element(q, g, ElementKind::Name);
  set_value(q, gname, pat("set..."));
  const ElementId param = add_element(q, g, ElementKind::Parameter);
  const ElementId ptype = add_element(q, param, ElementKind::Type);
  set_value(q, ptype, pat("int"));
  set_constraint(q, gname, true);
  set_constraint(q, ptype, true);
  CHECK(default_eoi(q) == g);
  CHECK(model_to_text(q) == "function must have name \"set...\" and parameter with type \"int\"");
}

TEST_CASE("model errors") {
  GuiRuleModel empty = new_model();
  CHECK(code_of([&] { default_eoi(empty); }) == "no-constraint");
  CHECK(code_of([&] { model_to_text(empty); }) == "no-constraint");

  GetterScenario s;
  CHECK(code_of([&] { set_eoi(s.model, s.name); }) == "not-eligible");
  // A constraint on the class itself cannot be expressed from the function.
  const ElementId vis = s.model.root.children[0].id;
  set_eoi(s.model, s.function);
  set_constraint(s.model, vis, true);
  CHECK(code_of([&] { model_to_text(s.model); }) == "constraint-outside-eoi");
  CHECK_FALSE(check_invariants(s.model).empty());
  CHECK(code_of([&] { set_eoi(s.model, s.function); }) == "constraint-outside-eoi");
  set_eoi(s.model, std::nullopt);
  CHECK(default_eoi(s.model) == s.cls);

  GuiRuleModel m = new_model();
  CHECK(code_of([&] { add_element(m, m.root.id, ElementKind::ReturnValue); }) == "illegal-child");
  const ElementId n = add_element(m, m.root.id, ElementKind::Name);
  CHECK(code_of([&] { set_value(m, n, ValueLiteral{ValueLiteral::Form::Expr, "0"}); }) == "illegal-value");
  CHECK(code_of([&] { set_value(m, n, pat("a..b")); }) == "illegal-value");
  CHECK(code_of([&] { set_state(m, 999, ElementState::Active); }) == "unknown-element");
  CHECK(code_of([&] { remove_element(m, m.root.id); }) == "illegal-edit");
}

TEST_CASE("inexpressible ancestor chain") {
  // Parameter has no `of` clause, so an active function around a parameter
  // of interest cannot be written.
  GuiRuleModel m = new_model();
  const ElementId fn = add_element(m, m.root.id, ElementKind::Function);
  set_value(m, add_element(m, fn, ElementKind::Name), pat("set..."));
  const ElementId param = add_element(m, fn, ElementKind::Parameter);
  const ElementId type = add_element(m, param, ElementKind::Type);
  set_value(m, type, pat("int"));
  set_constraint(m, type, true);
  CHECK(default_eoi(m) == param);
  CHECK(code_of([&] { model_to_text(m); }) == "inexpressible-ancestor");
}

TEST_CASE("guide steps") {
  GuiRuleModel m = new_model();
  CHECK(guide_step(m).current == 1);
  const ElementId fn = add_element(m, m.root.id, ElementKind::Function);
  set_state(m, fn, ElementState::Active);
  auto g = guide_step(m);
  CHECK(g.quantifier_done);
  CHECK_FALSE(g.constraint_done);
  CHECK(g.current == 2);
  set_constraint(m, fn, true);
  CHECK(guide_step(m).current == 3);
}

TEST_CASE("connective defaults to and") {
  GuiRuleModel m = new_model();
  const ElementId a = add_element(m, m.root.id, ElementKind::Function);
  const ElementId b = add_element(m, m.root.id, ElementKind::Constructor);
  set_state(m, a, ElementState::Active);
  set_state(m, b, ElementState::Active);
  set_constraint(m, m.root.id, true);
  set_eoi(m, m.root.id);
  // The root is the element of interest, so its own flag is ignored.
  CHECK(model_to_text(m) == "class must have function and constructor");
}

TEST_CASE("constraint closure holds under random edits") {
  std::mt19937 rng(5);
  int rendered = 0;
  for (int round = 0; round < 60; ++round) {
    GuiRuleModel m = new_model();
    std::vector<ElementId> ids = {m.root.id};
    for (int step = 0; step < 40; ++step) {
      const ElementId target = ids[rng() % ids.size()];
      const GuiElement* e = find_element(m, target);
      if (e == nullptr) continue;
      switch (rng() % 6) {
      case 0:
      case 1: {
        if (e->group || !is_structural(e->kind)) break;
        auto kids = legal_children(e->kind);
        ids.push_back(add_element(m, target, kids[rng() % kids.size()]));
        break;
      }
      case 2: set_state(m, target, rng() % 2 ? ElementState::Active : ElementState::Inactive); break;
      case 3:
      case 4: set_constraint(m, target, rng() % 3 != 0); break;
      case 5:
        if (target != m.root.id) remove_element(m, target);
        break;
      }
      const auto problems = check_invariants(m);
      INFO(model_to_json(m));
      CHECK_MESSAGE(problems.empty(), (problems.empty() ? "" : problems.front()));
    }
    // Whatever text comes out is a valid rule.
    try {
      const std::string text = model_to_text(m);
      INFO(text);
      CHECK(parse_rule(text).ok());
      ++rendered;
    } catch (const ModelError&) {
    }
  }
  CHECK(rendered >= 10);
}

TEST_CASE("json keeps metadata and ids") {
  GetterScenario s;
  s.model.title = "Getters";
  s.model.tags = {"style"};
  s.model.file_filter = {"src/"};
  set_eoi(s.model, s.cls);
  const GuiRuleModel back = model_from_json(model_to_json(s.model));
  CHECK(back.title == "Getters");
  CHECK(back.tags == s.model.tags);
  CHECK(back.file_filter == s.model.file_filter);
  CHECK(back.eoi == s.cls);
  CHECK(back.next_id == s.model.next_id);
  CHECK(model_to_text(back) == model_to_text(s.model));
  CHECK(code_of([] { model_from_json("{"); }) == "bad-model");
  CHECK(code_of([] { model_from_json(R"({"root":{"id":1,"type":"element","kind":"banana"}})"); }) ==
        "bad-model");
}

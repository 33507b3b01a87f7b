#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rulecraft/diagnostic.hpp"
#include "rulecraft/element_kind.hpp"
#include "rulecraft/rule_ast.hpp"

namespace rulecraft {

// Structured-editor model. Elements form a tree rooted at a class template;
// each element lists its conditions as children. A child is either an
// element or a group, a parenthesized sub-list with its own connective.

enum class ElementState { Inactive, OfInterest, Active };
enum class Connective { And, Or };

using ElementId = int;

struct GuiElement {
  ElementId id = 0;
  bool group = false;                    // group node: `kind` and `value` unused
  ElementKind kind = ElementKind::Class;
  ElementState state = ElementState::Inactive;
  std::optional<ValueLiteral> value;
  bool constraint = false;
  Connective connective = Connective::And;
  // Parenthesize the condition list. Unset means parentheses only around a
  // nested element's list of two or more conditions.
  std::optional<bool> grouped;
  // `of <element>` written on a condition in text; not shown as a tree edge.
  Box<GuiElement> of;
  std::vector<GuiElement> children;

  bool eoi_eligible() const { return !group && is_structural(kind); }
  bool active() const { return state == ElementState::Active; }
};

struct GuiRuleModel {
  GuiElement root; // class template
  std::optional<ElementId> eoi;
  std::string title;
  std::string description;
  std::vector<std::string> tags;
  std::vector<std::string> file_filter;
  ElementId next_id = 1;
};

class ModelError : public std::runtime_error {
public:
  ModelError(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

private:
  std::string code_;
};

// Empty form: an inactive class root and nothing else.
GuiRuleModel new_model();

GuiElement* find_element(GuiRuleModel& model, ElementId id);
const GuiElement* find_element(const GuiRuleModel& model, ElementId id);
// Chain from the root down to `id`, inclusive; empty if absent.
std::vector<const GuiElement*> path_to(const GuiRuleModel& model, ElementId id);

// Deepest structural element enclosing every constraint. A constraint on a
// property or statement is owned by its enclosing structural element; a
// constrained structural element by its parent. Throws ModelError
// "no-constraint" when nothing is marked.
ElementId default_eoi(const GuiRuleModel& model);

RuleAst model_to_ast(const GuiRuleModel& model);
// Throws ModelError: "no-constraint", "constraint-outside-eoi",
// "inexpressible-ancestor", "empty-constraint", "missing-value" (an active
// extension or implementation without its value).
std::string model_to_text(const GuiRuleModel& model);

struct ModelParse {
  std::optional<GuiRuleModel> model;
  std::vector<Diagnostic> diagnostics;
};
ModelParse text_to_model(std::string_view text);
GuiRuleModel ast_to_model(const RuleAst& rule);

// ---- edits; each keeps the constraint closure (a constrained element's
// active descendants are constraints too). Throw ModelError on bad ids.

ElementId add_element(GuiRuleModel& model, ElementId parent, ElementKind kind);
ElementId add_group(GuiRuleModel& model, ElementId parent);
void remove_element(GuiRuleModel& model, ElementId id);
void set_value(GuiRuleModel& model, ElementId id, std::optional<ValueLiteral> value);
void set_state(GuiRuleModel& model, ElementId id, ElementState state);
void set_constraint(GuiRuleModel& model, ElementId id, bool constraint);
void set_connective(GuiRuleModel& model, ElementId id, Connective connective);
// nullopt returns to the default. Throws "not-eligible" or
// "constraint-outside-eoi".
void set_eoi(GuiRuleModel& model, std::optional<ElementId> id);

// Steps of the authoring guide.
struct GuideState {
  bool quantifier_done = false; // some element is active
  bool constraint_done = false; // some element is a constraint
  int current = 1;              // highlighted step, 1 to 3
};
GuideState guide_step(const GuiRuleModel& model);

// Checks the constraint closure and EoI invariants; returns a message per
// violation.
std::vector<std::string> check_invariants(const GuiRuleModel& model);

// Tree-structured JSON, see docs/model-format.md.
std::string model_to_json(const GuiRuleModel& model);
GuiRuleModel model_from_json(std::string_view json);

} // namespace rulecraft

#include "rulecraft/model.hpp"

#include <functional>
#include <json.hpp>

#include "rulecraft/grammar.hpp"
#include "rulecraft/pattern.hpp"

namespace rulecraft {
namespace {

using Op = ConditionExpr::Op;

template <class Node, class Fn>
void for_each_node(Node& node, Fn&& fn) {
  fn(node);
  if (node.of) for_each_node(*node.of, fn);
  for (auto& child : node.children) for_each_node(child, fn);
}

template <class Node>
Node* find_in(Node& node, ElementId id) {
  if (node.id == id) return &node;
  if (node.of) {
    if (auto* hit = find_in(*node.of, id)) return hit;
  }
  for (auto& child : node.children) {
    if (auto* hit = find_in(child, id)) return hit;
  }
  return nullptr;
}

bool find_path(const GuiElement& node, ElementId id, std::vector<const GuiElement*>& path) {
  path.push_back(&node);
  if (node.id == id) return true;
  for (const auto& child : node.children) {
    if (find_path(child, id, path)) return true;
  }
  path.pop_back();
  return false;
}

GuiElement& require(GuiRuleModel& model, ElementId id) {
  GuiElement* e = find_element(model, id);
  if (e == nullptr) throw ModelError("unknown-element", "no element with id " + std::to_string(id));
  return *e;
}

// Element whose condition list `id` belongs to, looking through groups.
const GuiElement* owning_element(const GuiRuleModel& model, ElementId id) {
  auto path = path_to(model, id);
  for (std::size_t i = path.size(); i-- > 1;) {
    if (!path[i - 1]->group) return path[i - 1];
  }
  return nullptr;
}

bool marked(const GuiElement& e) { return e.active() && e.constraint; }

bool contains_constraint(const GuiElement& e) {
  if (e.group ? e.constraint : marked(e)) return true;
  for (const auto& child : e.children) {
    if (contains_constraint(child)) return true;
  }
  return false;
}

bool subtree_has(const GuiElement& node, ElementId id) {
  if (node.id == id) return true;
  for (const auto& child : node.children) {
    if (subtree_has(child, id)) return true;
  }
  return false;
}

// ---- model to AST

std::optional<ConditionExpr> build_item(const GuiElement& item, bool nested);

std::optional<ConditionExpr> build_list(const std::vector<const GuiElement*>& items,
                                        Connective connective, bool nested,
                                        std::size_t* count = nullptr) {
  std::optional<ConditionExpr> out;
  std::size_t n = 0;
  const Op op = connective == Connective::And ? Op::And : Op::Or;
  for (const GuiElement* item : items) {
    auto expr = build_item(*item, nested);
    if (!expr) continue;
    ++n;
    out = out ? ConditionExpr::make_binary(op, std::move(*out), std::move(*expr)) : std::move(*expr);
  }
  if (count != nullptr) *count = n;
  return out;
}

std::vector<const GuiElement*> pointers(const std::vector<GuiElement>& items) {
  std::vector<const GuiElement*> out;
  for (const auto& item : items) out.push_back(&item);
  return out;
}

// Condition list of an element, parenthesized per its `grouped` setting.
Box<ConditionExpr> build_with(const GuiElement& e, const std::vector<const GuiElement*>& items,
                              bool nested) {
  std::size_t count = 0;
  auto expr = build_list(items, e.connective, true, &count);
  if (!expr) return {};
  const bool paren = e.grouped.value_or(nested && count >= 2);
  return paren ? ConditionExpr::make_group(std::move(*expr)) : std::move(*expr);
}

ElementNode build_element(const GuiElement& e, bool nested);

std::optional<ConditionExpr> build_item(const GuiElement& item, bool nested) {
  if (item.group) {
    auto expr = build_list(pointers(item.children), item.connective, nested);
    if (!expr) return std::nullopt;
    if (item.grouped.value_or(true)) return ConditionExpr::make_group(std::move(*expr));
    return expr;
  }
  if (!item.active()) return std::nullopt;
  return ConditionExpr::make_leaf(build_element(item, nested));
}

ElementNode build_element(const GuiElement& e, bool nested) {
  const ValueSlot slot = value_slot(e.kind);
  if (!e.value && (slot == ValueSlot::PatternOrSuperclass || slot == ValueSlot::PatternOrInterface)) {
    throw ModelError("missing-value",
                     "'" + std::string(surface_form(e.kind)) + "' needs a value before it can be used");
  }
  ElementNode node;
  node.kind = e.kind;
  node.value = e.value;
  if (is_structural(e.kind)) node.with = build_with(e, pointers(e.children), nested);
  if (e.of) node.parent = build_element(*e.of, nested);
  return node;
}

// ---- AST to model

class ModelBuilder {
public:
  explicit ModelBuilder(GuiRuleModel& model) : model_(model) {}

  GuiElement element(const ElementNode& node, bool constraint) {
    GuiElement e = fresh(node.kind);
    e.value = node.value;
    e.constraint = constraint;
    if (node.with) {
      const ConditionExpr* with = node.with.get();
      e.grouped = with->op == Op::Group;
      if (with->op == Op::Group) with = &with->operands[0];
      add_items(e, *with, constraint);
    } else if (is_structural(node.kind)) {
      e.grouped = false;
    }
    if (node.parent) e.of = element(*node.parent, constraint);
    return e;
  }

  // Appends the items of `expr` to `owner` and sets its connective when the
  // expression is a chain of one operator.
  void add_items(GuiElement& owner, const ConditionExpr& expr, bool constraint) {
    if (expr.op == Op::And || expr.op == Op::Or) {
      owner.connective = expr.op == Op::And ? Connective::And : Connective::Or;
      flatten(owner, expr, expr.op, constraint);
    } else {
      owner.children.push_back(item(expr, constraint));
    }
  }

  GuiElement item(const ConditionExpr& expr, bool constraint) {
    switch (expr.op) {
    case Op::Leaf: return element(*expr.leaf, constraint);
    case Op::Group: {
      GuiElement g = group(constraint);
      g.grouped = true;
      add_items(g, expr.operands[0], constraint);
      return g;
    }
    default: {
      GuiElement g = group(constraint);
      g.grouped = false;
      add_items(g, expr, constraint);
      return g;
    }
    }
  }

  GuiElement fresh(ElementKind kind) {
    GuiElement e;
    e.id = model_.next_id++;
    e.kind = kind;
    e.state = ElementState::Active;
    return e;
  }

  GuiElement group(bool constraint) {
    GuiElement g;
    g.id = model_.next_id++;
    g.group = true;
    g.state = ElementState::Active;
    g.constraint = constraint;
    return g;
  }

private:
  // Left spine of same-operator nodes becomes the flat list.
  void flatten(GuiElement& owner, const ConditionExpr& expr, Op op, bool constraint) {
    if (expr.op == op) {
      flatten(owner, expr.operands[0], op, constraint);
      owner.children.push_back(item(expr.operands[1], constraint));
    } else {
      owner.children.push_back(item(expr, constraint));
    }
  }

  GuiRuleModel& model_;
};

Connective connective_of(const ConditionExpr& expr) {
  return expr.op == Op::Or ? Connective::Or : Connective::And;
}

bool is_chain(const ConditionExpr& expr) { return expr.op == Op::And || expr.op == Op::Or; }

// ---- JSON

const char* state_name(ElementState s) {
  switch (s) {
  case ElementState::Inactive: return "inactive";
  case ElementState::OfInterest: return "ofInterest";
  case ElementState::Active: return "active";
  }
  return "inactive";
}

ElementState state_from(const std::string& s) {
  if (s == "active") return ElementState::Active;
  if (s == "ofInterest") return ElementState::OfInterest;
  if (s == "inactive") return ElementState::Inactive;
  throw ModelError("bad-model", "unknown element state '" + s + "'");
}

const char* form_name(ValueLiteral::Form f) {
  switch (f) {
  case ValueLiteral::Form::Pattern: return "pattern";
  case ValueLiteral::Form::Expr: return "expr";
  case ValueLiteral::Form::Superclass: return "superclass";
  case ValueLiteral::Form::Interface: return "interface";
  }
  return "pattern";
}

ValueLiteral::Form form_from(const std::string& s) {
  if (s == "pattern") return ValueLiteral::Form::Pattern;
  if (s == "expr") return ValueLiteral::Form::Expr;
  if (s == "superclass") return ValueLiteral::Form::Superclass;
  if (s == "interface") return ValueLiteral::Form::Interface;
  throw ModelError("bad-model", "unknown value form '" + s + "'");
}

nlohmann::json node_json(const GuiElement& e) {
  nlohmann::json j;
  j["id"] = e.id;
  j["type"] = e.group ? "group" : "element";
  if (!e.group) j["kind"] = std::string(kind_id(e.kind));
  j["state"] = state_name(e.state);
  if (e.value) j["value"] = {{"form", form_name(e.value->form)}, {"text", e.value->text}};
  j["constraint"] = e.constraint;
  j["connective"] = e.connective == Connective::And ? "and" : "or";
  if (e.grouped) j["grouped"] = *e.grouped;
  if (e.of) j["of"] = node_json(*e.of);
  j["children"] = nlohmann::json::array();
  for (const auto& child : e.children) j["children"].push_back(node_json(child));
  return j;
}

GuiElement node_from(const nlohmann::json& j) {
  GuiElement e;
  e.id = j.at("id").get<int>();
  e.group = j.at("type").get<std::string>() == "group";
  if (!e.group) {
    const auto id = j.at("kind").get<std::string>();
    auto kind = kind_from_id(id);
    if (!kind) throw ModelError("bad-model", "unknown element kind '" + id + "'");
    e.kind = *kind;
  }
  e.state = state_from(j.value("state", "inactive"));
  if (j.contains("value")) {
    e.value = ValueLiteral{form_from(j["value"].at("form")), j["value"].value("text", "")};
  }
  e.constraint = j.value("constraint", false);
  e.connective = j.value("connective", "and") == "or" ? Connective::Or : Connective::And;
  if (j.contains("grouped")) e.grouped = j["grouped"].get<bool>();
  if (j.contains("of")) e.of = node_from(j["of"]);
  for (const auto& child : j.value("children", nlohmann::json::array())) {
    e.children.push_back(node_from(child));
  }
  return e;
}

} // namespace

GuiRuleModel new_model() {
  GuiRuleModel model;
  model.root.id = model.next_id++;
  model.root.kind = ElementKind::Class;
  return model;
}

GuiElement* find_element(GuiRuleModel& model, ElementId id) { return find_in(model.root, id); }

const GuiElement* find_element(const GuiRuleModel& model, ElementId id) {
  return find_in(model.root, id);
}

std::vector<const GuiElement*> path_to(const GuiRuleModel& model, ElementId id) {
  std::vector<const GuiElement*> path;
  if (!find_path(model.root, id, path)) path.clear();
  return path;
}

ElementId default_eoi(const GuiRuleModel& model) {
  // Anchor of each constraint: its nearest structural strict ancestor.
  std::vector<std::vector<const GuiElement*>> anchors;
  std::vector<const GuiElement*> stack;
  std::function<void(const GuiElement&)> walk = [&](const GuiElement& e) {
    const bool flagged = e.group ? e.constraint : marked(e);
    if (flagged) {
      for (std::size_t i = stack.size(); i-- > 0;) {
        if (stack[i]->eoi_eligible()) {
          anchors.emplace_back(stack.begin(), stack.begin() + static_cast<std::ptrdiff_t>(i) + 1);
          break;
        }
      }
    }
    stack.push_back(&e);
    for (const auto& child : e.children) walk(child);
    stack.pop_back();
  };
  walk(model.root);
  if (anchors.empty()) {
    throw ModelError("no-constraint", "mark at least one element as a constraint");
  }
  std::size_t common = anchors.front().size();
  for (const auto& path : anchors) {
    std::size_t n = 0;
    while (n < common && n < path.size() && path[n] == anchors.front()[n]) ++n;
    common = n;
  }
  for (std::size_t i = common; i-- > 0;) {
    if (anchors.front()[i]->eoi_eligible()) return anchors.front()[i]->id;
  }
  return model.root.id;
}

RuleAst model_to_ast(const GuiRuleModel& model) {
  const ElementId eoi_id = model.eoi ? *model.eoi : default_eoi(model);
  const auto path = path_to(model, eoi_id);
  if (path.empty() || !path.back()->eoi_eligible()) {
    throw ModelError("not-eligible", "the element of interest must be a structural element");
  }
  const GuiElement& eoi = *path.back();

  bool outside = false;
  bool any = false;
  std::function<void(const GuiElement&, bool)> scan = [&](const GuiElement& e, bool inside) {
    inside = inside || e.id == eoi_id;
    if (e.group ? e.constraint : marked(e)) {
      any = true;
      outside = outside || !inside;
    }
    for (const auto& child : e.children) scan(child, inside);
  };
  scan(model.root, false);
  if (!any) throw ModelError("no-constraint", "mark at least one element as a constraint");
  if (outside) {
    throw ModelError("constraint-outside-eoi",
                     "a constraint lies outside the element of interest; choose an element "
                     "that contains every constraint");
  }

  std::vector<const GuiElement*> quantifier_items;
  std::vector<const GuiElement*> constraint_items;
  for (const auto& child : eoi.children) {
    (contains_constraint(child) ? constraint_items : quantifier_items).push_back(&child);
  }

  RuleAst rule;
  rule.quantifier.kind = eoi.kind;
  rule.quantifier.value = eoi.value;
  rule.quantifier.with = build_with(eoi, quantifier_items, false);
  auto constraint = build_list(constraint_items, eoi.connective, true);
  if (!constraint) {
    throw ModelError("empty-constraint", "the constraints inside the element of interest are empty");
  }
  rule.constraint = std::move(*constraint);

  // Enclosing elements up to the outermost active one become the `of` chain.
  std::vector<const GuiElement*> ancestors;
  for (std::size_t i = path.size() - 1; i-- > 0;) {
    if (!path[i]->group) ancestors.push_back(path[i]);
  }
  std::size_t outermost = 0;
  for (std::size_t i = 0; i < ancestors.size(); ++i) {
    if (ancestors[i]->active()) outermost = i + 1;
  }
  ElementNode* tail = &rule.quantifier;
  const GuiElement* below = &eoi;
  for (std::size_t i = 0; i < outermost; ++i) {
    const GuiElement& a = *ancestors[i];
    if (!is_legal_parent(tail->kind, a.kind)) {
      throw ModelError("inexpressible-ancestor",
                       "'" + std::string(surface_form(tail->kind)) + "' cannot be qualified by an enclosing '" +
                           std::string(surface_form(a.kind)) + "'");
    }
    std::vector<const GuiElement*> items;
    for (const auto& child : a.children) {
      if (!subtree_has(child, below->id)) items.push_back(&child);
    }
    ElementNode parent;
    parent.kind = a.kind;
    parent.value = a.value;
    parent.with = build_with(a, items, false);
    tail->parent = std::move(parent);
    tail = tail->parent.operator->();
    below = &a;
  }
  return rule;
}

std::string model_to_text(const GuiRuleModel& model) { return render_rule(model_to_ast(model)); }

GuiRuleModel ast_to_model(const RuleAst& rule) {
  GuiRuleModel model;
  model.next_id = 1;
  ModelBuilder build(model);

  // Head element: quantifier conditions first, then the constraints.
  const ElementNode& h = rule.quantifier;
  GuiElement head = build.fresh(h.kind);
  head.value = h.value;
  head.grouped = false;
  const ConditionExpr& constraint = rule.constraint;
  if (h.with) {
    const ConditionExpr* with = h.with.get();
    head.grouped = with->op == Op::Group;
    if (with->op == Op::Group) with = &with->operands[0];
    const bool clash = is_chain(*with) && is_chain(constraint) &&
                       connective_of(*with) != connective_of(constraint);
    if (clash) {
      // Keep the quantifier list intact as one unparenthesized item.
      head.children.push_back(build.item(*with, false));
    } else {
      build.add_items(head, *with, false);
    }
  }
  if (is_chain(constraint)) {
    head.connective = connective_of(constraint);
    GuiElement holder;
    build.add_items(holder, constraint, true);
    for (auto& item : holder.children) head.children.push_back(std::move(item));
  } else {
    head.children.push_back(build.item(constraint, true));
  }
  const ElementId head_id = head.id;

  // Enclosing elements, innermost first; each takes the previous as a child.
  GuiElement current = std::move(head);
  for (const ElementNode* p = h.parent.get(); p != nullptr; p = p->parent.get()) {
    ElementNode bare;
    bare.kind = p->kind;
    bare.value = p->value;
    bare.with = p->with;
    GuiElement parent = build.element(bare, false);
    parent.children.push_back(std::move(current));
    current = std::move(parent);
  }
  // The editor's template is rooted at a class.
  if (current.kind == ElementKind::Parameter) {
    GuiElement function = build.fresh(ElementKind::Function);
    function.state = ElementState::Inactive;
    function.children.push_back(std::move(current));
    current = std::move(function);
  }
  if (current.kind != ElementKind::Class) {
    GuiElement root = build.fresh(ElementKind::Class);
    root.state = ElementState::Inactive;
    root.children.push_back(std::move(current));
    current = std::move(root);
  }
  model.root = std::move(current);
  model.eoi = head_id;
  return model;
}

ModelParse text_to_model(std::string_view text) {
  auto parsed = parse_rule(text);
  ModelParse out;
  out.diagnostics = std::move(parsed.diagnostics);
  if (parsed.rule) out.model = ast_to_model(*parsed.rule);
  return out;
}

ElementId add_element(GuiRuleModel& model, ElementId parent, ElementKind kind) {
  GuiElement& p = require(model, parent);
  const GuiElement* owner = p.group ? owning_element(model, parent) : &p;
  if (owner == nullptr || !is_structural(owner->kind) || !is_legal_child(owner->kind, kind)) {
    throw ModelError("illegal-child", "'" + std::string(surface_form(kind)) +
                                          "' cannot be added here");
  }
  GuiElement e;
  e.id = model.next_id++;
  e.kind = kind;
  // Re-lookup: `owning_element` does not invalidate, but keep `p` fresh.
  GuiElement& target = require(model, parent);
  target.children.push_back(std::move(e));
  return target.children.back().id;
}

ElementId add_group(GuiRuleModel& model, ElementId parent) {
  GuiElement& p = require(model, parent);
  if (!p.group && !is_structural(p.kind)) {
    throw ModelError("illegal-child", "only structural elements hold condition groups");
  }
  GuiElement g;
  g.id = model.next_id++;
  g.group = true;
  g.state = ElementState::Active;
  g.constraint = p.constraint;
  p.children.push_back(std::move(g));
  return p.children.back().id;
}

void remove_element(GuiRuleModel& model, ElementId id) {
  if (id == model.root.id) throw ModelError("illegal-edit", "the template root cannot be removed");
  auto path = path_to(model, id);
  if (path.size() < 2) throw ModelError("unknown-element", "no element with id " + std::to_string(id));
  GuiElement& parent = require(model, path[path.size() - 2]->id);
  if (model.eoi && subtree_has(*path.back(), *model.eoi)) model.eoi.reset();
  std::erase_if(parent.children, [&](const GuiElement& c) { return c.id == id; });
}

void set_value(GuiRuleModel& model, ElementId id, std::optional<ValueLiteral> value) {
  GuiElement& e = require(model, id);
  if (e.group) throw ModelError("illegal-edit", "groups have no value");
  if (value) {
    const ValueSlot slot = value_slot(e.kind);
    const auto form = value->form;
    bool ok = false;
    switch (slot) {
    case ValueSlot::None: break;
    case ValueSlot::OptionalPattern: ok = form == ValueLiteral::Form::Pattern; break;
    case ValueSlot::OptionalExpr: ok = form == ValueLiteral::Form::Expr; break;
    case ValueSlot::OptionalPatternOrExpr:
      ok = form == ValueLiteral::Form::Pattern || form == ValueLiteral::Form::Expr;
      break;
    case ValueSlot::PatternOrSuperclass:
      ok = form == ValueLiteral::Form::Pattern || form == ValueLiteral::Form::Superclass;
      break;
    case ValueSlot::PatternOrInterface:
      ok = form == ValueLiteral::Form::Pattern || form == ValueLiteral::Form::Interface;
      break;
    }
    if (!ok) {
      throw ModelError("illegal-value", "'" + std::string(surface_form(e.kind)) +
                                            "' does not take this kind of value");
    }
    if (form == ValueLiteral::Form::Pattern && !parse_pattern(value->text).pattern) {
      throw ModelError("illegal-value", "'" + value->text + "' is not a valid pattern");
    }
  }
  e.value = std::move(value);
  if (e.value) set_state(model, id, ElementState::Active);
}

void set_state(GuiRuleModel& model, ElementId id, ElementState state) {
  auto path = path_to(model, id);
  if (path.empty()) throw ModelError("unknown-element", "no element with id " + std::to_string(id));
  GuiElement& e = require(model, id);
  e.state = state;
  if (state != ElementState::Active) return;
  // Enclosing elements become active too, except that the template root
  // only does so for a characteristic of its own.
  for (std::size_t i = path.size() - 1; i-- > 0;) {
    const GuiElement* below = path[i + 1];
    if (i == 0 && !below->group && is_structural(below->kind)) break;
    GuiElement& p = require(model, path[i]->id);
    if (!p.group) p.state = ElementState::Active;
  }
  // Anything newly active inside a constraint joins it.
  for (const GuiElement* p : path) {
    if (p->group ? p->constraint : marked(*p)) {
      set_constraint(model, p->id, true);
      break;
    }
  }
}

void set_constraint(GuiRuleModel& model, ElementId id, bool constraint) {
  GuiElement& e = require(model, id);
  for_each_node(e, [&](GuiElement& n) {
    if (!constraint || n.active() || n.group) n.constraint = constraint;
  });
  if (!constraint) {
    // An ancestor marked as a whole constraint no longer is one.
    for (const GuiElement* p : path_to(model, id)) {
      if (p->id != id) require(model, p->id).constraint = false;
    }
  }
}

void set_connective(GuiRuleModel& model, ElementId id, Connective connective) {
  require(model, id).connective = connective;
}

void set_eoi(GuiRuleModel& model, std::optional<ElementId> id) {
  if (!id) {
    model.eoi.reset();
    return;
  }
  const GuiElement& e = require(model, *id);
  if (!e.eoi_eligible()) {
    throw ModelError("not-eligible", "'" + std::string(surface_form(e.kind)) +
                                         "' cannot be the element of interest");
  }
  bool outside = false;
  std::function<void(const GuiElement&, bool)> scan = [&](const GuiElement& n, bool inside) {
    inside = inside || n.id == *id;
    if ((n.group ? n.constraint : marked(n)) && !inside) outside = true;
    for (const auto& child : n.children) scan(child, inside);
  };
  scan(model.root, false);
  if (outside) {
    throw ModelError("constraint-outside-eoi",
                     "the element of interest must contain every constraint");
  }
  model.eoi = id;
}

GuideState guide_step(const GuiRuleModel& model) {
  GuideState g;
  for_each_node(model.root, [&](const GuiElement& e) {
    if (!e.group && e.active()) g.quantifier_done = true;
    if (!e.group && marked(e)) g.constraint_done = true;
  });
  g.current = !g.quantifier_done ? 1 : !g.constraint_done ? 2 : 3;
  return g;
}

std::vector<std::string> check_invariants(const GuiRuleModel& model) {
  std::vector<std::string> problems;
  std::function<void(const GuiElement&, bool)> walk = [&](const GuiElement& e, bool inherited) {
    const bool flagged = e.group ? e.constraint : marked(e);
    if (inherited && (e.group || e.active()) && !e.constraint) {
      problems.push_back("element " + std::to_string(e.id) +
                         " is inside a constraint but not marked");
    }
    for (const auto& child : e.children) walk(child, inherited || flagged);
  };
  walk(model.root, false);
  if (model.eoi) {
    const GuiElement* e = find_element(model, *model.eoi);
    if (e == nullptr || !e->eoi_eligible()) {
      problems.push_back("element of interest is not an eligible element");
    } else {
      std::function<void(const GuiElement&, bool)> scan = [&](const GuiElement& n, bool inside) {
        inside = inside || n.id == *model.eoi;
        if ((n.group ? n.constraint : marked(n)) && !inside) {
          problems.push_back("constraint " + std::to_string(n.id) + " lies outside the element of interest");
        }
        for (const auto& child : n.children) scan(child, inside);
      };
      scan(model.root, false);
    }
  }
  return problems;
}

std::string model_to_json(const GuiRuleModel& model) {
  nlohmann::json j;
  j["schemaVersion"] = 1;
  j["title"] = model.title;
  j["description"] = model.description;
  j["tags"] = model.tags;
  j["fileFilter"] = model.file_filter;
  j["eoi"] = model.eoi ? nlohmann::json(*model.eoi) : nlohmann::json(nullptr);
  j["nextId"] = model.next_id;
  j["root"] = node_json(model.root);
  return j.dump(2);
}

GuiRuleModel model_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ModelError("bad-model", std::string("model is not valid JSON: ") + e.what());
  }
  try {
    GuiRuleModel model;
    model.title = j.value("title", "");
    model.description = j.value("description", "");
    model.tags = j.value("tags", std::vector<std::string>{});
    model.file_filter = j.value("fileFilter", std::vector<std::string>{});
    if (j.contains("eoi") && !j["eoi"].is_null()) model.eoi = j["eoi"].get<int>();
    model.root = node_from(j.at("root"));
    int max_id = 0;
    for_each_node(model.root, [&](const GuiElement& e) { max_id = std::max(max_id, e.id); });
    model.next_id = std::max(j.value("nextId", 1), max_id + 1);
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw ModelError("bad-model", std::string("malformed model: ") + e.what());
  }
}

} // namespace rulecraft

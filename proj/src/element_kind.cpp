#include "rulecraft/element_kind.hpp"

#include <algorithm>

namespace rulecraft {
namespace {

using K = ElementKind;

struct KindInfo {
  std::string_view surface;
  std::string_view id;
  ValueSlot slot;
};

constexpr std::array<KindInfo, kElementKindCount> kInfo = {{
    {"class", "class", ValueSlot::None},
    {"function", "function", ValueSlot::None},
    {"abstract function", "abstractFunction", ValueSlot::None},
    {"constructor", "constructor", ValueSlot::None},
    {"declaration statement", "declarationStatement", ValueSlot::None},
    {"parameter", "parameter", ValueSlot::None},
    {"type", "type", ValueSlot::OptionalPatternOrExpr},
    {"extension of", "extension", ValueSlot::PatternOrSuperclass},
    {"implementation of", "implementation", ValueSlot::PatternOrInterface},
    {"expression statement", "expressionStatement", ValueSlot::OptionalExpr},
    {"initial value", "initialValue", ValueSlot::OptionalExpr},
    {"return value", "returnValue", ValueSlot::OptionalExpr},
    {"annotation", "annotation", ValueSlot::OptionalExpr},
    {"name", "name", ValueSlot::OptionalPattern},
    {"specifier", "specifier", ValueSlot::OptionalPattern},
    {"visibility", "visibility", ValueSlot::OptionalPattern},
}};

// Children per owner. `return value` is deliberately absent from the class
// list: a class has no return value of its own.
constexpr std::array kClassChildren = {K::Annotation, K::Specifier, K::Visibility,
                                       K::Name, K::Extension, K::Implementation,
                                       K::Function, K::AbstractFunction,
                                       K::Constructor, K::DeclarationStatement,
                                       K::Class};
constexpr std::array kFunctionChildren = {K::Annotation, K::Specifier, K::Visibility,
                                          K::Type, K::Name, K::Parameter,
                                          K::ReturnValue, K::DeclarationStatement,
                                          K::ExpressionStatement};
constexpr std::array kAbstractFunctionChildren = {K::Annotation, K::Specifier,
                                                  K::Visibility, K::Type, K::Name,
                                                  K::Parameter};
constexpr std::array kConstructorChildren = {K::Annotation, K::Specifier, K::Visibility,
                                             K::Parameter, K::ReturnValue,
                                             K::DeclarationStatement,
                                             K::ExpressionStatement};
constexpr std::array kDeclarationChildren = {K::Annotation, K::Specifier, K::Visibility,
                                             K::Type, K::Name, K::InitialValue};
constexpr std::array kParameterChildren = {K::Type, K::Name};

constexpr std::array kClassOnly = {K::Class};
constexpr std::array kDeclarationParents = {K::Class, K::Function, K::Constructor};
constexpr std::array kExpressionParents = {K::Function, K::Constructor};
constexpr std::array kInitialValueParents = {K::DeclarationStatement};

std::size_t index_of(ElementKind kind) { return static_cast<std::size_t>(kind); }

} // namespace

std::string_view surface_form(ElementKind kind) { return kInfo[index_of(kind)].surface; }

std::string_view kind_id(ElementKind kind) { return kInfo[index_of(kind)].id; }

std::optional<ElementKind> kind_from_id(std::string_view id) {
  for (auto kind : kAllElementKinds) {
    if (kind_id(kind) == id) return kind;
  }
  return std::nullopt;
}

bool is_structural(ElementKind kind) { return index_of(kind) <= index_of(K::Parameter); }

ValueSlot value_slot(ElementKind kind) { return kInfo[index_of(kind)].slot; }

std::span<const ElementKind> legal_children(ElementKind owner) {
  switch (owner) {
  case K::Class: return kClassChildren;
  case K::Function: return kFunctionChildren;
  case K::AbstractFunction: return kAbstractFunctionChildren;
  case K::Constructor: return kConstructorChildren;
  case K::DeclarationStatement: return kDeclarationChildren;
  case K::Parameter: return kParameterChildren;
  default: return {};
  }
}

bool is_legal_child(ElementKind owner, ElementKind child) {
  auto children = legal_children(owner);
  return std::find(children.begin(), children.end(), child) != children.end();
}

std::span<const ElementKind> legal_parents(ElementKind kind) {
  switch (kind) {
  case K::Class:
  case K::Function:
  case K::AbstractFunction:
  case K::Constructor: return kClassOnly;
  case K::DeclarationStatement: return kDeclarationParents;
  case K::ExpressionStatement: return kExpressionParents;
  case K::InitialValue: return kInitialValueParents;
  default: return {};
  }
}

bool is_legal_parent(ElementKind kind, ElementKind parent) {
  auto parents = legal_parents(kind);
  return std::find(parents.begin(), parents.end(), parent) != parents.end();
}

} // namespace rulecraft

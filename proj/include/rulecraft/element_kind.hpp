#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace rulecraft {

// The sixteen element kinds of the rule language. The first six are
// structural: they can head a rule, take a `with` clause and be chosen as
// the element of interest. The rest describe a property or a statement of
// their owning element.
enum class ElementKind : std::uint8_t {
  Class,
  Function,
  AbstractFunction,
  Constructor,
  DeclarationStatement,
  Parameter,
  Type,
  Extension,
  Implementation,
  ExpressionStatement,
  InitialValue,
  ReturnValue,
  Annotation,
  Name,
  Specifier,
  Visibility,
};

inline constexpr std::size_t kElementKindCount = 16;

inline constexpr std::array<ElementKind, kElementKindCount> kAllElementKinds = {
    ElementKind::Class,          ElementKind::Function,
    ElementKind::AbstractFunction, ElementKind::Constructor,
    ElementKind::DeclarationStatement, ElementKind::Parameter,
    ElementKind::Type,           ElementKind::Extension,
    ElementKind::Implementation, ElementKind::ExpressionStatement,
    ElementKind::InitialValue,   ElementKind::ReturnValue,
    ElementKind::Annotation,     ElementKind::Name,
    ElementKind::Specifier,      ElementKind::Visibility,
};

// What may follow an element keyword before its conditions.
enum class ValueSlot : std::uint8_t {
  None,                  // structural kinds
  OptionalPattern,       // name, specifier, visibility
  OptionalExpr,          // expression statement, initial value, return value, annotation
  OptionalPatternOrExpr, // type
  PatternOrSuperclass,   // extension of
  PatternOrInterface,    // implementation of
};

// Keyword as written in rule text, e.g. "declaration statement", "extension of".
std::string_view surface_form(ElementKind kind);

// Stable camelCase identifier used in serialized models and JSON.
std::string_view kind_id(ElementKind kind);
std::optional<ElementKind> kind_from_id(std::string_view id);

bool is_structural(ElementKind kind);
ValueSlot value_slot(ElementKind kind);

// Kinds allowed inside the `with`/`must have` expression of `owner`.
std::span<const ElementKind> legal_children(ElementKind owner);
bool is_legal_child(ElementKind owner, ElementKind child);

// Kinds allowed after `of`. Empty when the kind has no `of` clause.
std::span<const ElementKind> legal_parents(ElementKind kind);
bool is_legal_parent(ElementKind kind, ElementKind parent);

} // namespace rulecraft

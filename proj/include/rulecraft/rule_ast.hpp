#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rulecraft/diagnostic.hpp"
#include "rulecraft/element_kind.hpp"

namespace rulecraft {

// Owning pointer with value semantics; used to break the recursion between
// ElementNode and ConditionExpr.
template <class T>
class Box {
public:
  Box() = default;
  Box(T value) : ptr_(std::make_unique<T>(std::move(value))) {}
  Box(const Box& other) : ptr_(other.ptr_ ? std::make_unique<T>(*other.ptr_) : nullptr) {}
  Box(Box&&) noexcept = default;
  Box& operator=(const Box& other) {
    if (this != &other) ptr_ = other.ptr_ ? std::make_unique<T>(*other.ptr_) : nullptr;
    return *this;
  }
  Box& operator=(Box&&) noexcept = default;
  ~Box() = default;

  explicit operator bool() const { return static_cast<bool>(ptr_); }
  T& operator*() { return *ptr_; }
  const T& operator*() const { return *ptr_; }
  T* operator->() { return ptr_.get(); }
  const T* operator->() const { return ptr_.get(); }
  const T* get() const { return ptr_.get(); }
  void reset() { ptr_.reset(); }

private:
  std::unique_ptr<T> ptr_;
};

// Quoted value or keyword value attached to an element keyword.
struct ValueLiteral {
  enum class Form {
    Pattern,   // identifier pattern, see pattern.hpp
    Expr,      // Java expression text compared after stripping whitespace
    Superclass, // `extension of superclass`
    Interface, // `implementation of interface`
  };
  Form form = Form::Pattern;
  std::string text; // raw text between the quotes; empty for keyword forms

  bool operator==(const ValueLiteral&) const = default;
};

struct ConditionExpr;

struct ElementNode {
  ElementKind kind = ElementKind::Class;
  std::optional<ValueLiteral> value;
  Box<ConditionExpr> with;   // `with <expr>`, structural kinds only
  Box<ElementNode> parent;   // `of <element>`
  TextSpan span;             // span of the element keyword
};

struct ConditionExpr {
  enum class Op { And, Or, Group, Leaf };
  Op op = Op::Leaf;
  std::vector<ConditionExpr> operands; // two for And/Or, one for Group
  std::optional<ElementNode> leaf;

  static ConditionExpr make_leaf(ElementNode node);
  static ConditionExpr make_group(ConditionExpr inner);
  static ConditionExpr make_binary(Op op, ConditionExpr lhs, ConditionExpr rhs);
};

// `<quantifier> must have <constraint>`
struct RuleAst {
  ElementNode quantifier;
  ConditionExpr constraint;
};

// Equality on the logical structure: ignores spans and explicit grouping
// parentheses (a Group node compares equal to its content).
bool structurally_equal(const ElementNode& a, const ElementNode& b);
bool structurally_equal(const ConditionExpr& a, const ConditionExpr& b);
bool structurally_equal(const RuleAst& a, const RuleAst& b);

// Equality that also requires identical grouping.
bool exactly_equal(const ConditionExpr& a, const ConditionExpr& b);
bool exactly_equal(const ElementNode& a, const ElementNode& b);
bool exactly_equal(const RuleAst& a, const RuleAst& b);

ConditionExpr strip_groups(const ConditionExpr& expr);

// Calls `fn` for every leaf ElementNode in left-to-right order.
template <class Fn>
void for_each_leaf(const ConditionExpr& expr, Fn&& fn) {
  if (expr.op == ConditionExpr::Op::Leaf) {
    fn(*expr.leaf);
    return;
  }
  for (const auto& operand : expr.operands) for_each_leaf(operand, fn);
}

// Human-readable tree dump, used by `explain`.
std::string dump(const RuleAst& rule);

} // namespace rulecraft

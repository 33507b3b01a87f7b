#include "rulecraft/evaluator.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace rulecraft {
namespace {

using java::CodeNode;
using java::CodeTree;
using java::NodeId;
using java::NodeKind;
using K = ElementKind;

bool kind_matches(ElementKind kind, const CodeNode& n) {
  switch (kind) {
  case K::Class: return n.kind == NodeKind::ClassDecl;
  case K::Function: return n.kind == NodeKind::MethodDecl;
  case K::AbstractFunction: return n.kind == NodeKind::AbstractMethodDecl;
  case K::Constructor: return n.kind == NodeKind::ConstructorDecl;
  case K::DeclarationStatement:
    return n.kind == NodeKind::FieldDecl || n.kind == NodeKind::LocalDeclStmt;
  case K::Parameter: return n.kind == NodeKind::Parameter;
  case K::ExpressionStatement: return n.kind == NodeKind::ExpressionStmt;
  case K::ReturnValue: return n.kind == NodeKind::ReturnStmt && !n.expr_text.empty();
  case K::Annotation: return n.kind == NodeKind::Annotation;
  default: return false;
  }
}

bool is_body_statement(NodeKind kind) {
  return kind == NodeKind::LocalDeclStmt || kind == NodeKind::ExpressionStmt ||
         kind == NodeKind::ReturnStmt;
}

bool is_callable(NodeKind kind) {
  return kind == NodeKind::MethodDecl || kind == NodeKind::ConstructorDecl;
}

// Members are owned by their parent; statements by the enclosing method or
// constructor, however deeply nested in blocks.
NodeId owner_of(const CodeTree& tree, NodeId id) {
  const CodeNode& n = tree.node(id);
  if (!is_body_statement(n.kind)) return n.parent;
  NodeId p = n.parent;
  while (p != java::kNoNode && !is_callable(tree.node(p).kind)) p = tree.node(p).parent;
  return p;
}

std::string erase_type_arguments(std::string_view text) {
  return std::string(text.substr(0, text.find('<')));
}

bool test_holds(const AttrTest& t, const CodeNode& n) {
  const std::vector<std::string>* list = nullptr;
  if (t.attr == Attr::Specifier) list = &n.specifiers;
  if (t.attr == Attr::Interface) list = &n.interface_texts;
  if (list != nullptr) {
    if (t.mode == AttrTest::Mode::NonEmpty) return !list->empty();
    if (list->empty()) return t.pattern->matches("");
    return std::any_of(list->begin(), list->end(), [&](const std::string& item) {
      return t.pattern->matches(t.attr == Attr::Interface ? erase_type_arguments(item) : item);
    });
  }
  std::string value;
  switch (t.attr) {
  case Attr::Name: value = n.name; break;
  case Attr::Visibility: value = n.visibility; break;
  case Attr::Type: value = n.type_text; break;
  case Attr::Superclass: value = n.superclass_text; break;
  case Attr::Initializer: value = n.initializer_text; break;
  case Attr::Expr: value = n.expr_text; break;
  case Attr::AnnotationText: value = n.annotation_text; break;
  default: break;
  }
  switch (t.mode) {
  case AttrTest::Mode::NonEmpty: return !value.empty();
  case AttrTest::Mode::Expr: return strip_whitespace(value) == t.expr->normalized;
  case AttrTest::Mode::Pattern:
    return t.pattern->matches(t.attr == Attr::Superclass ? erase_type_arguments(value) : value);
  }
  return false;
}

bool holds(const Cond& c, const CodeTree& tree, NodeId id);

template <typename F>
bool any_body_statement(const CodeTree& tree, NodeId id, F&& pred) {
  for (NodeId child : tree.node(id).children) {
    const NodeKind kind = tree.node(child).kind;
    if (kind == NodeKind::Block) {
      if (any_body_statement(tree, child, pred)) return true;
    } else if (is_body_statement(kind) && pred(child)) {
      return true;
    }
  }
  return false;
}

// Some node related to `id` (a direct member, or a body statement of a
// method or constructor) matches `q`.
bool exists_related(const NodeQuery& q, const CodeTree& tree, NodeId id) {
  auto matches = [&](NodeId candidate) { return node_matches(q, tree, candidate); };
  const CodeNode& n = tree.node(id);
  const bool statement = q.target == K::ExpressionStatement || q.target == K::ReturnValue ||
                         (q.target == K::DeclarationStatement && n.kind != NodeKind::ClassDecl);
  if (statement) return is_callable(n.kind) && any_body_statement(tree, id, matches);
  return std::any_of(n.children.begin(), n.children.end(), matches);
}

bool holds(const Cond& c, const CodeTree& tree, NodeId id) {
  switch (c.op) {
  case Cond::Op::True: return true;
  case Cond::Op::And: return holds(c.operands[0], tree, id) && holds(c.operands[1], tree, id);
  case Cond::Op::Or: return holds(c.operands[0], tree, id) || holds(c.operands[1], tree, id);
  case Cond::Op::Test: return test_holds(*c.test, tree.node(id));
  case Cond::Op::Exists: return exists_related(*c.query, tree, id);
  case Cond::Op::Self: return node_matches(*c.query, tree, id);
  }
  return false;
}

std::vector<MatchRecord> evaluate_file(const QueryPair& pair, const CodeTree& tree) {
  const auto quantified = select_nodes(pair.quantifier, tree);
  std::vector<MatchRecord> out;
  out.reserve(quantified.size());
  for (NodeId id : quantified) {
    // The constraint query is the quantifier plus the must-have condition,
    // so membership in C reduces to checking it on Q's nodes.
    const bool ok = node_matches(pair.constraint, tree, id);
    const auto& span = tree.node(id).span;
    out.push_back({tree.path, span, std::string(tree.text(span)),
                   ok ? MatchStatus::Satisfied : MatchStatus::Violated});
  }
  return out;
}

EvalResult merge(std::vector<std::vector<MatchRecord>>& per_file, std::size_t considered,
                 bool filter_matched_zero) {
  EvalResult result;
  result.files_considered = considered;
  result.filter_matched_zero = filter_matched_zero;
  for (auto& records : per_file) {
    for (auto& r : records) {
      (r.status == MatchStatus::Satisfied ? result.satisfied : result.violated)
          .push_back(std::move(r));
    }
  }
  auto order = [](const MatchRecord& a, const MatchRecord& b) {
    return std::tie(a.file, a.span.start_line, a.span.start_col, a.span.end_line, a.span.end_col) <
           std::tie(b.file, b.span.start_line, b.span.start_col, b.span.end_line, b.span.end_col);
  };
  std::stable_sort(result.satisfied.begin(), result.satisfied.end(), order);
  std::stable_sort(result.violated.begin(), result.violated.end(), order);
  return result;
}

std::vector<const CodeTree*> filtered(const std::vector<CodeTree>& corpus, const FileFilter& filter) {
  std::vector<const CodeTree*> out;
  for (const auto& tree : corpus) {
    if (filter.accepts(tree.path)) out.push_back(&tree);
  }
  return out;
}

std::string normalize_path(std::string path) {
  std::replace(path.begin(), path.end(), '\\', '/');
  while (path.starts_with("./")) path.erase(0, 2);
  return path;
}

bool glob_match_at(std::string_view p, std::string_view s) {
  while (!p.empty()) {
    if (p.starts_with("**")) {
      std::string_view rest = p.substr(2);
      // "**/" may also match no segments at all.
      if (rest.starts_with('/') && glob_match_at(rest.substr(1), s)) return true;
      for (std::size_t i = 0; i <= s.size(); ++i) {
        if (glob_match_at(rest, s.substr(i))) return true;
      }
      return false;
    }
    if (p.front() == '*') {
      for (std::size_t i = 0; i <= s.size(); ++i) {
        if (glob_match_at(p.substr(1), s.substr(i))) return true;
        if (i < s.size() && s[i] == '/') break;
      }
      return false;
    }
    if (s.empty()) return false;
    if (p.front() == '?' ? s.front() == '/' : p.front() != s.front()) return false;
    p.remove_prefix(1);
    s.remove_prefix(1);
  }
  return s.empty();
}

} // namespace

FileFilter::FileFilter(std::vector<std::string> include) {
  for (auto& entry : include) {
    std::string path = normalize_path(std::move(entry));
    if (path.starts_with('/') || (path.size() > 1 && path[1] == ':')) {
      throw std::invalid_argument("file filter entries must be project-relative: " + path);
    }
    if (!path.empty()) include_.push_back(std::move(path));
  }
}

bool FileFilter::accepts(std::string_view path) const {
  if (include_.empty()) return true;
  return std::any_of(include_.begin(), include_.end(), [&](const std::string& entry) {
    if (entry.find_first_of("*?") != std::string::npos) return glob_match(entry, path);
    return path.starts_with(entry);
  });
}

bool glob_match(std::string_view pattern, std::string_view path) {
  return glob_match_at(pattern, path);
}

bool node_matches(const NodeQuery& q, const CodeTree& tree, NodeId id) {
  if (!kind_matches(q.target, tree.node(id))) return false;
  if (!holds(q.condition, tree, id)) return false;
  NodeId current = id;
  for (const NodeQuery& ancestor : q.ancestors) {
    current = owner_of(tree, current);
    if (current == java::kNoNode) return false;
    if (!kind_matches(ancestor.target, tree.node(current))) return false;
    if (!holds(ancestor.condition, tree, current)) return false;
  }
  return true;
}

std::vector<NodeId> select_nodes(const NodeQuery& q, const CodeTree& tree) {
  // Node ids are assigned in pre-order, which is source order.
  std::vector<NodeId> out;
  for (NodeId id = 0; id < static_cast<NodeId>(tree.nodes.size()); ++id) {
    if (node_matches(q, tree, id)) out.push_back(id);
  }
  return out;
}

EvalResult evaluate_serial(const QueryPair& pair, const std::vector<CodeTree>& corpus,
                           const FileFilter& filter) {
  const auto files = filtered(corpus, filter);
  std::vector<std::vector<MatchRecord>> per_file(files.size());
  for (std::size_t i = 0; i < files.size(); ++i) per_file[i] = evaluate_file(pair, *files[i]);
  return merge(per_file, files.size(), !filter.empty() && files.empty());
}

EvalResult evaluate(const QueryPair& pair, const std::vector<CodeTree>& corpus,
                    const FileFilter& filter) {
  const auto files = filtered(corpus, filter);
  std::vector<std::vector<MatchRecord>> per_file(files.size());
  const auto count = static_cast<std::ptrdiff_t>(files.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    per_file[static_cast<std::size_t>(i)] = evaluate_file(pair, *files[static_cast<std::size_t>(i)]);
  }
  return merge(per_file, files.size(), !filter.empty() && files.empty());
}

} // namespace rulecraft

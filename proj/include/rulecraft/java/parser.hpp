#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rulecraft/java/code_tree.hpp"

namespace rulecraft::java {

struct JavaIssue {
  std::string message;
  SourceSpan span;
};

struct JavaParse {
  std::optional<CodeTree> tree; // absent when `error` is set
  std::vector<JavaIssue> warnings;
  std::optional<JavaIssue> error;
};

// Parses the supported Java subset. Comments are dropped; enum, record and
// annotation-type declarations are skipped with a warning; bodies of local
// classes, anonymous classes and lambdas are kept only as expression text.
JavaParse parse_java(std::string_view source, std::string path);

// Java source for the tree, one declaration or statement per line. Control
// statements are printed as the plain blocks they are modelled as, so the
// output re-parses to a structurally equal tree.
std::string print_java(const CodeTree& tree);

} // namespace rulecraft::java

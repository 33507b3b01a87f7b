#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rulecraft/diagnostic.hpp"

namespace rulecraft {

// Identifier pattern language used inside quoted rule values:
//
//   X        exact match
//   X...     starts with X
//   ...X     ends with X
//   ...X...  contains X
//   !part    negates a single part
//   a&&b     both parts hold (binds tighter than ||)
//   a||b     either alternative holds
//
// Matching is case-sensitive and there is no escaping; literals are runs of
// Java identifier characters.

enum class Anchor { Exact, Prefix, Suffix, Contains };

struct PatternPart {
  bool negated = false;
  Anchor anchor = Anchor::Exact;
  std::string literal;

  bool matches(std::string_view subject) const;
  bool operator==(const PatternPart&) const = default;
};

// Disjunction of conjunctions.
struct PatternExpr {
  std::vector<std::vector<PatternPart>> alternatives;

  bool matches(std::string_view subject) const;
  // Canonical text without surrounding quotes, e.g. "!Base&&...Repository".
  std::string to_string() const;
  bool operator==(const PatternExpr&) const = default;
};

struct PatternParse {
  std::optional<PatternExpr> pattern;
  // Set on failure; span is relative to the pattern text.
  std::optional<Diagnostic> error;
};

bool is_identifier_char(char c);

PatternParse parse_pattern(std::string_view text);

inline bool match_pattern(const PatternExpr& pattern, std::string_view subject) {
  return pattern.matches(subject);
}

} // namespace rulecraft

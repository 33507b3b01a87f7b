#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rulecraft/diagnostic.hpp"
#include "rulecraft/rule_ast.hpp"

namespace rulecraft {

enum class TokenKind {
  Element,    // one of the sixteen element keywords (possibly two words)
  Must,
  Have,
  With,
  Of,
  And,
  Or,
  Superclass,
  Interface,
  LParen,
  RParen,
  Literal,    // double-quoted text
  Word,       // anything alphabetic that is not a keyword
  End,
};

struct Token {
  TokenKind kind = TokenKind::End;
  ElementKind element = ElementKind::Class; // valid for TokenKind::Element
  std::string text;                         // literal content or word spelling
  TextSpan span;
  bool unterminated = false;                // literal missing its closing quote
};

struct LexResult {
  std::vector<Token> tokens; // never contains the End token
  std::vector<Diagnostic> diagnostics;
};

LexResult lex_rule(std::string_view text);

struct RuleParse {
  std::optional<RuleAst> rule;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return rule.has_value(); }
};

// Parses rule text. Fails with at least one error diagnostic; incomplete
// input is reported with code "incomplete" and a duplicate `must` with code
// "duplicate-must" on the second occurrence.
RuleParse parse_rule(std::string_view text);

// Canonical text: single spaces, lowercase keywords, double quotes. Explicit
// groups are kept; any other parentheses are emitted only where the parse
// would otherwise associate differently.
std::string render_rule(const RuleAst& rule);
std::string render_element(const ElementNode& element);

// Display strings for terminals that are not keywords.
inline constexpr std::string_view kPatternPlaceholder = "\"pattern\"";
inline constexpr std::string_view kExprPlaceholder = "\"expr\"";

// Terminals the parser would accept right after `prefix`.
struct Prediction {
  std::vector<std::string> expected; // keyword spellings, element surface forms,
                                     // "(", ")" or a literal placeholder
  bool parsed_to_end = false;        // false when the prefix itself is invalid
  bool inside_literal = false;       // prefix ends inside an open quote
};

Prediction predict_next(std::string_view prefix);

} // namespace rulecraft

#include "rulecraft/grammar.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "rulecraft/pattern.hpp"

namespace rulecraft {
namespace {

using Op = ConditionExpr::Op;

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }
bool is_word_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}

struct SingleKeyword {
  std::string_view text;
  TokenKind kind;
};

constexpr std::array<SingleKeyword, 8> kKeywords = {{
    {"must", TokenKind::Must},
    {"have", TokenKind::Have},
    {"with", TokenKind::With},
    {"of", TokenKind::Of},
    {"and", TokenKind::And},
    {"or", TokenKind::Or},
    {"superclass", TokenKind::Superclass},
    {"interface", TokenKind::Interface},
}};

std::optional<ElementKind> single_word_element(std::string_view word) {
  for (auto kind : kAllElementKinds) {
    if (surface_form(kind) == word) return kind;
  }
  return std::nullopt;
}

// Elements spelled with two words: first word -> (second word, kind).
std::optional<std::pair<std::string_view, ElementKind>> two_word_start(std::string_view word) {
  for (auto kind : kAllElementKinds) {
    std::string_view surface = surface_form(kind);
    auto space = surface.find(' ');
    if (space != std::string_view::npos && surface.substr(0, space) == word) {
      return std::pair{surface.substr(space + 1), kind};
    }
  }
  return std::nullopt;
}

Diagnostic make_error(std::string code, std::string message, TextSpan span,
                      std::optional<std::string> hint = std::nullopt) {
  return Diagnostic{Severity::Error, std::move(code), std::move(message), span,
                    std::move(hint)};
}

std::string quote(std::string_view s) { return "'" + std::string(s) + "'"; }

std::string join_surfaces(std::span<const ElementKind> kinds) {
  std::string out;
  for (std::size_t i = 0; i < kinds.size(); ++i) {
    if (i > 0) out += ", ";
    out += surface_form(kinds[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Lexer

class Lexer {
public:
  explicit Lexer(std::string_view text) : text_(text) {}

  LexResult run() {
    while (true) {
      skip_space();
      if (pos_ >= text_.size()) break;
      const char c = text_[pos_];
      if (c == '(' || c == ')') {
        push(c == '(' ? TokenKind::LParen : TokenKind::RParen, std::string(1, c), pos_,
             pos_ + 1);
        ++pos_;
      } else if (c == '"') {
        lex_literal();
      } else if (is_word_char(c)) {
        lex_word();
      } else {
        result_.diagnostics.push_back(make_error(
            "unexpected-character", "unexpected character " + quote(std::string(1, c)),
            {pos_, pos_ + 1}));
        ++pos_;
      }
    }
    return std::move(result_);
  }

private:
  void lex_literal() {
    const std::size_t begin = pos_;
    const std::size_t close = text_.find('"', pos_ + 1);
    if (close == std::string_view::npos) {
      Token token{TokenKind::Literal, {}, std::string(text_.substr(begin + 1)),
                  {begin, text_.size()}, true};
      result_.tokens.push_back(std::move(token));
      result_.diagnostics.push_back(make_error("unterminated-quote",
                                               "quoted value is missing its closing '\"'",
                                               {begin, text_.size()}));
      pos_ = text_.size();
      return;
    }
    push(TokenKind::Literal, std::string(text_.substr(begin + 1, close - begin - 1)), begin,
         close + 1);
    pos_ = close + 1;
  }

  void lex_word() {
    const std::size_t begin = pos_;
    std::string_view word = read_word();
    for (const auto& kw : kKeywords) {
      if (kw.text == word) {
        push(kw.kind, std::string(word), begin, pos_);
        return;
      }
    }
    if (auto kind = single_word_element(word)) {
      push_element(*kind, begin, pos_);
      return;
    }
    if (auto start = two_word_start(word)) {
      const std::size_t after_first = pos_;
      skip_space();
      const std::size_t second_begin = pos_;
      std::string_view second = read_word();
      if (second == start->first) {
        push_element(start->second, begin, pos_);
        return;
      }
      pos_ = after_first;
      (void)second_begin;
    }
    push(TokenKind::Word, std::string(word), begin, pos_);
  }

  std::string_view read_word() {
    const std::size_t begin = pos_;
    while (pos_ < text_.size() && is_word_char(text_[pos_])) ++pos_;
    return text_.substr(begin, pos_ - begin);
  }

  void push(TokenKind kind, std::string text, std::size_t begin, std::size_t end) {
    Token token;
    token.kind = kind;
    token.text = std::move(text);
    token.span = {begin, end};
    result_.tokens.push_back(std::move(token));
  }

  void push_element(ElementKind kind, std::size_t begin, std::size_t end) {
    Token token;
    token.kind = TokenKind::Element;
    token.element = kind;
    token.text = std::string(surface_form(kind));
    token.span = {begin, end};
    result_.tokens.push_back(std::move(token));
  }

  void skip_space() {
    while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  LexResult result_;
};

// ---------------------------------------------------------------------------
// Parser
//
// Recursive descent over the token list. Ambiguities in the grammar are
// resolved greedily towards the innermost element: an `and`/`or` continues the
// innermost open expression whose owner accepts the next condition, and an
// `of` attaches to the innermost element that accepts the named parent.
//
// In prediction mode the token list ends at the cursor. Every check made
// against the End token records the terminal being tested, so that after the
// parse the recorded set is exactly what the grammar accepts next.

struct ParseAbort {};

class Parser {
public:
  Parser(std::vector<Token> tokens, std::size_t text_size, bool predicting)
      : tokens_(std::move(tokens)), predicting_(predicting) {
    Token end;
    end.kind = TokenKind::End;
    end.span = {text_size, text_size};
    tokens_.push_back(std::move(end));
  }

  RuleAst parse_rule() {
    ElementNode head = parse_head();
    if (!at(TokenKind::Must, "must")) {
      fail_here("expected 'must have' after the quantifier", "missing-must");
    }
    const Token& must = cur();
    advance();
    if (!at(TokenKind::Have, "have")) {
      if (cur().kind == TokenKind::End) {
        fail_here("'must' must be followed by 'have'", "missing-have");
      }
      fail(make_error("missing-have", "'must' must be followed by 'have'",
                      {must.span.begin, cur().span.end}, "write 'must have'"));
    }
    advance();
    ConditionExpr constraint = parse_exp(head.kind);
    if (cur().kind != TokenKind::End) report_leftover(head.kind);
    return RuleAst{std::move(head), std::move(constraint)};
  }

  const std::set<std::string>& expected() const { return expected_; }
  const std::optional<Diagnostic>& error() const { return error_; }
  // True when the parse ran out of input, including an `and`, `or` or `of`
  // that is the last token and therefore still waits for its operand.
  bool stopped_at_end() const {
    return cur().kind == TokenKind::End || (dangling_ && *dangling_ == pos_);
  }

private:
  const Token& cur() const { return tokens_[pos_]; }
  const Token& peek(std::size_t n) const {
    return tokens_[std::min(pos_ + n, tokens_.size() - 1)];
  }
  void advance() {
    if (pos_ + 1 < tokens_.size()) ++pos_;
  }

  void expect_terminal(std::string_view name) { expected_.emplace(name); }

  bool at(TokenKind kind, std::string_view name) {
    if (predicting_ && cur().kind == TokenKind::End) expect_terminal(name);
    return cur().kind == kind;
  }

  void expect_children(ElementKind owner) {
    expect_terminal("(");
    for (auto child : legal_children(owner)) expect_terminal(surface_form(child));
  }

  [[noreturn]] void fail(Diagnostic d) {
    if (!error_) error_ = std::move(d);
    throw ParseAbort{};
  }

  [[noreturn]] void fail_here(std::string message, std::string code,
                              std::optional<std::string> hint = std::nullopt) {
    const Token& token = cur();
    if (token.kind == TokenKind::End) {
      fail(make_error("incomplete", "incomplete rule: " + message, token.span,
                      std::move(hint)));
    }
    if (token.kind == TokenKind::Word) fail(unknown_word(token));
    if (token.kind == TokenKind::Literal && token.unterminated) fail_silently();
    fail(make_error(std::move(code), std::move(message), token.span, std::move(hint)));
  }

  // The lexer has already reported the problem.
  [[noreturn]] void fail_silently() {
    if (!error_) {
      error_ = make_error("unterminated-quote", "quoted value is missing its closing '\"'",
                          cur().span);
    }
    throw ParseAbort{};
  }

  Diagnostic unknown_word(const Token& token) const {
    std::optional<std::string> hint;
    std::string lowered = token.text;
    std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lowered != token.text) {
      bool keyword = single_word_element(lowered) || two_word_start(lowered);
      for (const auto& kw : kKeywords) keyword = keyword || kw.text == lowered;
      if (keyword) hint = "keywords are lowercase: " + quote(lowered);
    }
    if (!hint) {
      if (auto start = two_word_start(token.text)) {
        hint = "did you mean " + quote(surface_form(start->second)) + "?";
      }
    }
    return make_error("unknown-keyword", "unknown keyword " + quote(token.text), token.span,
                      std::move(hint));
  }

  ElementNode parse_head() {
    if (predicting_ && cur().kind == TokenKind::End) {
      for (auto kind : kAllElementKinds) {
        if (is_structural(kind)) expect_terminal(surface_form(kind));
      }
    }
    if (cur().kind != TokenKind::Element || !is_structural(cur().element)) {
      std::string heads;
      for (auto kind : kAllElementKinds) {
        if (!is_structural(kind)) continue;
        if (!heads.empty()) heads += ", ";
        heads += surface_form(kind);
      }
      fail_here("a rule must start with one of: " + heads, "illegal-head");
    }
    return parse_element(/*top_level=*/true);
  }

  ElementNode parse_element(bool top_level) {
    ElementNode node;
    node.kind = cur().element;
    node.span = cur().span;
    advance();
    parse_value(node);

    if (is_structural(node.kind)) {
      if (at(TokenKind::With, "with")) {
        advance();
        node.with = parse_exp(node.kind);
      }
    } else if (cur().kind == TokenKind::With) {
      fail(make_error("illegal-child",
                      quote(surface_form(node.kind)) + " does not take a 'with' clause",
                      cur().span, "only structural elements have child conditions"));
    }

    if (!legal_parents(node.kind).empty()) {
      if (at(TokenKind::Of, "of") && parent_follows(node.kind)) {
        advance();
        node.parent = parse_element(top_level);
      }
    }
    if (top_level && cur().kind == TokenKind::Of) report_bad_of(node.kind);
    return node;
  }

  bool parent_follows(ElementKind kind) {
    const Token& next = peek(1);
    if (next.kind == TokenKind::End) {
      if (predicting_) {
        for (auto parent : legal_parents(kind)) expect_terminal(surface_form(parent));
        dangling_ = pos_;
      }
      return false;
    }
    return next.kind == TokenKind::Element && is_legal_parent(kind, next.element);
  }

  [[noreturn]] void report_bad_of(ElementKind kind) {
    auto parents = legal_parents(kind);
    if (parents.empty()) {
      fail(make_error("illegal-parent", quote(surface_form(kind)) + " has no 'of' clause",
                      cur().span));
    }
    advance();
    if (cur().kind == TokenKind::Element) {
      fail(make_error("illegal-parent",
                      quote(surface_form(cur().element)) + " cannot enclose " +
                          quote(surface_form(kind)),
                      cur().span, "allowed after 'of': " + join_surfaces(parents)));
    }
    if (predicting_ && cur().kind == TokenKind::End) {
      for (auto parent : parents) expect_terminal(surface_form(parent));
    }
    fail_here("expected an element after 'of'", "illegal-parent",
              "allowed after 'of': " + join_surfaces(parents));
  }

  void parse_value(ElementNode& node) {
    const ValueSlot slot = value_slot(node.kind);
    switch (slot) {
    case ValueSlot::None: return;
    case ValueSlot::OptionalPattern:
      if (at(TokenKind::Literal, kPatternPlaceholder)) node.value = take_pattern(node.kind);
      return;
    case ValueSlot::OptionalExpr:
      if (at(TokenKind::Literal, kExprPlaceholder)) node.value = take_expr();
      return;
    case ValueSlot::OptionalPatternOrExpr: {
      const bool literal = at(TokenKind::Literal, kPatternPlaceholder);
      if (predicting_ && cur().kind == TokenKind::End) expect_terminal(kExprPlaceholder);
      if (literal) node.value = take_pattern_or_expr();
      return;
    }
    case ValueSlot::PatternOrSuperclass:
    case ValueSlot::PatternOrInterface: {
      const bool superclass = slot == ValueSlot::PatternOrSuperclass;
      if (at(TokenKind::Literal, kPatternPlaceholder)) {
        node.value = take_pattern(node.kind);
        return;
      }
      const TokenKind keyword = superclass ? TokenKind::Superclass : TokenKind::Interface;
      if (at(keyword, superclass ? "superclass" : "interface")) {
        advance();
        node.value = ValueLiteral{superclass ? ValueLiteral::Form::Superclass
                                             : ValueLiteral::Form::Interface,
                                  {}};
        return;
      }
      fail_here(quote(surface_form(node.kind)) + " requires a quoted pattern or '" +
                    (superclass ? "superclass" : "interface") + "'",
                "missing-value");
    }
    }
  }

  ValueLiteral take_pattern(ElementKind kind) {
    const Token& token = cur();
    if (token.unterminated) fail_silently();
    auto parsed = parse_pattern(token.text);
    if (!parsed.pattern) {
      Diagnostic d = *parsed.error;
      d.span = {token.span.begin + 1 + d.span.begin, token.span.begin + 1 + d.span.end};
      d.message = quote(surface_form(kind)) + " expects an identifier pattern: " + d.message;
      fail(std::move(d));
    }
    advance();
    return ValueLiteral{ValueLiteral::Form::Pattern, token.text};
  }

  ValueLiteral take_expr() {
    const Token& token = cur();
    if (token.unterminated) fail_silently();
    if (token.text.find_first_not_of(" \t\r\n") == std::string::npos) {
      fail(make_error("empty-value", "quoted expression is empty", token.span));
    }
    advance();
    return ValueLiteral{ValueLiteral::Form::Expr, token.text};
  }

  // `type` accepts both; anything that reads as a pattern is one.
  ValueLiteral take_pattern_or_expr() {
    const Token& token = cur();
    if (token.unterminated) fail_silently();
    if (parse_pattern(token.text).pattern) {
      advance();
      return ValueLiteral{ValueLiteral::Form::Pattern, token.text};
    }
    return take_expr();
  }

  ConditionExpr parse_exp(ElementKind owner) { return parse_or(owner); }

  ConditionExpr parse_or(ElementKind owner) {
    ConditionExpr lhs = parse_and(owner);
    while (at_operator(TokenKind::Or, "or", owner)) {
      advance();
      ConditionExpr rhs = parse_and(owner);
      lhs = ConditionExpr::make_binary(Op::Or, std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  ConditionExpr parse_and(ElementKind owner) {
    ConditionExpr lhs = parse_primary(owner);
    while (at_operator(TokenKind::And, "and", owner)) {
      advance();
      ConditionExpr rhs = parse_primary(owner);
      lhs = ConditionExpr::make_binary(Op::And, std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  // An operator continues this expression only if what follows can start a
  // condition of `owner`; otherwise it is left for an enclosing expression.
  bool at_operator(TokenKind kind, std::string_view name, ElementKind owner) {
    if (!at(kind, name)) return false;
    const Token& next = peek(1);
    if (next.kind == TokenKind::End) {
      if (predicting_) {
        expect_children(owner);
        dangling_ = pos_;
      }
      return false;
    }
    if (next.kind == TokenKind::LParen) return true;
    return next.kind == TokenKind::Element && is_legal_child(owner, next.element);
  }

  ConditionExpr parse_primary(ElementKind owner) {
    if (at(TokenKind::LParen, "(")) {
      advance();
      ConditionExpr inner = parse_exp(owner);
      if (!at(TokenKind::RParen, ")")) fail_here("expected ')'", "unbalanced-parenthesis");
      advance();
      return ConditionExpr::make_group(std::move(inner));
    }
    if (predicting_ && cur().kind == TokenKind::End) expect_children(owner);
    if (cur().kind == TokenKind::Element) {
      if (!is_legal_child(owner, cur().element)) {
        fail(make_error("illegal-child",
                        quote(surface_form(cur().element)) +
                            " cannot appear in a condition of " + quote(surface_form(owner)),
                        cur().span,
                        "allowed here: " + join_surfaces(legal_children(owner))));
      }
      return ConditionExpr::make_leaf(parse_element(/*top_level=*/false));
    }
    fail_here("expected a condition of " + quote(surface_form(owner)), "expected-condition",
              "allowed here: " + join_surfaces(legal_children(owner)));
  }

  [[noreturn]] void report_leftover(ElementKind head) {
    const Token& token = cur();
    if ((token.kind == TokenKind::And || token.kind == TokenKind::Or)) {
      const Token& next = peek(1);
      if (next.kind == TokenKind::End) {
        advance();
        fail_here("expected a condition after " + quote(token.text), "incomplete");
      }
      if (next.kind == TokenKind::Element) {
        fail(make_error("illegal-child",
                        quote(surface_form(next.element)) +
                            " cannot appear in a condition of " + quote(surface_form(head)),
                        next.span, "allowed here: " + join_surfaces(legal_children(head))));
      }
      advance();
      fail_here("expected a condition after " + quote(token.text), "expected-condition");
    }
    if (token.kind == TokenKind::Of) {
      fail(make_error("illegal-parent", "'of' cannot follow here", token.span,
                      "'of' names the enclosing element of the element before it"));
    }
    if (token.kind == TokenKind::With) {
      fail(make_error("illegal-child", "'with' cannot follow here", token.span));
    }
    fail_here("unexpected " + quote(token.text), "unexpected-token");
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  bool predicting_ = false;
  std::set<std::string> expected_;
  std::optional<Diagnostic> error_;
  std::optional<std::size_t> dangling_;
};

// ---------------------------------------------------------------------------
// Renderer
//
// `Follower` describes the token that will come right after a fragment. A
// fragment that would swallow its follower on re-parse (see the greedy rules
// above) is wrapped in parentheses.

struct Follower {
  enum class Kind { None, Operator, Of } kind = Kind::None;
  bool paren = false;              // Operator followed by "("
  ElementKind element{};           // Operator's first condition, or Of's parent

  static Follower none() { return {}; }
  static Follower op(bool paren, ElementKind element) {
    return {Kind::Operator, paren, element};
  }
  static Follower of(ElementKind parent) { return {Kind::Of, false, parent}; }
};

bool element_accepts(const ElementNode& e, const Follower& f) {
  if (e.parent) return element_accepts(*e.parent, f);
  if (f.kind == Follower::Kind::Operator && e.with) {
    if (f.paren || is_legal_child(e.kind, f.element)) return true;
  }
  return f.kind == Follower::Kind::Of && is_legal_parent(e.kind, f.element);
}

std::string render_value(const ValueLiteral& value) {
  switch (value.form) {
  case ValueLiteral::Form::Superclass: return "superclass";
  case ValueLiteral::Form::Interface: return "interface";
  default: return "\"" + value.text + "\"";
  }
}

std::string render_exp(const ConditionExpr& e, ElementKind owner, const Follower& f);

std::string render_element_with(const ElementNode& e, const Follower& f) {
  std::string out(surface_form(e.kind));
  if (e.value) out += " " + render_value(*e.value);
  if (e.with) {
    const Follower inner = e.parent ? Follower::of(e.parent->kind) : f;
    out += " with " + render_exp(*e.with, e.kind, inner);
  }
  if (e.parent) out += " of " + render_element_with(*e.parent, f);
  return out;
}

const ElementNode& leftmost_leaf(const ConditionExpr& e) {
  if (e.op == Op::Leaf) return *e.leaf;
  return leftmost_leaf(e.operands.front());
}

std::string parenthesize(const ConditionExpr& e, ElementKind owner) {
  return "(" + render_exp(e, owner, Follower::none()) + ")";
}

std::string render_exp(const ConditionExpr& e, ElementKind owner, const Follower& f) {
  switch (e.op) {
  case Op::Leaf:
    if (element_accepts(*e.leaf, f)) {
      return "(" + render_element_with(*e.leaf, Follower::none()) + ")";
    }
    return render_element_with(*e.leaf, f);
  case Op::Group: return parenthesize(e.operands[0], owner);
  case Op::And:
  case Op::Or: {
    const ConditionExpr& lhs = e.operands[0];
    const ConditionExpr& rhs = e.operands[1];
    const bool rhs_parens = rhs.op == Op::Or || (e.op == Op::And && rhs.op == Op::And);
    const bool lhs_parens = e.op == Op::And && lhs.op == Op::Or;
    std::string right = rhs_parens ? parenthesize(rhs, owner) : render_exp(rhs, owner, f);
    const Follower next = right.front() == '('
                              ? Follower::op(true, ElementKind::Class)
                              : Follower::op(false, leftmost_leaf(rhs).kind);
    std::string left = lhs_parens ? parenthesize(lhs, owner) : render_exp(lhs, owner, next);
    return left + (e.op == Op::And ? " and " : " or ") + right;
  }
  }
  return {};
}

} // namespace

LexResult lex_rule(std::string_view text) { return Lexer(text).run(); }

RuleParse parse_rule(std::string_view text) {
  LexResult lexed = lex_rule(text);
  RuleParse result;
  if (lexed.tokens.empty() && lexed.diagnostics.empty()) {
    result.diagnostics.push_back(make_error("empty-rule", "rule is empty", {0, text.size()}));
    return result;
  }

  // More than one `must` is reported on its own: the parse error it causes
  // would only restate it less clearly.
  std::vector<Diagnostic> duplicates;
  bool seen_must = false;
  for (const auto& token : lexed.tokens) {
    if (token.kind != TokenKind::Must) continue;
    if (seen_must) {
      duplicates.push_back(make_error("duplicate-must", "only one 'must' is allowed",
                                      token.span, "a rule has a single 'must have'"));
    }
    seen_must = true;
  }
  if (!duplicates.empty()) {
    result.diagnostics = std::move(duplicates);
    return result;
  }

  Parser parser(std::move(lexed.tokens), text.size(), /*predicting=*/false);
  std::optional<RuleAst> rule;
  try {
    rule = parser.parse_rule();
  } catch (const ParseAbort&) {
  }
  result.diagnostics = std::move(lexed.diagnostics);
  if (parser.error()) {
    bool duplicate = false;
    for (const auto& d : result.diagnostics) duplicate |= d.span == parser.error()->span;
    if (!duplicate) result.diagnostics.push_back(*parser.error());
  }
  if (rule && !has_errors(result.diagnostics)) result.rule = std::move(rule);
  return result;
}

std::string render_element(const ElementNode& element) {
  return render_element_with(element, Follower::none());
}

std::string render_rule(const RuleAst& rule) {
  return render_element_with(rule.quantifier, Follower::none()) + " must have " +
         render_exp(rule.constraint, rule.quantifier.kind, Follower::none());
}

Prediction predict_next(std::string_view prefix) {
  LexResult lexed = lex_rule(prefix);
  Prediction prediction;
  if (!lexed.tokens.empty() && lexed.tokens.back().unterminated) {
    prediction.inside_literal = true;
    return prediction;
  }
  Parser parser(std::move(lexed.tokens), prefix.size(), /*predicting=*/true);
  try {
    parser.parse_rule();
  } catch (const ParseAbort&) {
  }
  prediction.parsed_to_end = parser.stopped_at_end();
  if (prediction.parsed_to_end) {
    prediction.expected.assign(parser.expected().begin(), parser.expected().end());
  }
  return prediction;
}

} // namespace rulecraft

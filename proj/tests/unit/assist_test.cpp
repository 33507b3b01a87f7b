#include <doctest.h>

#include <set>

#include "../support/rule_gen.hpp"
#include "rulecraft/assist.hpp"
#include "rulecraft/element_kind.hpp"
#include "rulecraft/grammar.hpp"

using namespace rulecraft;

namespace {

std::vector<std::string> tokens_at_end(std::string_view text) {
  std::vector<std::string> out;
  for (const auto& s : complete(text, text.size())) out.push_back(s.token);
  return out;
}

std::string spelling(const Token& t) {
  switch (t.kind) {
  case TokenKind::Element: return std::string(surface_form(t.element));
  case TokenKind::LParen: return "(";
  case TokenKind::RParen: return ")";
  case TokenKind::Literal: return "<literal>";
  default: return t.text;
  }
}

std::string fill(const std::string& token) {
  if (token == kPatternPlaceholder) return "\"x\"";
  if (token == kExprPlaceholder) return "\"0\"";
  return token;
}

} // namespace

TEST_CASE("must is followed by have") {
  CHECK(tokens_at_end("class must") == std::vector<std::string>{"have"});
  auto partial = complete("class mu", 8);
  REQUIRE(partial.size() == 1);
  CHECK(partial[0].token == "must");
  CHECK(partial[0].replace_begin == 6);
  CHECK_FALSE(partial[0].doc.empty());
}

TEST_CASE("children of a two-word head") {
  const std::set<std::string> allowed = {"annotation", "specifier", "visibility", "type",
                                         "name",       "initial value", "("};
  const auto got = tokens_at_end("declaration statement must have ");
  CHECK_FALSE(got.empty());
  for (const auto& t : got) {
    INFO(t);
    CHECK(allowed.count(t) == 1);
  }
  auto two_word = complete("declaration st", 14);
  REQUIRE(two_word.size() == 1);
  CHECK(two_word[0].token == "declaration statement");
  CHECK(two_word[0].replace_begin == 0);
}

TEST_CASE("empty text offers the head elements") {
  std::set<std::string> expected;
  for (auto kind : kAllElementKinds) {
    if (is_structural(kind)) expected.emplace(surface_form(kind));
  }
  const auto got = tokens_at_end("");
  CHECK(std::set<std::string>(got.begin(), got.end()) == expected);
  CHECK(got.size() == 6);
}

TEST_CASE("keywords come first, elements alphabetically") {
  const auto got = tokens_at_end("class with name \"A\" ");
  REQUIRE(got.size() > 3);
  CHECK(got[0] == "must");
  CHECK(std::vector<std::string>(got.begin() + 1, got.begin() + 4) ==
        std::vector<std::string>{"of", "and", "or"});
  CHECK(std::is_sorted(got.begin() + 4, got.end()));
}

TEST_CASE("fallback after an invalid prefix") {
  // The unknown word makes the prefix unparseable; the element before
  // `with` still determines what can follow.
  auto got = tokens_at_end("class Foo function with ");
  CHECK(std::find(got.begin(), got.end(), "parameter") != got.end());
  CHECK(std::find(got.begin(), got.end(), "extension of") == got.end());
  CHECK(tokens_at_end("class Foo must") == std::vector<std::string>{"have"});
  CHECK(tokens_at_end("class must have name \"a") .empty());
}

TEST_CASE("every next token is suggested and every suggestion stays valid") {
  testing::RuleGenerator gen(31, 3);
  for (int i = 0; i < 150; ++i) {
    const std::string text = render_rule(gen.rule());
    const auto tokens = lex_rule(text).tokens;
    for (const auto& tok : tokens) {
      const std::string prefix = text.substr(0, tok.span.begin);
      INFO(text);
      INFO(prefix);
      const auto got = tokens_at_end(prefix);
      const std::string want = spelling(tok);
      if (want == "<literal>") {
        CHECK((std::find(got.begin(), got.end(), std::string(kPatternPlaceholder)) != got.end() ||
               std::find(got.begin(), got.end(), std::string(kExprPlaceholder)) != got.end()));
      } else {
        CHECK(std::find(got.begin(), got.end(), want) != got.end());
      }
      for (const auto& s : got) {
        INFO(s);
        const bool glued = prefix.empty() || prefix.back() == ' ' || prefix.back() == '(';
        CHECK(predict_next(prefix + (glued ? "" : " ") + fill(s) + " ").parsed_to_end);
      }
    }
  }
}

TEST_CASE("hover documentation") {
  const std::string text = "function must have type \"void\"";
  auto type = hover_doc(text, text.find("type") + 1);
  REQUIRE(type);
  CHECK(type->term == "type");
  CHECK(type->description.find("return type") != std::string::npos);
  CHECK_FALSE(hover_doc(text, text.find("void")));
  auto must = hover_doc(text, text.find("must"));
  REQUIRE(must);
  CHECK(must->term == "must");
  auto two_word = hover_doc("declaration statement must have name", 14);
  REQUIRE(two_word);
  CHECK(two_word->term == "declaration statement");
}

TEST_CASE("vocabulary covers every keyword and element") {
  for (const char* keyword : {"must", "have", "with", "of", "and", "or", "superclass", "interface"}) {
    CHECK(find_doc(keyword) != nullptr);
  }
  for (auto kind : kAllElementKinds) CHECK(find_doc(surface_form(kind)) != nullptr);
  CHECK(vocabulary().size() == 8 + kElementKindCount);
  for (const auto& entry : vocabulary()) {
    INFO(entry.example);
    CHECK(parse_rule(entry.example).ok());
  }
}

TEST_CASE("lint") {
  auto dup = lint("class must have name \"A\" must have");
  REQUIRE(dup.size() == 1);
  CHECK(dup[0].code == "duplicate-must");
  CHECK(dup[0].span.begin == 25);

  CHECK(lint("class must have declaration statement with visibility \"private\" and function "
             "with name \"get...\"")
            .empty());

  auto incomplete = lint("class must have");
  REQUIRE(incomplete.size() == 1);
  CHECK(incomplete[0].severity == Severity::Warning);
  CHECK(incomplete[0].message == "incomplete rule");
  CHECK_FALSE(has_errors(incomplete));

  CHECK(lint("   ").empty());
  CHECK(has_errors(lint("class must have banana")));
}

#include <doctest.h>

#include <random>
#include <regex>

#include "rulecraft/pattern.hpp"

using namespace rulecraft;

namespace {

PatternExpr must_parse(std::string_view text) {
  auto parsed = parse_pattern(text);
  REQUIRE_MESSAGE(parsed.pattern.has_value(), text);
  return *parsed.pattern;
}

// Translates a pattern into an ECMAScript regex without going through
// parse_pattern, so it can serve as an independent reference.
std::string to_regex(const std::string& pattern) {
  std::string out;
  bool first_alt = true;
  auto split = [](const std::string& s, const std::string& sep) {
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (true) {
      auto next = s.find(sep, pos);
      parts.push_back(s.substr(pos, next - pos));
      if (next == std::string::npos) break;
      pos = next + sep.size();
    }
    return parts;
  };
  for (const auto& alt : split(pattern, "||")) {
    if (!first_alt) out += "|";
    first_alt = false;
    out += "(?:";
    for (auto part : split(alt, "&&")) {
      bool neg = part.starts_with("!");
      if (neg) part.erase(0, 1);
      bool lead = part.starts_with("...");
      if (lead) part.erase(0, 3);
      bool trail = part.ends_with("...");
      if (trail) part.erase(part.size() - 3);
      std::string body = std::string(lead ? ".*" : "") + part + (trail ? ".*" : "");
      out += neg ? "(?!" + body + "$)" : "(?=" + body + "$)";
    }
    out += ".*)";
  }
  return "^(?:" + out + ")$";
}

} // namespace

TEST_CASE("pattern anchors parse to the documented forms") {
  auto suffix = must_parse("...Repository");
  REQUIRE(suffix.alternatives.size() == 1);
  CHECK(suffix.alternatives[0][0] == PatternPart{false, Anchor::Suffix, "Repository"});

  auto combined = must_parse("!BaseRepository&&...Repository");
  REQUIRE(combined.alternatives.size() == 1);
  REQUIRE(combined.alternatives[0].size() == 2);
  CHECK(combined.alternatives[0][0] == PatternPart{true, Anchor::Exact, "BaseRepository"});
  CHECK(combined.alternatives[0][1] == PatternPart{false, Anchor::Suffix, "Repository"});

  auto getters = must_parse("get...||search...||find...");
  REQUIRE(getters.alternatives.size() == 3);
  CHECK(getters.alternatives[1][0] == PatternPart{false, Anchor::Prefix, "search"});

  CHECK(must_parse("...Map...").alternatives[0][0].anchor == Anchor::Contains);
  CHECK(must_parse("!...Map...").alternatives[0][0] == PatternPart{true, Anchor::Contains, "Map"});
}

TEST_CASE("pattern whitespace around operators is ignored") {
  CHECK(must_parse(" get... || find... ") == must_parse("get...||find..."));
  CHECK(must_parse("get...||search...||find...").to_string() == "get...||search...||find...");
}

TEST_CASE("pattern errors") {
  CHECK(parse_pattern("").error->code == "empty-pattern");
  CHECK(parse_pattern("   ").error->code == "empty-pattern");
  CHECK(parse_pattern("a||").error->code == "dangling-operator");
  CHECK(parse_pattern("a&&").error->code == "dangling-operator");
  CHECK(parse_pattern("||a").error->code == "empty-part");
  CHECK(parse_pattern("...").error->code == "empty-part");
  CHECK(parse_pattern("!").error->code == "empty-part");
  CHECK(parse_pattern("a.b").error->code == "illegal-character");
  CHECK(parse_pattern("a-b").error->code == "illegal-character");
  CHECK(parse_pattern("a|b").error->code == "illegal-character");
  auto bad = parse_pattern("get..x");
  REQUIRE(bad.error);
  CHECK(bad.error->span.begin == 3);
}

TEST_CASE("pattern matching examples") {
  CHECK(match_pattern(must_parse("...Repository"), "UserRepository"));
  CHECK(match_pattern(must_parse("BaseRepository"), "BaseRepository"));
  CHECK_FALSE(match_pattern(must_parse("!BaseRepository"), "BaseRepository"));
  CHECK_FALSE(match_pattern(must_parse("get...||find..."), "makeDeposit"));
  // Package-private visibility is the empty string.
  CHECK(match_pattern(must_parse("!public"), ""));
}

TEST_CASE("anchor soundness and single-part negation") {
  std::mt19937 rng(7);
  const std::string alphabet = "abXY_$9";
  auto word = [&](std::size_t min_len) {
    std::uniform_int_distribution<std::size_t> len(min_len, 5);
    std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
    std::string s(len(rng), ' ');
    for (auto& c : s) c = alphabet[pick(rng)];
    return s;
  };
  for (int i = 0; i < 500; ++i) {
    const std::string l = word(1), a = word(0), b = word(0);
    CHECK(match_pattern(must_parse(l + "..."), l + b));
    CHECK(match_pattern(must_parse("..." + l), a + l));
    CHECK(match_pattern(must_parse("..." + l + "..."), a + l + b));
    CHECK(match_pattern(must_parse(l), l));
    for (const auto& form : {l, l + "...", "..." + l, "..." + l + "..."}) {
      const std::string subject = a + b;
      CHECK(match_pattern(must_parse("!" + form), subject) !=
            match_pattern(must_parse(form), subject));
    }
  }
}

TEST_CASE("matching agrees with a regex translation") {
  const std::vector<std::string> patterns = {
      "...Repository", "!BaseRepository", "!BaseRepository&&...Repository",
      "get...||search...||find...", "...Map...&&!...Mapper", "a||b&&...c", "!...e...||x..."};
  const std::vector<std::string> subjects = {
      "", "UserRepository", "BaseRepository", "getName", "Mapper", "findAll",
      "searchX", "Repository", "HashMap", "abc", "c", "xe", "b", "a"};
  for (const auto& p : patterns) {
    const std::regex re(to_regex(p));
    const auto compiled = must_parse(p);
    for (const auto& s : subjects) {
      CHECK_MESSAGE(match_pattern(compiled, s) == std::regex_match(s, re), p << " vs " << s);
    }
  }
}

#include "rulecraft/assist.hpp"

#include <algorithm>
#include <cctype>
#include <json.hpp>

#include "rulecraft/element_kind.hpp"
#include "rulecraft/grammar.hpp"

namespace rulecraft {
namespace detail {
extern const char* const kVocabularyJson;
}

namespace {

// Suggestions list keywords first in this order, then elements alphabetically.
constexpr std::string_view kKeywordOrder[] = {"must", "have", "with", "of", "and", "or",
                                              "superclass", "interface", "(", ")"};

int rank(std::string_view token) {
  for (std::size_t i = 0; i < std::size(kKeywordOrder); ++i) {
    if (kKeywordOrder[i] == token) return static_cast<int>(i);
  }
  if (token == kPatternPlaceholder || token == kExprPlaceholder) {
    return static_cast<int>(std::size(kKeywordOrder));
  }
  return static_cast<int>(std::size(kKeywordOrder)) + 1;
}

void order(std::vector<std::string>& tokens) {
  std::sort(tokens.begin(), tokens.end(), [](const std::string& a, const std::string& b) {
    return std::pair(rank(a), a) < std::pair(rank(b), b);
  });
  tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());
}

Suggestion make_suggestion(const std::string& token, std::size_t replace_begin) {
  Suggestion s{token, {}, {}, replace_begin};
  if (token == kPatternPlaceholder) {
    s.doc = "A quoted name pattern.";
    s.example = "\"get...\"";
  } else if (token == kExprPlaceholder) {
    s.doc = "A quoted Java expression.";
    s.example = "\"0\"";
  } else if (token == "(" || token == ")") {
    s.doc = "Groups conditions.";
    s.example = "name \"a\" and (type \"int\" or type \"long\")";
  } else if (const DocEntry* doc = find_doc(token)) {
    s.doc = doc->description;
    s.example = doc->example;
  }
  return s;
}

bool is_word_char(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }

void add_kinds(std::vector<std::string>& out, std::span<const ElementKind> kinds) {
  for (auto kind : kinds) out.emplace_back(surface_form(kind));
}

// Positional guesses for a prefix the parser rejects: look at the last
// token and offer what usually follows it.
std::vector<std::string> fallback(std::string_view stem) {
  const auto tokens = lex_rule(stem).tokens;
  std::vector<std::string> out;
  if (tokens.empty()) return out;
  auto element_before = [&](std::size_t i) -> std::optional<ElementKind> {
    while (i-- > 0) {
      if (tokens[i].kind == TokenKind::Element) return tokens[i].element;
    }
    return std::nullopt;
  };
  const std::optional<ElementKind> head =
      tokens.front().kind == TokenKind::Element ? std::optional(tokens.front().element) : std::nullopt;
  // The element whose condition list encloses the end of the prefix.
  auto owner = [&]() -> std::optional<ElementKind> {
    int depth = 0;
    for (std::size_t i = tokens.size(); i-- > 0;) {
      switch (tokens[i].kind) {
      case TokenKind::RParen: ++depth; break;
      case TokenKind::LParen: depth = std::max(0, depth - 1); break;
      case TokenKind::With:
        if (depth == 0) return element_before(i);
        break;
      case TokenKind::Have: return head;
      default: break;
      }
    }
    return std::nullopt;
  };

  const Token& last = tokens.back();
  switch (last.kind) {
  case TokenKind::Must: out.emplace_back("have"); break;
  case TokenKind::Have:
    if (head) add_kinds(out, legal_children(*head));
    break;
  case TokenKind::With:
    if (auto kind = element_before(tokens.size() - 1)) add_kinds(out, legal_children(*kind));
    break;
  case TokenKind::Of:
    if (auto kind = element_before(tokens.size() - 1)) add_kinds(out, legal_parents(*kind));
    break;
  case TokenKind::And:
  case TokenKind::Or:
  case TokenKind::LParen:
    if (auto kind = owner()) add_kinds(out, legal_children(*kind));
    out.emplace_back("(");
    break;
  default: break;
  }
  return out;
}

std::vector<std::string> filter_prefix(const std::vector<std::string>& tokens,
                                       std::string_view typed) {
  std::vector<std::string> out;
  for (const auto& t : tokens) {
    if (t.starts_with(typed) && t != typed) out.push_back(t);
  }
  return out;
}

std::optional<std::string_view> keyword_term(TokenKind kind) {
  switch (kind) {
  case TokenKind::Must: return "must";
  case TokenKind::Have: return "have";
  case TokenKind::With: return "with";
  case TokenKind::Of: return "of";
  case TokenKind::And: return "and";
  case TokenKind::Or: return "or";
  case TokenKind::Superclass: return "superclass";
  case TokenKind::Interface: return "interface";
  default: return std::nullopt;
  }
}

} // namespace

const std::vector<DocEntry>& vocabulary() {
  static const std::vector<DocEntry> entries = [] {
    std::vector<DocEntry> out;
    for (const auto& item : nlohmann::json::parse(detail::kVocabularyJson)) {
      out.push_back({item.at("term"), item.at("description"), item.at("example")});
    }
    return out;
  }();
  return entries;
}

const DocEntry* find_doc(std::string_view term) {
  for (const auto& entry : vocabulary()) {
    if (entry.term == term) return &entry;
  }
  return nullptr;
}

std::vector<Suggestion> complete(std::string_view text, std::size_t cursor) {
  const std::string_view prefix = text.substr(0, std::min(cursor, text.size()));
  std::vector<std::string> tokens;
  std::size_t replace_begin = prefix.size();

  const Prediction whole = predict_next(prefix);
  if (whole.inside_literal) return {};
  if (whole.parsed_to_end) {
    tokens = whole.expected;
  } else if (auto guess = fallback(prefix); !guess.empty()) {
    tokens = std::move(guess);
  } else {
    // Treat the trailing one or two words as a partially typed token, so
    // "declaration st" can still complete to "declaration statement".
    std::size_t word = prefix.size();
    while (word > 0 && is_word_char(prefix[word - 1])) --word;
    std::vector<std::size_t> starts;
    if (word < prefix.size()) {
      starts.push_back(word);
      std::size_t space = word;
      while (space > 0 && prefix[space - 1] == ' ') --space;
      std::size_t previous = space;
      while (previous > 0 && is_word_char(prefix[previous - 1])) --previous;
      if (space < word && previous < space) starts.push_back(previous);
    } else {
      starts.push_back(prefix.size());
    }
    for (std::size_t start : starts) {
      const std::string_view stem = prefix.substr(0, start);
      const std::string_view typed = prefix.substr(start);
      const Prediction p = predict_next(stem);
      auto found = filter_prefix(p.parsed_to_end ? p.expected : fallback(stem), typed);
      if (!found.empty()) {
        tokens = std::move(found);
        replace_begin = start;
        break;
      }
    }
  }
  order(tokens);
  std::vector<Suggestion> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(make_suggestion(t, replace_begin));
  return out;
}

std::optional<DocEntry> hover_doc(std::string_view text, std::size_t offset) {
  const auto tokens = lex_rule(text).tokens;
  const Token* hit = nullptr;
  for (const auto& t : tokens) {
    if (t.span.begin <= offset && offset < t.span.end) hit = &t;
  }
  // A cursor resting just after a word still refers to it.
  if (hit == nullptr) {
    for (const auto& t : tokens) {
      if (t.span.end == offset) hit = &t;
    }
  }
  if (hit == nullptr) return std::nullopt;
  std::optional<std::string_view> term;
  if (hit->kind == TokenKind::Element) term = surface_form(hit->element);
  else term = keyword_term(hit->kind);
  if (!term) return std::nullopt;
  if (const DocEntry* doc = find_doc(*term)) return *doc;
  return std::nullopt;
}

std::vector<Diagnostic> lint(std::string_view text) {
  if (std::all_of(text.begin(), text.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); })) {
    return {};
  }
  auto parsed = parse_rule(text);
  for (auto& d : parsed.diagnostics) {
    if (d.code == "incomplete") {
      d.severity = Severity::Warning;
      if (!d.hint) d.hint = d.message;
      d.message = "incomplete rule";
    }
  }
  return parsed.diagnostics;
}

} // namespace rulecraft

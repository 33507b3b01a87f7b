#include "rulecraft/pattern.hpp"

namespace rulecraft {
namespace {

constexpr std::string_view kDots = "...";

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

Diagnostic pattern_error(std::string code, std::string message, std::size_t begin,
                         std::size_t end) {
  return Diagnostic{Severity::Error, std::move(code), std::move(message), {begin, end},
                    std::nullopt};
}

class PatternParser {
public:
  explicit PatternParser(std::string_view text) : text_(text) {}

  PatternParse run() {
    PatternExpr expr;
    std::vector<PatternPart> conjunction;
    skip_space();
    if (pos_ == text_.size()) {
      return fail(pattern_error("empty-pattern", "pattern is empty", 0, text_.size()));
    }
    while (true) {
      auto part = parse_part();
      if (!part) return fail(std::move(*error_));
      conjunction.push_back(std::move(*part));
      skip_space();
      if (pos_ == text_.size()) break;
      if (text_.substr(pos_, 2) == "&&") {
        pos_ += 2;
      } else if (text_.substr(pos_, 2) == "||") {
        pos_ += 2;
        expr.alternatives.push_back(std::move(conjunction));
        conjunction.clear();
      } else {
        return fail(pattern_error("illegal-character",
                                  "unexpected '" + std::string(1, text_[pos_]) +
                                      "' in pattern",
                                  pos_, pos_ + 1));
      }
      skip_space();
      if (pos_ == text_.size()) {
        return fail(pattern_error("dangling-operator", "pattern ends with an operator",
                                  pos_ - 2, pos_));
      }
    }
    expr.alternatives.push_back(std::move(conjunction));
    return PatternParse{std::move(expr), std::nullopt};
  }

private:
  std::optional<PatternPart> parse_part() {
    PatternPart part;
    const std::size_t start = pos_;
    if (pos_ < text_.size() && text_[pos_] == '!') {
      part.negated = true;
      ++pos_;
    }
    bool leading = false;
    if (text_.substr(pos_, 3) == kDots) {
      leading = true;
      pos_ += 3;
    }
    const std::size_t literal_begin = pos_;
    while (pos_ < text_.size() && is_identifier_char(text_[pos_])) ++pos_;
    part.literal = std::string(text_.substr(literal_begin, pos_ - literal_begin));
    bool trailing = false;
    if (text_.substr(pos_, 3) == kDots) {
      trailing = true;
      pos_ += 3;
    }
    if (part.literal.empty()) {
      if (pos_ < text_.size() && !is_operator_start() && !is_space(text_[pos_])) {
        error_ = pattern_error("illegal-character",
                               "'" + std::string(1, text_[pos_]) +
                                   "' is not an identifier character",
                               pos_, pos_ + 1);
      } else {
        error_ = pattern_error("empty-part", "pattern part has no characters", start,
                               pos_);
      }
      return std::nullopt;
    }
    if (pos_ < text_.size() && !is_operator_start() && !is_space(text_[pos_])) {
      error_ = pattern_error("illegal-character",
                             "'" + std::string(1, text_[pos_]) +
                                 "' is not an identifier character",
                             pos_, pos_ + 1);
      return std::nullopt;
    }
    if (leading && trailing) {
      part.anchor = Anchor::Contains;
    } else if (leading) {
      part.anchor = Anchor::Suffix;
    } else if (trailing) {
      part.anchor = Anchor::Prefix;
    } else {
      part.anchor = Anchor::Exact;
    }
    return part;
  }

  bool is_operator_start() const {
    auto rest = text_.substr(pos_, 2);
    return rest == "&&" || rest == "||";
  }

  void skip_space() {
    while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
  }

  PatternParse fail(Diagnostic d) { return PatternParse{std::nullopt, std::move(d)}; }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::optional<Diagnostic> error_;
};

} // namespace

bool is_identifier_char(char c) {
  const auto u = static_cast<unsigned char>(c);
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
         c == '_' || c == '$' || u >= 0x80;
}

bool PatternPart::matches(std::string_view subject) const {
  bool hit = false;
  switch (anchor) {
  case Anchor::Exact: hit = subject == literal; break;
  case Anchor::Prefix: hit = subject.starts_with(literal); break;
  case Anchor::Suffix: hit = subject.ends_with(literal); break;
  case Anchor::Contains: hit = subject.find(literal) != std::string_view::npos; break;
  }
  return hit != negated;
}

bool PatternExpr::matches(std::string_view subject) const {
  for (const auto& conjunction : alternatives) {
    bool all = true;
    for (const auto& part : conjunction) {
      if (!part.matches(subject)) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

std::string PatternExpr::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < alternatives.size(); ++i) {
    if (i > 0) out += "||";
    for (std::size_t j = 0; j < alternatives[i].size(); ++j) {
      const auto& part = alternatives[i][j];
      if (j > 0) out += "&&";
      if (part.negated) out += '!';
      if (part.anchor == Anchor::Suffix || part.anchor == Anchor::Contains) out += kDots;
      out += part.literal;
      if (part.anchor == Anchor::Prefix || part.anchor == Anchor::Contains) out += kDots;
    }
  }
  return out;
}

PatternParse parse_pattern(std::string_view text) { return PatternParser(text).run(); }

} // namespace rulecraft

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace rulecraft {

// Half-open byte range [begin, end) into the text a diagnostic refers to.
struct TextSpan {
  std::size_t begin = 0;
  std::size_t end = 0;

  bool operator==(const TextSpan&) const = default;
};

enum class Severity { Error, Warning };

struct Diagnostic {
  Severity severity = Severity::Error;
  // Short machine-readable category, e.g. "duplicate-must", "incomplete".
  std::string code;
  std::string message;
  TextSpan span;
  std::optional<std::string> hint;
};

inline bool has_errors(const std::vector<Diagnostic>& diagnostics) {
  for (const auto& d : diagnostics) {
    if (d.severity == Severity::Error) return true;
  }
  return false;
}

const char* severity_name(Severity severity);

} // namespace rulecraft

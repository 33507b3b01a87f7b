#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rulecraft/diagnostic.hpp"

namespace rulecraft {

struct DocEntry {
  std::string term;
  std::string description;
  std::string example;
};

struct Suggestion {
  std::string token; // keyword, element, "(", ")" or a literal placeholder
  std::string doc;
  std::string example;
  std::size_t replace_begin = 0; // the token replaces text[replace_begin, cursor)
};

// Built-in table from data/vocabulary.json: one entry per keyword and per
// element kind.
const std::vector<DocEntry>& vocabulary();
const DocEntry* find_doc(std::string_view term);

// Tokens that may come next at `cursor` (byte offset). A partially typed
// word before the cursor filters the list and is what the token replaces.
std::vector<Suggestion> complete(std::string_view text, std::size_t cursor);

// Documentation for the keyword or element under `offset`, if any.
std::optional<DocEntry> hover_doc(std::string_view text, std::size_t offset);

// Grammar diagnostics for editor display. An unfinished rule is a warning.
std::vector<Diagnostic> lint(std::string_view text);

} // namespace rulecraft

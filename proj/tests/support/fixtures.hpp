#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rulecraft/java/parser.hpp"

namespace rulecraft::testing {

inline std::filesystem::path fixture_dir() { return RULECRAFT_FIXTURES; }

inline std::filesystem::path bank_dir() { return fixture_dir() / "bank"; }

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Parsed trees of every .java file under `root`, paths relative to `root`,
// sorted by path.
inline std::vector<java::CodeTree> load_corpus(const std::filesystem::path& root) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(root)) {
    if (entry.is_regular_file() && entry.path().extension() == ".java") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<java::CodeTree> trees;
  for (const auto& file : files) {
    auto parsed = java::parse_java(read_file(file),
                                   std::filesystem::relative(file, root).generic_string());
    if (!parsed.tree) throw std::runtime_error("fixture does not parse: " + file.string());
    trees.push_back(std::move(*parsed.tree));
  }
  return trees;
}

} // namespace rulecraft::testing

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rulecraft/java/code_tree.hpp"
#include "rulecraft/query.hpp"

namespace rulecraft {

// Which files a rule applies to. An entry containing '*' or '?' is a glob
// ('*' stays within a path segment, '**' spans segments); any other entry is
// a path prefix. No entries means every file.
class FileFilter {
public:
  FileFilter() = default;
  // Normalizes separators and a leading "./"; throws std::invalid_argument
  // for absolute paths.
  explicit FileFilter(std::vector<std::string> include);

  bool accepts(std::string_view path) const;
  bool empty() const { return include_.empty(); }
  const std::vector<std::string>& include() const { return include_; }

private:
  std::vector<std::string> include_;
};

bool glob_match(std::string_view pattern, std::string_view path);

enum class MatchStatus { Satisfied, Violated };

struct MatchRecord {
  std::string file;
  java::SourceSpan span;
  std::string snippet;
  MatchStatus status = MatchStatus::Satisfied;
};

struct EvalResult {
  std::vector<MatchRecord> satisfied;
  std::vector<MatchRecord> violated;
  std::size_t files_considered = 0;
  bool filter_matched_zero = false;
};

// Nodes of `q.target` in `tree` that satisfy the query, in source order.
std::vector<java::NodeId> select_nodes(const NodeQuery& q, const java::CodeTree& tree);

// Whether node `id` satisfies `q` (kind, condition and owner chain).
bool node_matches(const NodeQuery& q, const java::CodeTree& tree, java::NodeId id);

// Files are evaluated in parallel; results are sorted by file, then position.
EvalResult evaluate(const QueryPair& pair, const std::vector<java::CodeTree>& corpus,
                    const FileFilter& filter = {});

// Single-threaded reference with identical output.
EvalResult evaluate_serial(const QueryPair& pair, const std::vector<java::CodeTree>& corpus,
                           const FileFilter& filter = {});

} // namespace rulecraft

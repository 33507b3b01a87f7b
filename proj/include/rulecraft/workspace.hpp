#pragma once

#include <chrono>
#include <filesystem>
#include <json.hpp>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rulecraft/diagnostic.hpp"
#include "rulecraft/evaluator.hpp"
#include "rulecraft/java/code_tree.hpp"

namespace rulecraft {

// ---- ruleset file, see docs/ruleset-format.md

inline constexpr int kRulesetSchemaVersion = 1;
inline constexpr const char* kDefaultRulesetName = "rulecraft-rules.json";

struct RuleRecord {
  std::string id;
  std::string title;
  std::string description;
  std::vector<std::string> tags;
  std::vector<std::string> file_filter;
  std::string rule_text;
  std::optional<nlohmann::json> model; // editor snapshot, see docs/model-format.md
  nlohmann::json extra = nlohmann::json::object(); // fields this version does not know
  // Parse diagnostics for `rule_text`, filled in on load; never written.
  std::vector<Diagnostic> diagnostics;
};

struct Ruleset {
  std::vector<RuleRecord> rules;
  nlohmann::json extra = nlohmann::json::object();
};

// Malformed ruleset. `records` lists the indices of offending entries; it is
// empty when the file as a whole is unreadable.
class RulesetError : public std::runtime_error {
public:
  RulesetError(const std::string& message, std::vector<std::size_t> records = {})
      : std::runtime_error(message), records_(std::move(records)) {}
  const std::vector<std::size_t>& records() const { return records_; }

private:
  std::vector<std::size_t> records_;
};

// Blank text is an empty ruleset. A top-level array is accepted as a bare
// list of records.
Ruleset parse_ruleset(std::string_view text);
std::string serialize_ruleset(const Ruleset& ruleset);
Ruleset load_ruleset(const std::filesystem::path& path);
// Writes through a temporary file and a rename.
void save_ruleset(const std::filesystem::path& path, const Ruleset& ruleset);

nlohmann::json record_to_json(const RuleRecord& record);
// Throws RulesetError (with no indices) for a structurally bad record.
RuleRecord record_from_json(const nlohmann::json& j);

// ---- project index

class WorkspaceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct IndexedFile {
  std::string path; // relative to the root, forward slashes
  std::string hash; // hex SHA-256 of the content; empty if unreadable
  std::optional<std::size_t> tree; // index into ProjectIndex::trees
  std::optional<std::string> error; // unreadable or unparseable
  std::vector<std::string> warnings;
};

struct ProjectIndex {
  std::filesystem::path root;
  std::vector<IndexedFile> files; // sorted by path
  std::vector<java::CodeTree> trees; // parsed files, in path order
  std::chrono::system_clock::time_point built_at;
  std::size_t reused = 0; // entries taken over from the previous index

  std::size_t parse_errors() const;
};

// Walks `root` for files with the given extensions, skipping directories
// whose names start with '.'. Files whose hash is unchanged since
// `previous` keep their trees; the rest are parsed in parallel.
ProjectIndex scan_project(const std::filesystem::path& root,
                          const std::vector<std::string>& extensions = {".java"},
                          const ProjectIndex* previous = nullptr);

// Same result on one thread; kept as the reference for tests.
ProjectIndex scan_project_serial(const std::filesystem::path& root,
                                 const std::vector<std::string>& extensions = {".java"},
                                 const ProjectIndex* previous = nullptr);

// ---- checking

enum class RuleStatus { Evaluated, Skipped };

struct RuleOutcome {
  RuleStatus status = RuleStatus::Evaluated;
  std::string rule_text; // canonical when the rule parsed
  std::vector<Diagnostic> diagnostics;
  EvalResult result;
};

// Parses, compiles and evaluates one rule. Rules with error diagnostics or
// an invalid filter are skipped.
RuleOutcome check_rule(const ProjectIndex& index, std::string_view rule_text,
                       const std::vector<std::string>& file_filter);

std::map<std::string, RuleOutcome> check_all(const ProjectIndex& index, const Ruleset& ruleset);

// Evaluation report shared by the CLI and the service, see docs/wire-format.md.
nlohmann::json report_json(const std::optional<std::string>& rule_id, const RuleOutcome& outcome);
std::string report_text(const std::string& rule_id, const RuleOutcome& outcome);

nlohmann::json diagnostic_json(const Diagnostic& d);

} // namespace rulecraft

#include "rulecraft/workspace.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "rulecraft/grammar.hpp"
#include "rulecraft/java/parser.hpp"
#include "rulecraft/query.hpp"

namespace fs = std::filesystem;

namespace rulecraft {
namespace {

const std::set<std::string> kRecordFields = {"id",       "title",    "description", "tags",
                                             "fileFilter", "ruleText", "model"};

std::vector<std::string> string_list(const nlohmann::json& j, const char* field) {
  if (!j.contains(field)) return {};
  const auto& v = j[field];
  if (!v.is_array()) throw RulesetError(std::string("'") + field + "' must be a list of strings");
  std::vector<std::string> out;
  for (const auto& item : v) {
    if (!item.is_string()) throw RulesetError(std::string("'") + field + "' must be a list of strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

std::string optional_string(const nlohmann::json& j, const char* field) {
  if (!j.contains(field)) return {};
  if (!j[field].is_string()) throw RulesetError(std::string("'") + field + "' must be a string");
  return j[field].get<std::string>();
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw std::runtime_error("cannot read " + path.string());
  return buffer.str();
}

nlohmann::json match_json(const MatchRecord& m) {
  return {{"file", m.file},
          {"line", m.span.start_line},
          {"column", m.span.start_col},
          {"endLine", m.span.end_line},
          {"endColumn", m.span.end_col},
          {"snippet", m.snippet}};
}

std::string first_line(std::string_view text) {
  const auto nl = text.find('\n');
  std::string line(text.substr(0, nl));
  if (nl != std::string_view::npos) line += " ...";
  return line;
}

} // namespace

// ---- ruleset

nlohmann::json record_to_json(const RuleRecord& r) {
  nlohmann::json j = r.extra.is_object() ? r.extra : nlohmann::json::object();
  j["id"] = r.id;
  j["title"] = r.title;
  j["description"] = r.description;
  j["tags"] = r.tags;
  j["fileFilter"] = r.file_filter;
  j["ruleText"] = r.rule_text;
  if (r.model) j["model"] = *r.model;
  return j;
}

RuleRecord record_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw RulesetError("record is not an object");
  if (!j.contains("id") || !j["id"].is_string() || j["id"].get<std::string>().empty()) {
    throw RulesetError("record has no id");
  }
  if (!j.contains("ruleText") || !j["ruleText"].is_string()) {
    throw RulesetError("record has no ruleText");
  }
  RuleRecord r;
  r.id = j["id"].get<std::string>();
  r.title = optional_string(j, "title");
  r.description = optional_string(j, "description");
  r.tags = string_list(j, "tags");
  r.file_filter = string_list(j, "fileFilter");
  r.rule_text = j["ruleText"].get<std::string>();
  if (j.contains("model") && !j["model"].is_null()) {
    if (!j["model"].is_object()) throw RulesetError("'model' must be an object");
    r.model = j["model"];
  }
  for (const auto& [key, value] : j.items()) {
    if (!kRecordFields.count(key)) r.extra[key] = value;
  }
  r.diagnostics = parse_rule(r.rule_text).diagnostics;
  return r;
}

Ruleset parse_ruleset(std::string_view text) {
  if (std::all_of(text.begin(), text.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); })) {
    return {};
  }
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw RulesetError(std::string("ruleset is not valid JSON: ") + e.what());
  }
  Ruleset out;
  const nlohmann::json* records = &doc;
  if (doc.is_object()) {
    const int version = doc.value("schemaVersion", kRulesetSchemaVersion);
    if (version != kRulesetSchemaVersion) {
      throw RulesetError("unsupported ruleset schemaVersion " + std::to_string(version));
    }
    if (!doc.contains("rules") || !doc["rules"].is_array()) throw RulesetError("ruleset has no 'rules' list");
    records = &doc["rules"];
    for (const auto& [key, value] : doc.items()) {
      if (key != "schemaVersion" && key != "rules") out.extra[key] = value;
    }
  } else if (!doc.is_array()) {
    throw RulesetError("ruleset must be an object or a list of records");
  }

  std::vector<std::size_t> bad;
  std::vector<std::string> reasons;
  std::set<std::string> ids;
  for (std::size_t i = 0; i < records->size(); ++i) {
    try {
      RuleRecord r = record_from_json((*records)[i]);
      if (!ids.insert(r.id).second) throw RulesetError("duplicate id '" + r.id + "'");
      out.rules.push_back(std::move(r));
    } catch (const RulesetError& e) {
      bad.push_back(i);
      reasons.push_back("record " + std::to_string(i) + ": " + e.what());
    }
  }
  if (!bad.empty()) {
    std::string message = "malformed ruleset";
    for (const auto& r : reasons) message += "; " + r;
    throw RulesetError(message, std::move(bad));
  }
  return out;
}

std::string serialize_ruleset(const Ruleset& ruleset) {
  nlohmann::json doc = ruleset.extra.is_object() ? ruleset.extra : nlohmann::json::object();
  doc["schemaVersion"] = kRulesetSchemaVersion;
  doc["rules"] = nlohmann::json::array();
  for (const auto& r : ruleset.rules) doc["rules"].push_back(record_to_json(r));
  return doc.dump(2) + "\n";
}

Ruleset load_ruleset(const fs::path& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const std::runtime_error& e) {
    throw RulesetError(e.what());
  }
  return parse_ruleset(text);
}

void save_ruleset(const fs::path& path, const Ruleset& ruleset) {
  const std::string text = serialize_ruleset(ruleset);
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw RulesetError("cannot write " + tmp.string());
    out << text;
    if (!out.flush()) throw RulesetError("cannot write " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw RulesetError("cannot replace " + path.string() + ": " + ec.message());
}

// ---- project index

std::size_t ProjectIndex::parse_errors() const {
  return static_cast<std::size_t>(
      std::count_if(files.begin(), files.end(), [](const IndexedFile& f) { return f.error.has_value(); }));
}

namespace {

ProjectIndex scan(const fs::path& root, const std::vector<std::string>& extensions,
                  const ProjectIndex* previous, bool parallel) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) throw WorkspaceError("project root is not a directory: " + root.string());

  std::vector<std::string> paths;
  fs::recursive_directory_iterator it(root, fs::directory_options::skip_permission_denied, ec);
  if (ec) throw WorkspaceError("cannot read project root " + root.string() + ": " + ec.message());
  for (; it != fs::recursive_directory_iterator(); it.increment(ec)) {
    if (ec) throw WorkspaceError("cannot walk " + root.string() + ": " + ec.message());
    const fs::directory_entry& entry = *it;
    const std::string name = entry.path().filename().string();
    if (entry.is_directory(ec)) {
      if (name.starts_with('.')) it.disable_recursion_pending();
      continue;
    }
    if (!entry.is_regular_file(ec)) continue;
    const std::string ext = entry.path().extension().string();
    if (std::find(extensions.begin(), extensions.end(), ext) == extensions.end()) continue;
    paths.push_back(fs::relative(entry.path(), root).generic_string());
  }
  std::sort(paths.begin(), paths.end());

  ProjectIndex index;
  index.root = root;
  index.files.resize(paths.size());
  std::vector<std::optional<java::CodeTree>> trees(paths.size());
  std::vector<std::string> sources(paths.size());

  std::map<std::string, const IndexedFile*> old;
  if (previous != nullptr) {
    for (const auto& f : previous->files) old[f.path] = &f;
  }

  std::vector<std::size_t> to_parse;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    IndexedFile& f = index.files[i];
    f.path = paths[i];
    try {
      sources[i] = read_file(root / paths[i]);
    } catch (const std::runtime_error& e) {
      f.error = e.what();
      continue;
    }
    f.hash = java::sha256_hex(sources[i]);
    auto hit = old.find(f.path);
    if (hit != old.end() && hit->second->hash == f.hash) {
      const IndexedFile& prior = *hit->second;
      f.error = prior.error;
      f.warnings = prior.warnings;
      if (prior.tree) trees[i] = previous->trees[*prior.tree];
      ++index.reused;
      continue;
    }
    to_parse.push_back(i);
  }

#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::size_t k = 0; k < to_parse.size(); ++k) {
    const std::size_t i = to_parse[k];
    IndexedFile& f = index.files[i];
    java::JavaParse parsed = java::parse_java(sources[i], f.path);
    for (const auto& w : parsed.warnings) f.warnings.push_back(w.message);
    if (parsed.error) {
      f.error = std::to_string(parsed.error->span.start_line) + ":" +
                std::to_string(parsed.error->span.start_col) + ": " + parsed.error->message;
    } else {
      trees[i] = std::move(parsed.tree);
    }
  }

  for (std::size_t i = 0; i < paths.size(); ++i) {
    if (!trees[i]) continue;
    index.files[i].tree = index.trees.size();
    index.trees.push_back(std::move(*trees[i]));
  }
  index.built_at = std::chrono::system_clock::now();
  return index;
}

} // namespace

ProjectIndex scan_project(const fs::path& root, const std::vector<std::string>& extensions,
                          const ProjectIndex* previous) {
  return scan(root, extensions, previous, true);
}

ProjectIndex scan_project_serial(const fs::path& root, const std::vector<std::string>& extensions,
                                 const ProjectIndex* previous) {
  return scan(root, extensions, previous, false);
}

// ---- checking

RuleOutcome check_rule(const ProjectIndex& index, std::string_view rule_text,
                       const std::vector<std::string>& file_filter) {
  RuleOutcome out;
  auto parsed = parse_rule(rule_text);
  out.diagnostics = parsed.diagnostics;
  if (!parsed.rule || has_errors(parsed.diagnostics)) {
    out.status = RuleStatus::Skipped;
    out.rule_text = std::string(rule_text);
    return out;
  }
  out.rule_text = render_rule(*parsed.rule);
  FileFilter filter;
  try {
    filter = FileFilter(file_filter);
  } catch (const std::invalid_argument& e) {
    out.status = RuleStatus::Skipped;
    out.diagnostics.push_back({Severity::Error, "bad-filter", e.what(), {}, std::nullopt});
    return out;
  }
  out.result = evaluate(compile(*parsed.rule), index.trees, filter);
  // Unparseable files matching the filter still count as covered by it.
  if (out.result.filter_matched_zero) {
    for (const auto& f : index.files) {
      if (f.error && filter.accepts(f.path)) {
        out.result.filter_matched_zero = false;
        break;
      }
    }
  }
  if (out.result.filter_matched_zero) {
    out.diagnostics.push_back({Severity::Warning, "filter-matched-zero",
                               "the file filter matches no file in the project", {}, std::nullopt});
  }
  return out;
}

std::map<std::string, RuleOutcome> check_all(const ProjectIndex& index, const Ruleset& ruleset) {
  std::map<std::string, RuleOutcome> out;
  for (const auto& r : ruleset.rules) out[r.id] = check_rule(index, r.rule_text, r.file_filter);
  return out;
}

nlohmann::json diagnostic_json(const Diagnostic& d) {
  nlohmann::json j = {{"severity", severity_name(d.severity)},
                      {"code", d.code},
                      {"message", d.message},
                      {"span", {{"begin", d.span.begin}, {"end", d.span.end}}}};
  if (d.hint) j["hint"] = *d.hint;
  return j;
}

nlohmann::json report_json(const std::optional<std::string>& rule_id, const RuleOutcome& outcome) {
  nlohmann::json j;
  j["ruleId"] = rule_id ? nlohmann::json(*rule_id) : nlohmann::json(nullptr);
  j["ruleText"] = outcome.rule_text;
  j["status"] = outcome.status == RuleStatus::Evaluated ? "evaluated" : "skipped";
  j["diagnostics"] = nlohmann::json::array();
  for (const auto& d : outcome.diagnostics) j["diagnostics"].push_back(diagnostic_json(d));
  j["filesConsidered"] = outcome.result.files_considered;
  j["filterMatchedZero"] = outcome.result.filter_matched_zero;
  j["satisfied"] = nlohmann::json::array();
  for (const auto& m : outcome.result.satisfied) j["satisfied"].push_back(match_json(m));
  j["violated"] = nlohmann::json::array();
  for (const auto& m : outcome.result.violated) j["violated"].push_back(match_json(m));
  return j;
}

std::string report_text(const std::string& rule_id, const RuleOutcome& outcome) {
  std::ostringstream out;
  if (outcome.status == RuleStatus::Skipped) {
    out << rule_id << ": skipped\n";
    for (const auto& d : outcome.diagnostics) out << "  " << severity_name(d.severity) << ": " << d.message << "\n";
    return out.str();
  }
  const auto& r = outcome.result;
  out << rule_id << ": " << r.satisfied.size() << " satisfied, " << r.violated.size() << " violated ("
      << r.files_considered << (r.files_considered == 1 ? " file" : " files") << ")\n";
  for (const auto& d : outcome.diagnostics) out << "  " << severity_name(d.severity) << ": " << d.message << "\n";
  for (const auto& m : r.violated) {
    out << "  " << m.file << ":" << m.span.start_line << ":" << m.span.start_col << ": "
        << first_line(m.snippet) << "\n";
  }
  return out.str();
}

} // namespace rulecraft

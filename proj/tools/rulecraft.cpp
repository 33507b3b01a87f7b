// Command-line front end: check, explain, complete, fmt, export-xml, serve.

#include <CLI11.hpp>
#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "rulecraft/assist.hpp"
#include "rulecraft/grammar.hpp"
#include "rulecraft/java/parser.hpp"
#include "rulecraft/java/xml_export.hpp"
#include "rulecraft/query.hpp"
#include "rulecraft/service.hpp"
#include "rulecraft/workspace.hpp"

namespace fs = std::filesystem;
using namespace rulecraft;

namespace {

constexpr int kExitViolations = 1;
constexpr int kExitError = 2;

Service* g_service = nullptr;

std::string default_project() {
  const char* env = std::getenv("RULECRAFT_PROJECT");
  return env != nullptr && *env != '\0' ? env : ".";
}

void print_diagnostics(std::string_view text, const std::vector<Diagnostic>& diagnostics) {
  for (const auto& d : diagnostics) {
    std::cerr << severity_name(d.severity) << ": " << d.message << " (" << d.code << ") at "
              << d.span.begin << "\n";
    std::cerr << "  " << text << "\n  " << std::string(d.span.begin, ' ')
              << std::string(std::max<std::size_t>(1, d.span.end - d.span.begin), '^') << "\n";
    if (d.hint) std::cerr << "  hint: " << *d.hint << "\n";
  }
}

int run_check(const std::string& project, std::string rules_path, const std::string& rule_id,
              const std::string& format, bool fail_on_violation) {
  if (rules_path.empty()) rules_path = (fs::path(project) / kDefaultRulesetName).string();
  Ruleset ruleset;
  ProjectIndex index;
  try {
    ruleset = load_ruleset(rules_path);
    index = scan_project(project);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  if (!rule_id.empty()) {
    std::erase_if(ruleset.rules, [&](const RuleRecord& r) { return r.id != rule_id; });
    if (ruleset.rules.empty()) {
      std::cerr << "error: no rule '" << rule_id << "' in " << rules_path << "\n";
      return kExitError;
    }
  }
  for (const auto& f : index.files) {
    if (f.error) std::cerr << "warning: " << f.path << ": " << *f.error << "\n";
  }
  bool violations = false;
  nlohmann::json reports = nlohmann::json::array();
  for (const auto& r : ruleset.rules) {
    const RuleOutcome outcome = check_rule(index, r.rule_text, r.file_filter);
    violations = violations || !outcome.result.violated.empty();
    if (format == "json") {
      reports.push_back(report_json(r.id, outcome));
    } else {
      std::cout << report_text(r.id, outcome);
    }
  }
  if (format == "json") {
    // A single rule prints the same document the evaluate endpoint returns.
    std::cout << (rule_id.empty() ? reports.dump(2) : reports[0].dump(2)) << "\n";
  }
  return fail_on_violation && violations ? kExitViolations : 0;
}

int run_explain(const std::string& text) {
  auto parsed = parse_rule(text);
  if (!parsed.rule || has_errors(parsed.diagnostics)) {
    print_diagnostics(text, parsed.diagnostics);
    return kExitError;
  }
  const QueryPair pair = compile(*parsed.rule);
  std::cout << "canonical:  " << render_rule(*parsed.rule) << "\n\n";
  std::cout << "ast:\n" << dump(*parsed.rule) << "\n";
  std::cout << "element of interest: " << kind_id(pair.eoi_kind) << "\n";
  std::cout << "quantifier: " << describe(pair.quantifier) << "\n";
  std::cout << "constraint: " << describe(pair.constraint) << "\n\n";
  std::cout << "quantifier xpath: " << render_xpath(pair.quantifier) << "\n";
  std::cout << "constraint xpath: " << render_xpath(pair.constraint) << "\n";
  return 0;
}

int run_complete(const std::string& text, std::optional<std::size_t> cursor, const std::string& format) {
  const auto suggestions = complete(text, cursor.value_or(text.size()));
  if (format == "json") {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& s : suggestions) {
      out.push_back({{"token", s.token}, {"doc", s.doc}, {"example", s.example}, {"replaceBegin", s.replace_begin}});
    }
    std::cout << out.dump(2) << "\n";
  } else {
    for (const auto& s : suggestions) std::cout << s.token << "\n";
  }
  return 0;
}

int run_fmt(const std::string& text) {
  auto parsed = parse_rule(text);
  print_diagnostics(text, parsed.diagnostics);
  if (!parsed.rule || has_errors(parsed.diagnostics)) return kExitError;
  std::cout << render_rule(*parsed.rule) << "\n";
  return 0;
}

int run_export(const std::string& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot read " << file << "\n";
    return kExitError;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  auto parsed = java::parse_java(buffer.str(), fs::path(file).generic_string());
  for (const auto& w : parsed.warnings) std::cerr << "warning: " << file << ":" << w.span.start_line << ": " << w.message << "\n";
  if (parsed.error) {
    std::cerr << "error: " << file << ":" << parsed.error->span.start_line << ":" << parsed.error->span.start_col
              << ": " << parsed.error->message << "\n";
    return kExitError;
  }
  std::cout << java::export_xml(*parsed.tree);
  return 0;
}

int run_serve(const std::string& project, std::string rules_path, const std::string& host, int port) {
  if (rules_path.empty()) rules_path = (fs::path(project) / kDefaultRulesetName).string();
  try {
    Service service(project, rules_path);
    const int bound = service.bind(host, port);
    if (bound < 0) {
      std::cerr << "error: cannot listen on " << host << ":" << port << "\n";
      return kExitError;
    }
    g_service = &service;
    std::signal(SIGINT, [](int) {
      if (g_service != nullptr) g_service->stop();
    });
    std::signal(SIGTERM, [](int) {
      if (g_service != nullptr) g_service->stop();
    });
    std::cerr << "serving " << project << " on http://" << host << ":" << bound << "\n";
    std::cout.flush();
    service.run();
    g_service = nullptr;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Design-rule checker for Java projects"};
  app.require_subcommand(1);

  std::string project = default_project();
  std::string rules_path;
  std::string rule_id;
  std::string format = "text";
  bool fail_on_violation = false;
  auto* check = app.add_subcommand("check", "Check a project against a ruleset");
  check->add_option("--project", project, "Project root (default: $RULECRAFT_PROJECT or .)");
  check->add_option("--rules", rules_path, "Ruleset file (default: <project>/rulecraft-rules.json)");
  check->add_option("--rule", rule_id, "Check only this rule id");
  check->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  check->add_flag("--fail-on-violation", fail_on_violation, "Exit with status 1 if any rule is violated");

  std::string text;
  auto* explain = app.add_subcommand("explain", "Show how a rule is parsed and compiled");
  explain->add_option("rule", text, "Rule text")->required();

  std::optional<std::size_t> cursor;
  std::string complete_format = "text";
  auto* complete_cmd = app.add_subcommand("complete", "List tokens that may follow the cursor");
  complete_cmd->add_option("--text", text, "Rule text")->required();
  complete_cmd->add_option("--cursor", cursor, "Byte offset (default: end of text)");
  complete_cmd->add_option("--format", complete_format, "Output format")->check(CLI::IsMember({"text", "json"}));

  auto* fmt = app.add_subcommand("fmt", "Print the canonical form of a rule");
  fmt->add_option("rule", text, "Rule text")->required();

  std::string java_file;
  auto* export_xml = app.add_subcommand("export-xml", "Print the XML form of a Java file");
  export_xml->add_option("file", java_file, "Java source file")->required()->check(CLI::ExistingFile);

  std::string host = "127.0.0.1";
  int port = 8080;
  auto* serve = app.add_subcommand("serve", "Run the HTTP service");
  serve->add_option("--port", port, "Port (0 picks a free one)");
  serve->add_option("--host", host, "Interface to bind");
  serve->add_option("--project", project, "Project root (default: $RULECRAFT_PROJECT or .)");
  serve->add_option("--rules", rules_path, "Ruleset file (default: <project>/rulecraft-rules.json)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  if (*check) return run_check(project, rules_path, rule_id, format, fail_on_violation);
  if (*explain) return run_explain(text);
  if (*complete_cmd) return run_complete(text, cursor, complete_format);
  if (*fmt) return run_fmt(text);
  if (*export_xml) return run_export(java_file);
  if (*serve) return run_serve(project, rules_path, host, port);
  return kExitError;
}

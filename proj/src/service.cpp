#include "rulecraft/service.hpp"

#include <condition_variable>
#include <deque>
#include <httplib.h>
#include <mutex>
#include <shared_mutex>

#include "rulecraft/assist.hpp"
#include "rulecraft/grammar.hpp"
#include "rulecraft/model.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace rulecraft {
namespace {

constexpr std::size_t kEventBacklog = 256;

struct HttpError {
  int status;
  std::string code;
  std::string message;
};

ServiceResponse reply(int status, const json& body) { return {status, body.dump(2), "application/json"}; }

ServiceResponse error_reply(int status, const std::string& code, const std::string& message,
                            json extra = json::object()) {
  extra["error"] = {{"code", code}, {"message", message}};
  return reply(status, extra);
}

json parse_body(std::string_view body) {
  try {
    json j = json::parse(body);
    if (!j.is_object()) throw HttpError{400, "bad-request", "request body must be a JSON object"};
    return j;
  } catch (const json::parse_error& e) {
    throw HttpError{400, "bad-request", std::string("request body is not valid JSON: ") + e.what()};
  }
}

std::string require_string(const json& j, const char* field) {
  if (!j.contains(field) || !j[field].is_string()) {
    throw HttpError{400, "bad-request", std::string("'") + field + "' must be a string"};
  }
  return j[field].get<std::string>();
}

std::size_t require_offset(const json& j, const char* field) {
  if (!j.contains(field) || !j[field].is_number_unsigned()) {
    throw HttpError{400, "bad-request", std::string("'") + field + "' must be a non-negative integer"};
  }
  return j[field].get<std::size_t>();
}

json diagnostics_json(const std::vector<Diagnostic>& ds) {
  json out = json::array();
  for (const auto& d : ds) out.push_back(diagnostic_json(d));
  return out;
}

json guide_json(const GuideState& g) {
  return {{"current", g.current}, {"quantifierDone", g.quantifier_done}, {"constraintDone", g.constraint_done}};
}

std::vector<std::string> split_path(std::string_view path) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < path.size()) {
    while (i < path.size() && path[i] == '/') ++i;
    std::size_t j = i;
    while (j < path.size() && path[j] != '/') ++j;
    if (j > i) out.emplace_back(path.substr(i, j - i));
    i = j;
  }
  return out;
}

} // namespace

struct Service::Impl {
  fs::path root;
  fs::path ruleset_path;

  mutable std::mutex index_mutex;
  std::shared_ptr<const ProjectIndex> index;
  std::mutex rescan_mutex;

  mutable std::shared_mutex rules_mutex;
  Ruleset ruleset;

  mutable std::mutex event_mutex;
  mutable std::condition_variable event_cv;
  std::deque<ServiceEvent> events;
  std::uint64_t next_seq = 1;
  bool stopping = false;

  // Report per rule id from the last rescan, to detect changes.
  std::map<std::string, std::string> last_reports;

  std::unique_ptr<httplib::Server> server;

  std::shared_ptr<const ProjectIndex> snapshot() const {
    std::lock_guard lock(index_mutex);
    return index;
  }

  void publish(const std::string& type, json data) {
    {
      std::lock_guard lock(event_mutex);
      data["seq"] = next_seq;
      events.push_back({next_seq, type, data.dump()});
      ++next_seq;
      while (events.size() > kEventBacklog) events.pop_front();
    }
    event_cv.notify_all();
  }

  std::map<std::string, std::string> reports(const ProjectIndex& idx) const {
    std::shared_lock lock(rules_mutex);
    std::map<std::string, std::string> out;
    for (const auto& [id, outcome] : check_all(idx, ruleset)) out[id] = report_json(id, outcome).dump();
    return out;
  }

  // Caller holds rules_mutex exclusively.
  void persist() { save_ruleset(ruleset_path, ruleset); }

  RuleRecord* find_rule(const std::string& id) {
    for (auto& r : ruleset.rules) {
      if (r.id == id) return &r;
    }
    return nullptr;
  }

  // Validates and canonicalizes a record for storage.
  ServiceResponse prepare(RuleRecord& r, json& warnings) {
    auto parsed = parse_rule(r.rule_text);
    if (!parsed.rule || has_errors(parsed.diagnostics)) {
      return error_reply(422, "invalid-rule", "the rule text has errors",
                         {{"diagnostics", diagnostics_json(parsed.diagnostics)}});
    }
    r.rule_text = render_rule(*parsed.rule);
    r.diagnostics.clear();
    try {
      FileFilter filter(r.file_filter);
      const auto idx = snapshot();
      const bool any = std::any_of(idx->files.begin(), idx->files.end(),
                                   [&](const IndexedFile& f) { return filter.accepts(f.path); });
      if (!filter.empty() && !any) {
        warnings.push_back({{"code", "filter-matched-zero"},
                            {"message", "the file filter matches no file in the project"}});
      }
    } catch (const std::invalid_argument& e) {
      return error_reply(422, "bad-filter", e.what());
    }
    if (!r.model) r.model = json::parse(model_to_json(ast_to_model(*parsed.rule)));
    return {};
  }

  ServiceResponse route(std::string_view method, std::string_view path, std::string_view body) {
    const auto parts = split_path(path);
    if (parts.size() < 2 || parts[0] != "api") return error_reply(404, "not-found", "no such endpoint");
    const std::string& what = parts[1];

    if (what == "rules") {
      if (parts.size() == 2 && method == "GET") {
        std::shared_lock lock(rules_mutex);
        json list = json::array();
        for (const auto& r : ruleset.rules) {
          json j = record_to_json(r);
          j["diagnostics"] = diagnostics_json(r.diagnostics);
          list.push_back(std::move(j));
        }
        return reply(200, {{"rules", list}});
      }
      if (parts.size() == 2 && method == "POST") return create_rule(parse_body(body));
      if (parts.size() == 3 && method == "GET") {
        std::shared_lock lock(rules_mutex);
        for (const auto& r : ruleset.rules) {
          if (r.id == parts[2]) return reply(200, record_to_json(r));
        }
        return error_reply(404, "unknown-rule", "no rule '" + parts[2] + "'");
      }
      if (parts.size() == 3 && method == "PUT") return update_rule(parts[2], parse_body(body));
      if (parts.size() == 3 && method == "DELETE") return delete_rule(parts[2]);
      return error_reply(405, "method-not-allowed", "unsupported method for /api/rules");
    }

    if (method == "GET" && what == "files" && parts.size() == 2) {
      const auto idx = snapshot();
      json files = json::array();
      for (const auto& f : idx->files) {
        json j = {{"path", f.path}, {"hash", f.hash}};
        if (f.error) j["error"] = *f.error;
        files.push_back(std::move(j));
      }
      return reply(200, {{"root", idx->root.generic_string()}, {"files", files}});
    }

    if (method != "POST" || parts.size() < 2) return error_reply(404, "not-found", "no such endpoint");

    if (what == "rescan" && parts.size() == 2) {
      const bool changed = outer->rescan();
      return reply(200, {{"changed", changed}, {"files", snapshot()->files.size()}});
    }
    const json req = parse_body(body);
    if (what == "parse" && parts.size() == 2) {
      const std::string text = require_string(req, "text");
      auto parsed = parse_rule(text);
      json out = {{"diagnostics", diagnostics_json(parsed.diagnostics)}, {"canonical", nullptr}, {"model", nullptr}};
      if (parsed.rule && !has_errors(parsed.diagnostics)) {
        out["canonical"] = render_rule(*parsed.rule);
        GuiRuleModel m = ast_to_model(*parsed.rule);
        out["model"] = json::parse(model_to_json(m));
        out["guide"] = guide_json(guide_step(m));
      }
      return reply(200, out);
    }
    if (what == "model" && parts.size() == 3 && parts[2] == "text") {
      if (!req.contains("model") || !req["model"].is_object()) {
        throw HttpError{400, "bad-request", "'model' must be an object"};
      }
      try {
        const GuiRuleModel m = model_from_json(req["model"].dump());
        json out = {{"guide", guide_json(guide_step(m))}};
        out["text"] = model_to_text(m);
        out["eoi"] = m.eoi ? *m.eoi : default_eoi(m);
        return reply(200, out);
      } catch (const ModelError& e) {
        return error_reply(422, e.code(), e.what());
      }
    }
    if (what == "complete" && parts.size() == 2) {
      const std::string text = require_string(req, "text");
      const std::size_t cursor = req.contains("cursor") ? require_offset(req, "cursor") : text.size();
      json list = json::array();
      for (const auto& s : complete(text, cursor)) {
        list.push_back({{"token", s.token}, {"doc", s.doc}, {"example", s.example}, {"replaceBegin", s.replace_begin}});
      }
      return reply(200, {{"suggestions", list}});
    }
    if (what == "hover" && parts.size() == 2) {
      const std::string text = require_string(req, "text");
      auto doc = hover_doc(text, require_offset(req, "offset"));
      json out = {{"doc", nullptr}};
      if (doc) out["doc"] = {{"term", doc->term}, {"description", doc->description}, {"example", doc->example}};
      return reply(200, out);
    }
    if (what == "lint" && parts.size() == 2) {
      return reply(200, {{"diagnostics", diagnostics_json(lint(require_string(req, "text")))}});
    }
    if (what == "evaluate" && parts.size() == 2) return evaluate(req);
    return error_reply(404, "not-found", "no such endpoint");
  }

  ServiceResponse evaluate(const json& req) {
    std::optional<std::string> id;
    std::string text;
    std::vector<std::string> filter;
    if (req.contains("ruleId")) {
      id = require_string(req, "ruleId");
      std::shared_lock lock(rules_mutex);
      const RuleRecord* r = nullptr;
      for (const auto& rule : ruleset.rules) {
        if (rule.id == *id) r = &rule;
      }
      if (r == nullptr) return error_reply(404, "unknown-rule", "no rule '" + *id + "'");
      text = r->rule_text;
      filter = r->file_filter;
    } else {
      text = require_string(req, "ruleText");
    }
    if (req.contains("fileFilter")) {
      try {
        filter = req["fileFilter"].get<std::vector<std::string>>();
      } catch (const json::exception&) {
        throw HttpError{400, "bad-request", "'fileFilter' must be a list of strings"};
      }
    }
    const auto idx = snapshot();
    const RuleOutcome outcome = check_rule(*idx, text, filter);
    return {outcome.status == RuleStatus::Evaluated ? 200 : 422, report_json(id, outcome).dump(2),
            "application/json"};
  }

  ServiceResponse create_rule(const json& req) {
    json record = req;
    std::unique_lock lock(rules_mutex);
    if (!record.contains("id")) {
      int n = static_cast<int>(ruleset.rules.size()) + 1;
      while (find_rule("rule-" + std::to_string(n)) != nullptr) ++n;
      record["id"] = "rule-" + std::to_string(n);
    }
    RuleRecord r;
    try {
      r = record_from_json(record);
    } catch (const RulesetError& e) {
      return error_reply(400, "bad-request", e.what());
    }
    if (find_rule(r.id) != nullptr) return error_reply(409, "duplicate-id", "rule '" + r.id + "' exists");
    json warnings = json::array();
    if (auto bad = prepare(r, warnings); bad.status != 200) return bad;
    ruleset.rules.push_back(r);
    persist();
    lock.unlock();
    publish("rules", {{"action", "created"}, {"ruleId", r.id}});
    return reply(201, {{"rule", record_to_json(r)}, {"warnings", warnings}});
  }

  ServiceResponse update_rule(const std::string& id, json req) {
    req["id"] = id;
    std::unique_lock lock(rules_mutex);
    RuleRecord* existing = find_rule(id);
    if (existing == nullptr) return error_reply(404, "unknown-rule", "no rule '" + id + "'");
    RuleRecord r;
    try {
      r = record_from_json(req);
    } catch (const RulesetError& e) {
      return error_reply(400, "bad-request", e.what());
    }
    // A text change without a new snapshot invalidates the stored one.
    if (!req.contains("model") && r.rule_text == existing->rule_text) r.model = existing->model;
    json warnings = json::array();
    if (auto bad = prepare(r, warnings); bad.status != 200) return bad;
    *existing = r;
    persist();
    lock.unlock();
    publish("rules", {{"action", "updated"}, {"ruleId", id}});
    return reply(200, {{"rule", record_to_json(r)}, {"warnings", warnings}});
  }

  ServiceResponse delete_rule(const std::string& id) {
    std::unique_lock lock(rules_mutex);
    const auto before = ruleset.rules.size();
    std::erase_if(ruleset.rules, [&](const RuleRecord& r) { return r.id == id; });
    if (ruleset.rules.size() == before) return error_reply(404, "unknown-rule", "no rule '" + id + "'");
    persist();
    lock.unlock();
    publish("rules", {{"action", "deleted"}, {"ruleId", id}});
    return {204, "", "application/json"};
  }

  Service* outer = nullptr;
};

Service::Service(fs::path project_root, fs::path ruleset_path) : impl_(std::make_unique<Impl>()) {
  impl_->outer = this;
  impl_->root = std::move(project_root);
  impl_->ruleset_path = std::move(ruleset_path);
  impl_->index = std::make_shared<const ProjectIndex>(scan_project(impl_->root));
  std::error_code ec;
  if (fs::exists(impl_->ruleset_path, ec)) impl_->ruleset = load_ruleset(impl_->ruleset_path);
  impl_->last_reports = impl_->reports(*impl_->index);
}

Service::~Service() { stop(); }

ServiceResponse Service::handle(std::string_view method, std::string_view path, std::string_view body) {
  try {
    return impl_->route(method, path, body);
  } catch (const HttpError& e) {
    return error_reply(e.status, e.code, e.message);
  } catch (const RulesetError& e) {
    return error_reply(500, "ruleset-write-failed", e.what());
  }
}

bool Service::rescan() {
  std::lock_guard guard(impl_->rescan_mutex);
  const auto before = impl_->snapshot();
  auto next = std::make_shared<const ProjectIndex>(scan_project(impl_->root, {".java"}, before.get()));
  {
    std::lock_guard lock(impl_->index_mutex);
    impl_->index = next;
  }
  auto reports = impl_->reports(*next);
  json changed = json::array();
  for (const auto& [id, report] : reports) {
    auto old = impl_->last_reports.find(id);
    if (old == impl_->last_reports.end() || old->second != report) changed.push_back(id);
  }
  bool files_changed = before->files.size() != next->files.size();
  for (std::size_t i = 0; !files_changed && i < next->files.size(); ++i) {
    files_changed = before->files[i].path != next->files[i].path || before->files[i].hash != next->files[i].hash;
  }
  impl_->last_reports = std::move(reports);
  const bool any = files_changed || !changed.empty();
  if (any) {
    impl_->publish("rescan", {{"changedRules", changed}, {"files", next->files.size()}, {"filesChanged", files_changed}});
  }
  return any;
}

std::shared_ptr<const ProjectIndex> Service::index() const { return impl_->snapshot(); }

std::optional<ServiceEvent> Service::next_event(std::uint64_t after, std::chrono::milliseconds timeout) const {
  std::unique_lock lock(impl_->event_mutex);
  auto ready = [&] { return impl_->stopping || (!impl_->events.empty() && impl_->events.back().seq > after); };
  if (!impl_->event_cv.wait_for(lock, timeout, ready) || impl_->stopping) return std::nullopt;
  for (const auto& e : impl_->events) {
    if (e.seq > after) return e;
  }
  return std::nullopt;
}

std::uint64_t Service::last_event_seq() const {
  std::lock_guard lock(impl_->event_mutex);
  return impl_->next_seq - 1;
}

int Service::bind(const std::string& host, int port) {
  auto server = std::make_unique<httplib::Server>();
  auto forward = [this](const httplib::Request& req, httplib::Response& res) {
    const ServiceResponse r = handle(req.method, req.path, req.body);
    res.status = r.status;
    if (!r.body.empty()) res.set_content(r.body, r.content_type);
  };
  const std::string api = R"(/api/.*)";
  server->Get("/api/events", [this](const httplib::Request&, httplib::Response& res) {
    auto cursor = std::make_shared<std::uint64_t>(last_event_seq());
    auto greeted = std::make_shared<bool>(false);
    res.set_header("Cache-Control", "no-cache");
    res.set_chunked_content_provider("text/event-stream", [this, cursor, greeted](std::size_t, httplib::DataSink& sink) {
      if (!*greeted) {
        // Lets the client know the stream is live before any event.
        *greeted = true;
        const std::string hello = ": connected\n\n";
        return sink.write(hello.data(), hello.size());
      }
      auto event = next_event(*cursor, std::chrono::milliseconds(500));
      {
        std::lock_guard lock(impl_->event_mutex);
        if (impl_->stopping) {
          sink.done();
          return true;
        }
      }
      if (!event) return sink.is_writable();
      *cursor = event->seq;
      const std::string frame = "id: " + std::to_string(event->seq) + "\nevent: " + event->type +
                                "\ndata: " + event->data + "\n\n";
      return sink.write(frame.data(), frame.size());
    });
  });
  server->Get(api, forward);
  server->Post(api, forward);
  server->Put(api, forward);
  server->Delete(api, forward);
  int bound = port == 0 ? server->bind_to_any_port(host) : (server->bind_to_port(host, port) ? port : -1);
  if (bound < 0) return -1;
  impl_->server = std::move(server);
  return bound;
}

bool Service::run() { return impl_->server && impl_->server->listen_after_bind(); }

void Service::stop() {
  {
    std::lock_guard lock(impl_->event_mutex);
    impl_->stopping = true;
  }
  impl_->event_cv.notify_all();
  if (impl_->server) impl_->server->stop();
}

} // namespace rulecraft

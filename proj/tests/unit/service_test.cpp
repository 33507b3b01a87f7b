#include <doctest.h>

#include <httplib.h>
#include <thread>

#include "../support/fixtures.hpp"
#include "../support/rules.hpp"
#include "../support/temp_dir.hpp"
#include "rulecraft/model.hpp"
#include "rulecraft/service.hpp"

namespace fs = std::filesystem;
using namespace rulecraft;
using nlohmann::json;

namespace {

// A copy of the bank project with the fixture rules as its ruleset.
struct Project {
  testing::TempDir dir;
  fs::path rules;

  Project() {
    fs::copy(testing::bank_dir(), dir.path(), fs::copy_options::recursive);
    rules = dir.path() / kDefaultRulesetName;
    Ruleset rs;
    for (const auto& r : testing::fixture_rules()) {
      RuleRecord rec;
      rec.id = r.id;
      rec.rule_text = r.text;
      rec.file_filter = r.include;
      rs.rules.push_back(rec);
    }
    save_ruleset(rules, rs);
  }
};

json body(const ServiceResponse& r) {
  INFO(r.body);
  REQUIRE_FALSE(r.body.empty());
  return json::parse(r.body);
}

} // namespace

TEST_CASE("parse, complete and hover endpoints") {
  Project p;
  Service s(p.dir.path(), p.rules);

  const auto parsed = s.handle("POST", "/api/parse",
                               R"({"text": "class must have declaration statement with visibility \"private\" and function with name \"get...\""})");
  CHECK(parsed.status == 200);
  const json pj = body(parsed);
  CHECK(pj["diagnostics"].empty());
  CHECK(pj["model"].is_object());
  CHECK(pj["model"]["root"]["kind"] == "class");
  CHECK(pj["guide"]["current"] == 3);

  const json bad = body(s.handle("POST", "/api/parse", R"({"text": "class must have name \"A\" must have"})"));
  CHECK(bad["diagnostics"][0]["code"] == "duplicate-must");
  CHECK(bad["model"].is_null());

  const json done = body(s.handle("POST", "/api/complete", R"({"text": "class must", "cursor": 10})"));
  REQUIRE(done["suggestions"].size() == 1);
  CHECK(done["suggestions"][0]["token"] == "have");
  CHECK_FALSE(done["suggestions"][0]["doc"].get<std::string>().empty());

  const json hover = body(s.handle("POST", "/api/hover", R"({"text": "function must have type \"void\"", "offset": 20})"));
  CHECK(hover["doc"]["term"] == "type");

  const json lint = body(s.handle("POST", "/api/lint", R"({"text": "class must have"})"));
  CHECK(lint["diagnostics"][0]["severity"] == "warning");

  CHECK(s.handle("POST", "/api/complete", R"({"text": 3})").status == 400);
  CHECK(s.handle("POST", "/api/complete", "not json").status == 400);
  CHECK(s.handle("POST", "/api/complete", R"({"text": "a", "cursor": -1})").status == 400);
  CHECK(s.handle("GET", "/api/nothing", "").status == 404);
  CHECK(s.handle("PATCH", "/api/rules", "").status == 405);
}

TEST_CASE("model endpoint renders text and reports scope errors") {
  Project p;
  Service s(p.dir.path(), p.rules);
  GuiRuleModel m = new_model();
  const ElementId vis = add_element(m, m.root.id, ElementKind::Visibility);
  set_value(m, vis, ValueLiteral{ValueLiteral::Form::Pattern, "public"});
  const ElementId fn = add_element(m, m.root.id, ElementKind::Function);
  const ElementId name = add_element(m, fn, ElementKind::Name);
  set_value(m, name, ValueLiteral{ValueLiteral::Form::Pattern, "get..."});
  set_constraint(m, name, true);

  json req = {{"model", json::parse(model_to_json(m))}};
  const json out = body(s.handle("POST", "/api/model/text", req.dump()));
  CHECK(out["text"] == "function of class with visibility \"public\" must have name \"get...\"");
  CHECK(out["eoi"] == fn);

  m.eoi = fn;
  set_constraint(m, vis, true);
  req = {{"model", json::parse(model_to_json(m))}};
  const auto rejected = s.handle("POST", "/api/model/text", req.dump());
  CHECK(rejected.status == 422);
  CHECK(body(rejected)["error"]["code"] == "constraint-outside-eoi");
}

TEST_CASE("rule CRUD persists to the ruleset file") {
  Project p;
  Service s(p.dir.path(), p.rules);
  CHECK(body(s.handle("GET", "/api/rules", ""))["rules"].size() == testing::fixture_rules().size());

  auto created = s.handle("POST", "/api/rules",
                          R"({"id": "getters", "title": "Getters", "ruleText": "class   must have function with name \"get...\"",
                              "fileFilter": ["src/main/java/com/bank/model/"], "owner": "me"})");
  CHECK(created.status == 201);
  const json cj = body(created);
  CHECK(cj["rule"]["ruleText"] == "class must have function with name \"get...\"");
  CHECK(cj["rule"]["model"].is_object());
  CHECK(cj["warnings"].empty());
  Ruleset on_disk = load_ruleset(p.rules);
  REQUIRE(on_disk.rules.size() == testing::fixture_rules().size() + 1);
  CHECK(on_disk.rules.back().extra["owner"] == "me");

  CHECK(s.handle("POST", "/api/rules", R"({"id": "getters", "ruleText": "class must have function"})").status == 409);
  const auto invalid = s.handle("POST", "/api/rules", R"({"ruleText": "class must have banana"})");
  CHECK(invalid.status == 422);
  CHECK(body(invalid)["diagnostics"].size() == 1);
  CHECK(s.handle("POST", "/api/rules", R"({"ruleText": "class must have function", "fileFilter": ["/abs"]})").status == 422);

  const json warned = body(s.handle("POST", "/api/rules",
                                    R"({"ruleText": "class must have function", "fileFilter": ["src/nowhere/"]})"));
  CHECK(warned["warnings"][0]["code"] == "filter-matched-zero");
  CHECK(warned["rule"]["id"] == "rule-7");

  const auto updated = s.handle("PUT", "/api/rules/getters", R"({"ruleText": "class must have constructor"})");
  CHECK(updated.status == 200);
  CHECK(body(s.handle("GET", "/api/rules/getters", ""))["ruleText"] == "class must have constructor");
  CHECK(s.handle("PUT", "/api/rules/missing", R"({"ruleText": "class must have constructor"})").status == 404);

  CHECK(s.handle("DELETE", "/api/rules/getters", "").status == 204);
  CHECK(s.handle("DELETE", "/api/rules/getters", "").status == 404);
  CHECK(load_ruleset(p.rules).rules.size() == testing::fixture_rules().size() + 1);
}

TEST_CASE("evaluate endpoint matches the shared report") {
  Project p;
  Service s(p.dir.path(), p.rules);
  const ProjectIndex index = scan_project(p.dir.path());
  for (const auto& r : testing::fixture_rules()) {
    const auto res = s.handle("POST", "/api/evaluate", json{{"ruleId", r.id}}.dump());
    CHECK(res.status == 200);
    CHECK(res.body == report_json(r.id, check_rule(index, r.text, r.include)).dump(2));
  }
  const auto adhoc = s.handle("POST", "/api/evaluate",
                              R"({"ruleText": "class must have function", "fileFilter": ["src/nowhere/"]})");
  CHECK(adhoc.status == 200);
  CHECK(body(adhoc)["filterMatchedZero"] == true);
  CHECK(body(adhoc)["ruleId"].is_null());

  const auto broken = s.handle("POST", "/api/evaluate", R"({"ruleText": "class must have banana"})");
  CHECK(broken.status == 422);
  CHECK(body(broken)["status"] == "skipped");
  CHECK(s.handle("POST", "/api/evaluate", R"({"ruleId": "nope"})").status == 404);

  const json files = body(s.handle("GET", "/api/files", ""));
  CHECK(files["files"].size() == index.files.size());
}

TEST_CASE("rescan publishes an event only when results change") {
  Project p;
  Service s(p.dir.path(), p.rules);
  const auto seq = s.last_event_seq();
  CHECK_FALSE(s.rescan());
  CHECK_FALSE(s.next_event(seq, std::chrono::milliseconds(10)));

  std::ofstream(p.dir.path() / "src/main/java/com/bank/model/Branch.java", std::ios::app)
      << "\nclass Vault { private int size; int getSize() { return size; } }\n";
  const json r = body(s.handle("POST", "/api/rescan", "{}"));
  CHECK(r["changed"] == true);
  const auto event = s.next_event(seq, std::chrono::milliseconds(100));
  REQUIRE(event);
  CHECK(event->type == "rescan");
  const json data = json::parse(event->data);
  // Vault is package-private, so only the model-package rule sees it.
  CHECK(data["changedRules"] == json::array({"rule-1"}));
}

TEST_CASE("HTTP transport and event stream") {
  Project p;
  Service s(p.dir.path(), p.rules);
  const int port = s.bind("127.0.0.1", 0);
  REQUIRE(port > 0);
  std::thread server([&] { s.run(); });

  httplib::Client client("127.0.0.1", port);
  client.set_read_timeout(5, 0);
  for (int i = 0; i < 50; ++i) {
    if (client.Get("/api/rules")) break;
    std::this_thread::sleep_for(std::chrono::milliseconds(20));
  }
  auto rules = client.Get("/api/rules");
  REQUIRE(rules);
  CHECK(rules->status == 200);
  CHECK(json::parse(rules->body)["rules"].size() == testing::fixture_rules().size());

  auto eval = client.Post("/api/evaluate", R"({"ruleId": "rule-1"})", "application/json");
  REQUIRE(eval);
  CHECK(eval->body == s.handle("POST", "/api/evaluate", R"({"ruleId": "rule-1"})").body);

  std::string stream;
  std::atomic<bool> connected = false;
  std::thread listener([&] {
    httplib::Client sse("127.0.0.1", port);
    sse.set_read_timeout(5, 0);
    sse.Get("/api/events", [&](const char* data, std::size_t n) {
      stream.append(data, n);
      connected = true;
      return stream.find("event: rules") == std::string::npos;
    });
  });
  for (int i = 0; i < 250 && !connected; ++i) std::this_thread::sleep_for(std::chrono::milliseconds(20));
  REQUIRE(connected);
  auto created = client.Post("/api/rules", R"({"id": "live", "ruleText": "class must have function"})",
                             "application/json");
  REQUIRE(created);
  CHECK(created->status == 201);
  listener.join();
  CHECK(stream.find("event: rules") != std::string::npos);
  CHECK(stream.find("\"ruleId\":\"live\"") != std::string::npos);

  s.stop();
  server.join();
}

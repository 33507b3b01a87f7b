#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "rulecraft/workspace.hpp"

namespace rulecraft {

struct ServiceResponse {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

struct ServiceEvent {
  std::uint64_t seq = 0;
  std::string type; // "rescan" or "rules"
  std::string data; // JSON
};

// HTTP API over a project and its ruleset; routes are listed in
// docs/wire-format.md. `handle` is the transport-free entry point the HTTP
// server and the tests share. Thread-safe: rule mutations are serialized
// and each request reads one index snapshot.
class Service {
public:
  // Scans the project and loads the ruleset; a missing ruleset file starts
  // empty and is created on the first change.
  Service(std::filesystem::path project_root, std::filesystem::path ruleset_path);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  ServiceResponse handle(std::string_view method, std::string_view path, std::string_view body);

  // Re-indexes the project. Publishes a "rescan" event and returns true when
  // the file list or any rule's results changed.
  bool rescan();

  std::shared_ptr<const ProjectIndex> index() const;

  // Next event with seq > `after`, waiting up to `timeout`.
  std::optional<ServiceEvent> next_event(std::uint64_t after, std::chrono::milliseconds timeout) const;
  std::uint64_t last_event_seq() const;

  // HTTP. `bind` picks a free port when `port` is 0 and returns the bound
  // port (or -1); `run` blocks until `stop`.
  int bind(const std::string& host, int port);
  bool run();
  void stop();

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

} // namespace rulecraft

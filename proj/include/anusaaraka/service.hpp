#pragma once

// HTTP facade: translation, pre-edit checks and post-editing sessions.
// The wire format is JSON; documents travel as level-2 notation plus a
// provenance array. The journal format is described in
// docs/journal-format.md.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "anusaaraka/edit.hpp"
#include "anusaaraka/lexicon.hpp"
#include "anusaaraka/notation.hpp"

namespace anusaaraka {

struct ServiceResponse {
  int status = 200;
  std::string body;  // JSON text
};

struct ServiceOptions {
  std::optional<std::filesystem::path> journal;
};

struct SessionVersion {
  std::string text;  // source text the document was produced from
  Document document;
  std::string change;  // "create", "preedit" or the serialized command
};

class Service {
 public:
  Service(const Lexicon& lexicon, ServiceOptions options = {});
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Routes one request; used by the HTTP server and directly by tests.
  /// `path` may carry a query string.
  ServiceResponse handle(const std::string& method, const std::string& path, const std::string& body) const;

  /// Blocks serving HTTP until stop() is called. Returns false if the
  /// address could not be bound.
  bool listen(const std::string& host, int port);
  /// Binds to a free port and serves on a background thread; returns the port.
  int start_background(const std::string& host = "127.0.0.1");
  void stop();

 private:
  struct Session {
    std::string id;
    mutable std::mutex mutex;
    std::vector<SessionVersion> versions;
  };

  ServiceResponse translate(const std::string& body) const;
  ServiceResponse check(const std::string& body) const;
  ServiceResponse create_session(const std::string& body) const;
  ServiceResponse preedit(const std::string& id, const std::string& body) const;
  ServiceResponse command(const std::string& id, const std::string& body) const;
  ServiceResponse get_session(const std::string& id, const std::string& query) const;
  ServiceResponse lexicon_entry(const std::string& query) const;

  std::shared_ptr<Session> find(const std::string& id) const;
  void journal(const std::string& line) const;

  const Lexicon& lexicon_;
  ServiceOptions options_;
  mutable std::mutex sessions_mutex_;
  mutable std::map<std::string, std::shared_ptr<Session>> sessions_;
  mutable std::uint64_t next_id_ = 1;
  mutable std::mutex journal_mutex_;
  mutable std::ofstream journal_out_;

  struct Server;
  std::unique_ptr<Server> server_;
};

/// `{"notation": ..., "provenance": [...]}` for a document.
std::string document_json(const Document& doc);

}  // namespace anusaaraka

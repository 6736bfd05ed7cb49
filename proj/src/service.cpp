#include "anusaaraka/service.hpp"

#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "anusaaraka/pipeline.hpp"

namespace anusaaraka {

using nlohmann::json;

struct Service::Server {
  httplib::Server http;
  std::thread thread;
};

namespace {

ServiceResponse reply(int status, const json& body) { return ServiceResponse{status, body.dump()}; }

ServiceResponse error(int status, std::string_view code, const std::string& message,
                      const json& position = nullptr) {
  return reply(status, json{{"code", code}, {"message", message}, {"position", position}});
}

struct BadBody : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json parse_body(const std::string& body) {
  auto j = json::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw BadBody("request body must be a JSON object");
  return j;
}

std::string string_field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_string()) throw BadBody(std::string("missing string field '") + key + "'");
  return it->get<std::string>();
}

DetailLevel detail_field(const json& j) {
  auto it = j.find("detail");
  if (it == j.end()) return DetailLevel::full;
  std::optional<DetailLevel> level;
  if (it->is_number_integer()) level = parse_detail_level(std::to_string(it->get<int>()));
  if (it->is_string()) level = parse_detail_level(it->get<std::string>());
  if (!level) throw BadBody("detail must be 0, 1 or 2");
  return *level;
}

std::map<std::string, std::string> parse_query(const std::string& query) {
  httplib::Params params;
  httplib::detail::parse_query_text(query, params);
  std::map<std::string, std::string> out;
  for (const auto& [k, v] : params) out.emplace(k, v);
  return out;
}

json issues_json(const std::vector<PreEditIssue>& issues) {
  json out = json::array();
  for (const auto& i : issues) {
    out.push_back({{"tokenIndex", i.token},
                   {"span", i.span},
                   {"offset", i.offset},
                   {"length", i.length},
                   {"text", i.text},
                   {"kind", issue_kind_name(i.kind)},
                   {"suggestions", i.suggestions}});
  }
  return out;
}

json document_value(const Document& doc) {
  json provenance = json::array();
  json tokens = json::array();
  for (const auto& s : doc.sentences) {
    json groups = json::array();
    for (std::size_t g = 0; g < s.groups.size(); ++g) {
      const auto& group = s.groups[g];
      std::string source;
      for (std::size_t t = group.first_token; t < group.first_token + group.token_count && t < s.tokens.size(); ++t) {
        if (!source.empty()) source += ' ';
        source += s.tokens[t].text;
      }
      json nodes = json::array();
      for (const auto& n : group.nodes) nodes.push_back(n.token);
      groups.push_back({{"kind", group_kind_name(group.kind)},
                        {"firstToken", group.first_token},
                        {"tokenCount", group.token_count},
                        {"source", source},
                        {"notation", render_group(group, DetailLevel::full)},
                        {"nodes", nodes}});
    }
    provenance.push_back(groups);
    json toks = json::array();
    for (const auto& t : s.tokens) toks.push_back({{"text", t.text}, {"offset", t.offset}});
    tokens.push_back(toks);
  }
  return json{{"notation", render(doc, DetailLevel::full)}, {"provenance", provenance}, {"tokens", tokens}};
}

json version_json(const std::string& id, std::size_t version, const SessionVersion& v, DetailLevel level) {
  return json{{"id", id},
              {"version", version},
              {"text", v.text},
              {"change", v.change},
              {"notation", render(v.document, DetailLevel::full)},
              {"rendered", render(v.document, level)},
              {"document", document_value(v.document)}};
}

NodePath position_field(const json& j) {
  auto it = j.find("position");
  if (it == j.end()) throw BadBody("missing field 'position'");
  if (it->is_string()) return NodePath::parse(it->get<std::string>());
  if (it->is_array()) {
    std::string text;
    for (const auto& part : *it) {
      if (!part.is_number_unsigned()) throw BadBody("position array must hold non-negative integers");
      if (!text.empty()) text += '.';
      text += std::to_string(part.get<std::size_t>());
    }
    return NodePath::parse(text);
  }
  throw BadBody("position must be a string or an array");
}

std::vector<std::string> args_field(const json& j) {
  std::vector<std::string> out;
  auto it = j.find("args");
  if (it == j.end() || it->is_null()) return out;
  if (!it->is_array()) throw BadBody("args must be an array");
  for (const auto& a : *it) {
    if (a.is_string()) {
      out.push_back(a.get<std::string>());
    } else if (a.is_number_integer()) {
      out.push_back(std::to_string(a.get<long long>()));
    } else {
      throw BadBody("args must be strings or integers");
    }
  }
  return out;
}

}  // namespace

std::string document_json(const Document& doc) { return document_value(doc).dump(); }

Service::Service(const Lexicon& lexicon, ServiceOptions options)
    : lexicon_(lexicon), options_(std::move(options)), server_(std::make_unique<Server>()) {
  if (options_.journal) journal_out_.open(*options_.journal, std::ios::app);
  auto route = [this](const httplib::Request& req, httplib::Response& res) {
    auto r = handle(req.method, req.target, req.body);
    res.status = r.status;
    res.set_content(r.body, "application/json");
  };
  server_->http.Get(".*", route);
  server_->http.Post(".*", route);
}

Service::~Service() { stop(); }

bool Service::listen(const std::string& host, int port) { return server_->http.listen(host, port); }

int Service::start_background(const std::string& host) {
  int port = server_->http.bind_to_any_port(host);
  if (port <= 0) return port;
  server_->thread = std::thread([this] { server_->http.listen_after_bind(); });
  server_->http.wait_until_ready();
  return port;
}

void Service::stop() {
  if (!server_) return;
  server_->http.stop();
  if (server_->thread.joinable()) server_->thread.join();
}

void Service::journal(const std::string& line) const {
  if (!journal_out_.is_open()) return;
  std::lock_guard lock(journal_mutex_);
  journal_out_ << line << '\n';
  journal_out_.flush();
}

std::shared_ptr<Service::Session> Service::find(const std::string& id) const {
  std::lock_guard lock(sessions_mutex_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

ServiceResponse Service::handle(const std::string& method, const std::string& target, const std::string& body) const {
  auto q = target.find('?');
  std::string path = target.substr(0, q);
  std::string query = q == std::string::npos ? "" : target.substr(q + 1);
  try {
    if (method == "POST" && path == "/v1/translate") return translate(body);
    if (method == "POST" && path == "/v1/check") return check(body);
    if (method == "POST" && path == "/v1/sessions") return create_session(body);
    if (method == "GET" && path == "/v1/lexicon/entry") return lexicon_entry(query);
    const std::string prefix = "/v1/sessions/";
    if (path.starts_with(prefix)) {
      auto rest = path.substr(prefix.size());
      auto slash = rest.find('/');
      auto id = rest.substr(0, slash);
      auto action = slash == std::string::npos ? "" : rest.substr(slash + 1);
      if (method == "GET" && action.empty()) return get_session(id, query);
      if (method == "POST" && action == "preedit") return preedit(id, body);
      if (method == "POST" && action == "command") return command(id, body);
    }
    return error(404, "not_found", "no route for " + method + " " + path);
  } catch (const BadBody& e) {
    return error(400, "malformed_body", e.what());
  } catch (const json::exception& e) {
    return error(400, "malformed_body", e.what());
  }
}

ServiceResponse Service::translate(const std::string& body) const {
  auto j = parse_body(body);
  auto text = string_field(j, "text");
  auto level = detail_field(j);
  return reply(200, json{{"notation", translate_text(text, lexicon_, level)},
                         {"document", document_value(run_pipeline(text, lexicon_))}});
}

ServiceResponse Service::check(const std::string& body) const {
  auto j = parse_body(body);
  return reply(200, json{{"issues", issues_json(check_pre_edit(string_field(j, "text"), lexicon_))}});
}

ServiceResponse Service::create_session(const std::string& body) const {
  auto j = parse_body(body);
  auto text = string_field(j, "text");
  auto level = detail_field(j);
  auto session = std::make_shared<Session>();
  session->versions.push_back(SessionVersion{text, run_pipeline(text, lexicon_), "create"});
  {
    std::lock_guard lock(sessions_mutex_);
    session->id = "s" + std::to_string(next_id_++);
    sessions_[session->id] = session;
  }
  std::lock_guard lock(session->mutex);
  auto out = version_json(session->id, 0, session->versions.back(), level);
  out["issues"] = issues_json(check_pre_edit(text, lexicon_));
  journal(json{{"session", session->id}, {"version", 0}, {"change", "create"}, {"text", text},
               {"notation", out["notation"]}}
              .dump());
  return reply(200, out);
}

ServiceResponse Service::preedit(const std::string& id, const std::string& body) const {
  auto session = find(id);
  if (!session) return error(404, "unknown_session", "no session " + id);
  auto j = parse_body(body);
  auto replacement = string_field(j, "replacement");
  auto it = j.find("tokenIndex");
  if (it == j.end() || !it->is_number_unsigned()) throw BadBody("missing non-negative integer 'tokenIndex'");
  std::size_t token = it->get<std::size_t>();
  std::size_t span = 1;
  if (auto s = j.find("span"); s != j.end()) {
    if (!s->is_number_unsigned()) throw BadBody("span must be a non-negative integer");
    span = s->get<std::size_t>();
  }
  auto level = detail_field(j);
  std::lock_guard lock(session->mutex);
  std::string text;
  try {
    text = apply_pre_edit(session->versions.back().text, token, replacement, span);
  } catch (const std::out_of_range& e) {
    return error(422, "invalid_position", e.what(), token);
  }
  session->versions.push_back(SessionVersion{text, run_pipeline(text, lexicon_), "preedit"});
  std::size_t version = session->versions.size() - 1;
  auto out = version_json(id, version, session->versions.back(), level);
  out["issues"] = issues_json(check_pre_edit(text, lexicon_));
  journal(json{{"session", id}, {"version", version}, {"change", "preedit"}, {"text", text},
               {"notation", out["notation"]}}
              .dump());
  return reply(200, out);
}

ServiceResponse Service::command(const std::string& id, const std::string& body) const {
  auto session = find(id);
  if (!session) return error(404, "unknown_session", "no session " + id);
  auto j = parse_body(body);
  auto level = detail_field(j);
  json position = j.contains("position") ? j["position"] : json(nullptr);
  EditCommand cmd;
  try {
    cmd = EditCommand::make(position_field(j), string_field(j, "verb"), args_field(j));
  } catch (const EditError& e) {
    return error(422, e.code(), e.what(), position);
  }
  std::lock_guard lock(session->mutex);
  const auto& current = session->versions.back();
  Document next;
  try {
    next = apply_post_edit(current.document, cmd, lexicon_);
  } catch (const EditError& e) {
    return error(422, e.code(), e.what(), position);
  }
  session->versions.push_back(SessionVersion{current.text, std::move(next), cmd.to_string()});
  std::size_t version = session->versions.size() - 1;
  auto out = version_json(id, version, session->versions.back(), level);
  journal(json{{"session", id}, {"version", version}, {"change", cmd.to_string()}, {"notation", out["notation"]}}
              .dump());
  return reply(200, out);
}

ServiceResponse Service::get_session(const std::string& id, const std::string& query) const {
  auto session = find(id);
  if (!session) return error(404, "unknown_session", "no session " + id);
  auto params = parse_query(query);
  auto level = DetailLevel::full;
  if (auto d = params.find("detail"); d != params.end()) {
    auto parsed = parse_detail_level(d->second);
    if (!parsed) return error(400, "malformed_body", "detail must be 0, 1 or 2");
    level = *parsed;
  }
  std::lock_guard lock(session->mutex);
  std::size_t version = session->versions.size() - 1;
  if (auto v = params.find("version"); v != params.end()) {
    std::size_t k = 0;
    try {
      std::size_t used = 0;
      k = std::stoul(v->second, &used);
      if (used != v->second.size()) throw std::invalid_argument("trailing text");
    } catch (const std::exception&) {
      return error(400, "malformed_body", "version must be a non-negative integer");
    }
    if (k > version) return error(404, "unknown_version", "session " + id + " has no version " + v->second);
    version = k;
  }
  return reply(200, version_json(id, version, session->versions[version], level));
}

ServiceResponse Service::lexicon_entry(const std::string& query) const {
  auto params = parse_query(query);
  auto it = params.find("root");
  if (it == params.end() || it->second.empty()) return error(400, "malformed_body", "missing query parameter 'root'");
  const auto& root = it->second;
  auto entries = [&](const Dictionary& d, bool source) {
    json out = json::array();
    for (const auto* e : d.lookup_root(root)) {
      json item{{"root", e->root},
                {"category", category_name(e->category)},
                {"paradigm", e->paradigm},
                {"features", e->inherent.to_string()},
                {"gloss", e->display()},
                {"where", e->where.to_string()}};
      if (source) {
        json targets = json::array();
        if (const auto* m = lexicon_.mapping_for(e->root, e->category)) {
          for (const auto& t : m->targets) targets.push_back({{"root", t.root}, {"category", category_name(t.category)}});
        }
        item["targets"] = targets;
      }
      out.push_back(item);
    }
    return out;
  };
  json source = entries(lexicon_.source(), true);
  json target = entries(lexicon_.target(), false);
  if (source.empty() && target.empty()) return error(404, "unknown_root", "no entry for " + root);
  return reply(200, json{{"root", root}, {"source", source}, {"target", target}});
}

}  // namespace anusaaraka

#include <gtest/gtest.h>

#include <atomic>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "anusaaraka/pipeline.hpp"
#include "anusaaraka/service.hpp"
#include "test_support.hpp"

namespace anusaaraka {
namespace {

using nlohmann::json;

struct Reply {
  int status;
  json body;
};

Reply call(const Service& s, const std::string& method, const std::string& path, const json& body = nullptr) {
  auto r = s.handle(method, path, body.is_null() ? "" : body.dump());
  return {r.status, json::parse(r.body)};
}

TEST(Service, TranslateProgressiveQuestion) {
  Service s(testing::telugu());
  auto r = call(s, "POST", "/v1/translate", {{"text", "mlru pustakaM caduvutunnArA?"}, {"detail", 2}});
  ASSERT_EQ(r.status, 200);
  EXPECT_EQ(r.body["notation"], "Apa pustaka paDha_raHA_[HE|thA]_kyA{23_ba.}?\n");
  const auto& groups = r.body["document"]["provenance"][0];
  ASSERT_EQ(groups.size(), 4u);
  EXPECT_EQ(groups[2]["source"], "caduvutunnArA");
  EXPECT_EQ(groups[2]["kind"], "verb_group");
}

TEST(Service, DetailMayBeAString) {
  Service s(testing::telugu());
  auto r = call(s, "POST", "/v1/translate", {{"text", "mlru pustakaM caduvutunnArA?"}, {"detail", "0"}});
  EXPECT_EQ(r.body["notation"], "Apa pustaka paDha_raHA_HE_kyA?\n");
}

TEST(Service, CheckReportsIssues) {
  Service s(testing::telugu());
  auto r = call(s, "POST", "/v1/check", {{"text", "mIru pustakaM"}});
  ASSERT_EQ(r.status, 200);
  ASSERT_EQ(r.body["issues"].size(), 1u);
  EXPECT_EQ(r.body["issues"][0]["kind"], "nonstandard_spelling");
  EXPECT_EQ(r.body["issues"][0]["suggestions"][0], "mlru");
}

TEST(Service, MalformedBodies) {
  Service s(testing::telugu());
  EXPECT_EQ(s.handle("POST", "/v1/translate", "{").status, 400);
  EXPECT_EQ(s.handle("POST", "/v1/translate", "[]").status, 400);
  auto r = call(s, "POST", "/v1/translate", {{"txt", "x"}});
  EXPECT_EQ(r.status, 400);
  EXPECT_EQ(r.body["code"], "malformed_body");
  EXPECT_TRUE(r.body.contains("position"));
  EXPECT_EQ(call(s, "POST", "/v1/translate", {{"text", "x"}, {"detail", 7}}).status, 400);
}

TEST(Service, UnknownRoutesAndSessions) {
  Service s(testing::telugu());
  EXPECT_EQ(s.handle("GET", "/v2/nothing", "").status, 404);
  auto r = call(s, "GET", "/v1/sessions/s999");
  EXPECT_EQ(r.status, 404);
  EXPECT_EQ(r.body["code"], "unknown_session");
  EXPECT_EQ(call(s, "POST", "/v1/sessions/s999/command", {{"position", "0.0"}, {"verb", "insert_ne"}}).status, 404);
}

TEST(Service, SessionVersionsAreAppendOnly) {
  Service s(testing::telugu());
  auto created = call(s, "POST", "/v1/sessions", {{"text", "mlru pustakaM caduvutunnArA?"}});
  ASSERT_EQ(created.status, 200);
  std::string id = created.body["id"];
  EXPECT_EQ(created.body["version"], 0);
  EXPECT_TRUE(created.body["issues"].empty());
  auto v0 = call(s, "GET", "/v1/sessions/" + id + "?version=0");

  auto edited = call(s, "POST", "/v1/sessions/" + id + "/command",
                     {{"position", "0.2.2"}, {"verb", "choose_alternative"}, {"args", {1}}});
  ASSERT_EQ(edited.status, 200);
  EXPECT_EQ(edited.body["version"], 1);
  EXPECT_EQ(edited.body["notation"], "Apa pustaka paDha_raHA_thA_kyA{23_ba.}?");

  auto again = call(s, "POST", "/v1/sessions/" + id + "/command",
                    {{"position", {0, 2}}, {"verb", "set_gnp"}, {"args", {"fem", "sg", 3}}, {"detail", 0}});
  ASSERT_EQ(again.status, 200);
  EXPECT_EQ(again.body["version"], 2);
  EXPECT_EQ(again.body["rendered"], "Apa pustaka paDha_raHI_thI_kyA?");

  EXPECT_EQ(call(s, "GET", "/v1/sessions/" + id + "?version=0").body, v0.body);
  auto latest = call(s, "GET", "/v1/sessions/" + id);
  EXPECT_EQ(latest.body["version"], 2);
  EXPECT_EQ(call(s, "GET", "/v1/sessions/" + id + "?version=3").body["code"], "unknown_version");
  EXPECT_EQ(call(s, "GET", "/v1/sessions/" + id + "?version=x").status, 400);
}

TEST(Service, CommandErrorsAre422AndKeepTheVersion) {
  Service s(testing::kannada());
  std::string id = call(s, "POST", "/v1/sessions", {{"text", "rAma haNNu tinnuttAne."}}).body["id"];
  auto guard = call(s, "POST", "/v1/sessions/" + id + "/command", {{"position", "0.0"}, {"verb", "insert_ne"}});
  EXPECT_EQ(guard.status, 422);
  EXPECT_EQ(guard.body["code"], "guard_violation");
  EXPECT_EQ(guard.body["position"], "0.0");
  auto position = call(s, "POST", "/v1/sessions/" + id + "/command", {{"position", "4.0"}, {"verb", "insert_ne"}});
  EXPECT_EQ(position.status, 422);
  EXPECT_EQ(position.body["code"], "invalid_position");
  auto verb = call(s, "POST", "/v1/sessions/" + id + "/command", {{"position", "0.0"}, {"verb", "frob"}});
  EXPECT_EQ(verb.status, 422);
  EXPECT_EQ(verb.body["code"], "invalid_command");
  EXPECT_EQ(call(s, "GET", "/v1/sessions/" + id).body["version"], 0);
}

TEST(Service, InsertNeOnPerfective) {
  Service s(testing::kannada());
  auto created = call(s, "POST", "/v1/sessions", {{"text", "rAma haNNu tinnidanu."}});
  EXPECT_EQ(created.body["notation"], "rAma phala khAyA`.");
  std::string id = created.body["id"];
  auto r = call(s, "POST", "/v1/sessions/" + id + "/command", {{"position", "0.0"}, {"verb", "insert_ne"}});
  ASSERT_EQ(r.status, 200);
  EXPECT_EQ(r.body["notation"], "rAma_ne phala khAyA`.");
}

TEST(Service, ResolvePlaceholder) {
  auto files = testing::sample_files("sample-tel-hin");
  testing::drop_rows(files, "target.roots", "jo\t");
  auto lex = load_lexicon(files);
  Service s(lex);
  std::string id = call(s, "POST", "/v1/sessions", {{"text", "rAmuDu winina pleTu"}}).body["id"];
  auto r = call(s, "POST", "/v1/sessions/" + id + "/command",
                {{"position", "0.1.3"}, {"verb", "resolve_vibhakti"}, {"args", {"meM"}}, {"detail", 1}});
  ASSERT_EQ(r.status, 200);
  EXPECT_NE(r.body["rendered"].get<std::string>().find("jo_meM_vaHa"), std::string::npos) << r.body["rendered"];
}

TEST(Service, PreeditCreatesANewVersion) {
  Service s(testing::telugu());
  auto created = call(s, "POST", "/v1/sessions", {{"text", "mIru pustakaM caduvutunnArA?"}});
  std::string id = created.body["id"];
  ASSERT_EQ(created.body["issues"].size(), 1u);
  auto r = call(s, "POST", "/v1/sessions/" + id + "/preedit", {{"tokenIndex", 0}, {"replacement", "mlru"}});
  ASSERT_EQ(r.status, 200);
  EXPECT_EQ(r.body["version"], 1);
  EXPECT_EQ(r.body["text"], "mlru pustakaM caduvutunnArA?");
  EXPECT_TRUE(r.body["issues"].empty());
  EXPECT_EQ(r.body["notation"], "Apa pustaka paDha_raHA_[HE|thA]_kyA{23_ba.}?");
  auto bad = call(s, "POST", "/v1/sessions/" + id + "/preedit", {{"tokenIndex", 40}, {"replacement", "x"}});
  EXPECT_EQ(bad.status, 422);
  EXPECT_EQ(call(s, "POST", "/v1/sessions/" + id + "/preedit", {{"tokenIndex", -1}, {"replacement", "x"}}).status,
            400);
}

TEST(Service, LexiconEntry) {
  Service s(testing::telugu());
  auto r = call(s, "GET", "/v1/lexicon/entry?root=mlru");
  ASSERT_EQ(r.status, 200);
  ASSERT_EQ(r.body["source"].size(), 1u);
  EXPECT_EQ(r.body["source"][0]["category"], "pronoun");
  EXPECT_EQ(r.body["source"][0]["targets"][0]["root"], "Apa");
  EXPECT_EQ(call(s, "GET", "/v1/lexicon/entry?root=khA").body["target"][0]["paradigm"], "V-A");
  EXPECT_EQ(call(s, "GET", "/v1/lexicon/entry?root=zzz").status, 404);
  EXPECT_EQ(call(s, "GET", "/v1/lexicon/entry").status, 400);
}

TEST(Service, JournalHasOneRecordPerVersion) {
  auto path = std::filesystem::temp_directory_path() / "anusaaraka-journal-test.jsonl";
  std::filesystem::remove(path);
  {
    Service s(testing::telugu(), ServiceOptions{path});
    std::string id = call(s, "POST", "/v1/sessions", {{"text", "mlru pustakaM caduvutunnArA?"}}).body["id"];
    call(s, "POST", "/v1/sessions/" + id + "/command",
         {{"position", "0.2.2"}, {"verb", "choose_alternative"}, {"args", {"1"}}});
    call(s, "POST", "/v1/sessions/" + id + "/command", {{"position", "0.9"}, {"verb", "insert_ne"}});
  }
  auto lines = testing::read_lines(path);
  ASSERT_EQ(lines.size(), 2u);
  auto first = json::parse(lines[0]);
  EXPECT_EQ(first["version"], 0);
  EXPECT_EQ(first["change"], "create");
  auto second = json::parse(lines[1]);
  EXPECT_EQ(second["change"], "0.2.2 choose_alternative 1");
  EXPECT_EQ(second["notation"], "Apa pustaka paDha_raHA_thA_kyA{23_ba.}?");
  std::filesystem::remove(path);
}

TEST(Service, ConcurrentCommandsOnOneSessionAreSerialized) {
  Service s(testing::telugu());
  std::string id = call(s, "POST", "/v1/sessions", {{"text", "mlru pustakaM caduvutunnArA?"}}).body["id"];
  std::atomic<int> ok{0};
  std::vector<std::thread> threads;
  for (int t = 0; t < 8; ++t) {
    threads.emplace_back([&, t] {
      for (int i = 0; i < 10; ++i) {
        json args = {t % 2 ? "fem" : "masc", "sg", "3"};
        auto r = call(s, "POST", "/v1/sessions/" + id + "/command",
                      {{"position", "0.2"}, {"verb", "set_gnp"}, {"args", args}});
        if (r.status == 200) ++ok;
      }
    });
  }
  for (auto& t : threads) t.join();
  EXPECT_EQ(ok.load(), 80);
  auto latest = call(s, "GET", "/v1/sessions/" + id);
  EXPECT_EQ(latest.body["version"], 80);
}

TEST(Service, ServesOverHttp) {
  Service s(testing::telugu());
  int port = s.start_background();
  ASSERT_GT(port, 0);
  httplib::Client client("127.0.0.1", port);
  auto res = client.Post("/v1/translate", json{{"text", "mlru pustakaM caduvutunnArA?"}}.dump(), "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(json::parse(res->body)["notation"], "Apa pustaka paDha_raHA_[HE|thA]_kyA{23_ba.}?\n");
  auto missing = client.Get("/v1/sessions/nope?version=2");
  ASSERT_TRUE(missing);
  EXPECT_EQ(missing->status, 404);
  auto entry = client.Get("/v1/lexicon/entry?root=pustakaM");
  ASSERT_TRUE(entry);
  EXPECT_EQ(json::parse(entry->body)["source"][0]["targets"][0]["root"], "pustaka");
  s.stop();
}

TEST(Service, DocumentJsonCarriesNotationAndProvenance) {
  auto doc = run_pipeline("mlru pustakaM.", testing::telugu());
  auto j = json::parse(document_json(doc));
  EXPECT_EQ(j["notation"], "Apa pustaka.");
  EXPECT_EQ(j["tokens"][0].size(), 3u);
  EXPECT_EQ(j["provenance"][0][1]["nodes"][0], 1);
}

}  // namespace
}  // namespace anusaaraka

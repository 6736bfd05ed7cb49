#include <gtest/gtest.h>

#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "anusaaraka/service.hpp"
#include "cli.hpp"
#include "test_support.hpp"

namespace anusaaraka {
namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args, const std::string& input = "") {
  args.insert(args.begin(), "anusaaraka");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::istringstream in(input);
  std::ostringstream out, err;
  int code = cli_main(static_cast<int>(argv.size()), argv.data(), in, out, err);
  return {code, out.str(), err.str()};
}

std::string tel() { return testing::data_dir("sample-tel-hin").string(); }
std::string kan() { return testing::data_dir("sample-kan-hin").string(); }

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p, std::ios::binary) << content;
  return p;
}

TEST(Cli, AnalyzePrintsDebugFormat) {
  auto r = run({"--lexicon", tel(), "analyze", "mAnava"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "mAnavuDu{cat=n,number=sg,case=oblique}/mAnuvu{cat=v,TAM=infinitive,gnp=any}\n");
}

TEST(Cli, AnalyzeUnknownWordIsAnInputError) {
  auto r = run({"--lexicon", tel(), "analyze", "qqqq"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("no analysis"), std::string::npos);
}

TEST(Cli, TranslateFileAndStdin) {
  auto file = temp_file("anusaaraka-seven.txt", "mlru pustakaM caduvutunnArA?\n");
  auto r = run({"--lexicon", tel(), "translate", "--detail", "2", file.string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "Apa pustaka paDha_raHA_[HE|thA]_kyA{23_ba.}?\n");
  auto s = run({"-l", tel(), "translate", "-d", "0"}, "mlru pustakaM caduvutunnArA?\n");
  EXPECT_EQ(s.out, "Apa pustaka paDha_raHA_HE_kyA?\n");
  std::filesystem::remove(file);
}

TEST(Cli, TranslateMissingFile) { EXPECT_EQ(run({"-l", tel(), "translate", "/nonexistent/input"}).code, 1); }

TEST(Cli, SynthesizeTargetForms) {
  EXPECT_EQ(run({"-l", tel(), "synthesize", "rAjA", "noun", "number=pl,case=oblique"}).out, "rAjAoM\n");
  EXPECT_EQ(run({"-l", tel(), "synthesize", "khA", "verb", "TAM=tA,gnp=fem_sg_3"}).out, "khAtI\n");
  EXPECT_EQ(run({"-l", tel(), "synthesize", "--source", "vyAdhi", "noun", "number=pl,case=ki"}).out,
            "vyAdhulaku\n");
  EXPECT_EQ(run({"-l", tel(), "synthesize", "zzz", "noun", "number=sg"}).code, 1);
  EXPECT_EQ(run({"-l", tel(), "synthesize", "khA", "adverb", "-"}).code, 1);
}

TEST(Cli, ValidateSampleLexicons) {
  for (const auto& dir : {tel(), kan()}) {
    auto r = run({"--lexicon", dir, "validate-lexicon"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "");
  }
}

TEST(Cli, LexiconErrorsExitTwo) {
  auto dir = std::filesystem::temp_directory_path() / "anusaaraka-bad-lexicon";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "x.roots") << "a\tnoun\n";
  auto r = run({"--lexicon", dir.string(), "translate"}, "a");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("x.roots:1"), std::string::npos) << r.err;
  std::filesystem::remove_all(dir);
  EXPECT_EQ(run({"--lexicon", "/nonexistent", "validate-lexicon"}).code, 2);
}

TEST(Cli, ValidationDiagnosticsExitTwo) {
  auto dir = std::filesystem::temp_directory_path() / "anusaaraka-unmapped";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "x.suffixes") << "@paradigm\tINDECL\t*\n";
  std::ofstream(dir / "x.roots") << "kAnI\tparticle\tINDECL\n";
  auto r = run({"--lexicon", dir.string(), "validate-lexicon"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("unmapped-root"), std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST(Cli, CheckPrintsLineAndColumn) {
  auto r = run({"-l", tel(), "check"}, "mlru pustakaM\nmIru pustakam\n");
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out, "2:1: nonstandard_spelling: mIru -> mlru\n2:6: nonstandard_spelling: pustakam -> pustakaM\n");
  EXPECT_EQ(run({"-l", tel(), "check"}, "mlru pustakaM caduvutunnArA?\n").code, 0);
}

TEST(Cli, EditAppliesAScript) {
  auto script = temp_file("anusaaraka-edit.cmds", "# ergative\n0.0 insert_ne\n");
  auto input = temp_file("anusaaraka-edit.txt", "rAma haNNu tinnidanu.\n");
  auto r = run({"-l", kan(), "edit", "--apply", script.string(), input.string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "rAma_ne phala khAyA`.\n");
  auto bad = temp_file("anusaaraka-edit-bad.cmds", "0.2 insert_ne\n");
  auto refused = run({"-l", kan(), "edit", "--apply", bad.string(), input.string()});
  EXPECT_EQ(refused.code, 1);
  EXPECT_NE(refused.err.find("invalid_command"), std::string::npos);
  for (const auto& p : {script, input, bad}) std::filesystem::remove(p);
}

TEST(Cli, EditNotationInput) {
  auto script = temp_file("anusaaraka-choose.cmds", "0.2.2 choose_alternative 1\n");
  auto r = run({"-l", tel(), "edit", "--apply", script.string(), "--notation", "-d", "1"},
               "Apa pustaka paDha_raHA_[HE|thA]_kyA{23_ba.}?");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "Apa pustaka paDha_raHA_thA_kyA?\n");
  std::filesystem::remove(script);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"translate", "--detail", "5"}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({"--help"}).code, 0);
}

class Equivalence : public ::testing::TestWithParam<int> {};

TEST_P(Equivalence, ServiceTranslateEqualsCli) {
  for (const auto& [corpus, dir, lex] : {std::tuple{"corpus-tel.txt", tel(), &testing::telugu()},
                                         std::tuple{"corpus-kan.txt", kan(), &testing::kannada()}}) {
    auto input = testing::read_file(testing::golden(corpus));
    auto cli = run({"-l", dir, "translate", "-d", std::to_string(GetParam()), testing::golden(corpus).string()});
    ASSERT_EQ(cli.code, 0);
    Service service(*lex);
    auto r = service.handle("POST", "/v1/translate",
                            nlohmann::json{{"text", input}, {"detail", GetParam()}}.dump());
    ASSERT_EQ(r.status, 200);
    EXPECT_EQ(nlohmann::json::parse(r.body)["notation"].get<std::string>(), cli.out);
  }
}

INSTANTIATE_TEST_SUITE_P(DetailLevels, Equivalence, ::testing::Values(0, 1, 2));

TEST(Cli, BinaryMatchesInProcessRun) {
  std::string cmd = std::string(ANUSAARAKA_CLI_BINARY) + " --lexicon " + tel() + " analyze mAnava";
  FILE* pipe = popen(cmd.c_str(), "r");
  ASSERT_NE(pipe, nullptr);
  std::string out;
  char buf[256];
  while (auto n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  EXPECT_EQ(pclose(pipe), 0);
  EXPECT_EQ(out, run({"--lexicon", tel(), "analyze", "mAnava"}).out);
}

}  // namespace
}  // namespace anusaaraka

#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "anusaaraka/edit.hpp"
#include "anusaaraka/lexicon.hpp"
#include "anusaaraka/morph.hpp"
#include "anusaaraka/pipeline.hpp"
#include "anusaaraka/service.hpp"

namespace anusaaraka {

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kLexiconError = 2;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& file, std::istream& in) {
  std::ostringstream buf;
  if (file.empty() || file == "-") {
    buf << in.rdbuf();
  } else {
    std::ifstream f(file, std::ios::binary);
    if (!f) throw InputError("cannot read " + file);
    buf << f.rdbuf();
  }
  return buf.str();
}

std::optional<DetailLevel> detail_from(int level) {
  return parse_detail_level(std::to_string(level));
}

void print_issues(const std::string& text, const Lexicon& lexicon, std::ostream& out, std::size_t& count) {
  std::size_t line_no = 1;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string::npos) nl = text.size();
    for (const auto& issue : check_pre_edit(std::string_view(text).substr(pos, nl - pos), lexicon)) {
      out << line_no << ':' << issue.offset + 1 << ": " << issue_kind_name(issue.kind) << ": " << issue.text;
      for (std::size_t i = 0; i < issue.suggestions.size(); ++i) out << (i ? " | " : " -> ") << issue.suggestions[i];
      out << '\n';
      ++count;
    }
    ++line_no;
    pos = nl + 1;
  }
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Source-preserving machine translation between Indian languages"};
  app.require_subcommand(1);
  std::string lexicon_dir = "data/sample-tel-hin";
  app.add_option("-l,--lexicon", lexicon_dir, "Lexicon directory")->capture_default_str();

  int detail = 2;
  std::string input_file;

  auto* translate = app.add_subcommand("translate", "Translate text to notation");
  translate->add_option("-d,--detail", detail, "Detail level 0, 1 or 2")->check(CLI::Range(0, 2));
  translate->add_option("input", input_file, "Input file; stdin when omitted");

  std::vector<std::string> words;
  auto* analyze = app.add_subcommand("analyze", "Print the analyses of words");
  analyze->add_option("words", words, "Words to analyze")->required();

  std::string root, category, features;
  bool source_side = false;
  auto* synth = app.add_subcommand("synthesize", "Generate a word form");
  synth->add_option("root", root)->required();
  synth->add_option("category", category)->required();
  synth->add_option("features", features, "k=v,k=v or -")->required();
  synth->add_flag("--source", source_side, "Use the source dictionary");

  auto* check = app.add_subcommand("check", "Report pre-editing issues");
  check->add_option("input", input_file, "Input file; stdin when omitted");

  std::string commands_file;
  bool notation_input = false;
  auto* edit = app.add_subcommand("edit", "Apply post-editing commands");
  edit->add_option("--apply", commands_file, "Command script")->required();
  edit->add_flag("--notation", notation_input, "Input is level-2 notation");
  edit->add_option("-d,--detail", detail, "Detail level 0, 1 or 2")->check(CLI::Range(0, 2));
  edit->add_option("input", input_file, "Input file; stdin when omitted");

  auto* validate = app.add_subcommand("validate-lexicon", "Check the lexicon files");

  std::string host = "127.0.0.1";
  int port = 8080;
  std::string journal_file;
  auto* serve = app.add_subcommand("serve", "Run the HTTP service");
  serve->add_option("--host", host)->capture_default_str();
  serve->add_option("-p,--port", port)->capture_default_str();
  serve->add_option("--journal", journal_file, "Append-only version journal");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kInputError;
  }

  Lexicon lexicon;
  try {
    lexicon = load_lexicon({lexicon_dir});
  } catch (const std::exception& e) {
    err << "lexicon: " << e.what() << '\n';
    return kLexiconError;
  }

  try {
    if (*validate) {
      auto diagnostics = validate_lexicon(lexicon);
      for (const auto& d : diagnostics) out << d.to_string() << '\n';
      return diagnostics.empty() ? kOk : kLexiconError;
    }
    if (*translate) {
      out << translate_text(read_input(input_file, in), lexicon, *detail_from(detail));
      return kOk;
    }
    if (*analyze) {
      int status = kOk;
      for (const auto& w : words) {
        auto analyses = analyze_word(w, lexicon);
        if (analyses.empty()) {
          err << w << ": no analysis\n";
          status = kInputError;
          continue;
        }
        out << format_analyses(analyses) << '\n';
      }
      return status;
    }
    if (*synth) {
      auto cat = parse_category(category);
      if (!cat) throw InputError("unknown category " + category);
      const auto& dict = source_side ? lexicon.source() : lexicon.target();
      out << synthesize(root, *cat, FeatureBundle::parse(features), dict) << '\n';
      return kOk;
    }
    if (*check) {
      std::size_t count = 0;
      print_issues(read_input(input_file, in), lexicon, out, count);
      return count ? kInputError : kOk;
    }
    if (*edit) {
      auto script = read_input(commands_file, in);
      auto text = read_input(input_file, in);
      auto doc = notation_input ? parse_notation(text) : run_pipeline(text, lexicon);
      auto commands = parse_command_script(script);
      for (std::size_t i = 0; i < commands.size(); ++i) {
        try {
          doc = apply_post_edit(doc, commands[i], lexicon);
        } catch (const EditError& e) {
          err << commands_file << ": command " << i + 1 << " (" << commands[i].to_string() << "): " << e.code()
              << ": " << e.what() << '\n';
          return kInputError;
        }
      }
      auto rendered = render(doc, *detail_from(detail));
      out << rendered;
      if (!rendered.empty()) out << '\n';
      return kOk;
    }
    if (*serve) {
      ServiceOptions options;
      if (!journal_file.empty()) options.journal = journal_file;
      Service service(lexicon, options);
      err << "listening on " << host << ':' << port << '\n';
      if (!service.listen(host, port)) {
        err << "cannot bind " << host << ':' << port << '\n';
        return kInputError;
      }
      return kOk;
    }
  } catch (const InputError& e) {
    err << e.what() << '\n';
    return kInputError;
  } catch (const SynthesisError& e) {
    err << "synthesize: " << e.what() << '\n';
    return kInputError;
  } catch (const EditError& e) {
    err << commands_file << ": " << e.code() << ": " << e.what() << '\n';
    return kInputError;
  } catch (const NotationError& e) {
    err << "notation: offset " << e.position() << ": " << e.what() << '\n';
    return kInputError;
  }
  return kOk;
}

}  // namespace anusaaraka

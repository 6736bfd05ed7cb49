#pragma once

// End-to-end assembly: tokenize, analyze, group, map, annotate, generate.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "anusaaraka/grouper.hpp"
#include "anusaaraka/lexicon.hpp"
#include "anusaaraka/morph.hpp"
#include "anusaaraka/notation.hpp"

namespace anusaaraka {

struct PipelineConfig {
  std::filesystem::path lexicon_dir;
  DetailLevel detail = DetailLevel::full;
  std::string pair;  // e.g. "tel-hin"; informational
  bool debug_analyses = false;
};

/// Whitespace split, with runs of punctuation cut off as their own
/// tokens. Offsets are byte offsets into `text`.
std::vector<Token> tokenize(std::string_view text);

/// Closes a sentence after `.`, `?`, `!` or a danda, and at a line break.
std::vector<std::vector<Token>> split_sentences(std::string_view text);

/// Source analyses of one token; punctuation gets a single analysis of
/// category punctuation.
std::vector<Analysis> analyze_token(std::string_view token, const Lexicon& lexicon);

Sentence translate_sentence(const std::vector<Token>& tokens, const Lexicon& lexicon);

/// Never fails: words the lexicon cannot handle pass through verbatim
/// with a dialect mark.
Document run_pipeline(std::string_view text, const Lexicon& lexicon);

/// Line by line rendering, one output line per input line, each ending
/// in a newline. Shared by the CLI and the HTTP service.
std::string translate_text(std::string_view text, const Lexicon& lexicon, DetailLevel level);

}  // namespace anusaaraka

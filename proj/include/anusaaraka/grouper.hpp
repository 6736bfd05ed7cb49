#pragma once

// Local word grouper: combines analysed tokens into fixed-order units
// (noun plus postpositions, verb plus auxiliaries, fixed expressions),
// and the target-side splitter used before synthesis.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "anusaaraka/lexicon.hpp"
#include "anusaaraka/morph.hpp"
#include "anusaaraka/notation.hpp"

namespace anusaaraka {

struct TokenAnalyses {
  Token token;
  std::vector<Analysis> analyses;
};

struct WordGroup {
  GroupKind kind = GroupKind::singleton;
  std::size_t first_token = 0;
  std::size_t token_count = 1;
  std::vector<std::string> surfaces;  // token texts of the span
  std::vector<Analysis> head;         // every analysis of the head token
  std::size_t primary = 0;            // head analysis selected by the pattern
  std::vector<Analysis> followers;
  std::vector<std::string> group_vibhakti;
  std::optional<std::string> group_tam;
  const GroupPattern* pattern = nullptr;
  bool punctuation = false;

  const Analysis* primary_analysis() const { return head.empty() ? nullptr : &head[primary]; }
};

/// Greedy left-to-right longest match. Fixed expressions are tried
/// before category patterns; ties go to the earlier pattern.
std::vector<WordGroup> group_words(const std::vector<TokenAnalyses>& tokens, const Dictionary& dict);

/// Length of the longest match of `pattern` starting at `start`, or 0.
/// On success fills the head analysis index and the follower analyses.
std::size_t match_pattern(const GroupPattern& pattern, const std::vector<TokenAnalyses>& tokens, std::size_t start,
                          std::size_t* primary = nullptr, std::vector<Analysis>* followers = nullptr);

class GroupShapeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SplitItem {
  std::size_t node = 0;  // index into MappedGroup::nodes
  Category category = Category::particle;
  std::optional<WordRequest> request;
};

/// Per-word synthesis requests in target surface order. A bracketed
/// alternative set stays one item. Groups of more than one word must
/// match a target group pattern; throws GroupShapeError otherwise.
std::vector<SplitItem> split_group(const MappedGroup& mapped, const Dictionary& target);

}  // namespace anusaaraka

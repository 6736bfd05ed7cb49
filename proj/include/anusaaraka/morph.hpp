#pragma once

// Word analyzer (propose and test, with a one-level sandhi fallback)
// and its inverse, the word synthesizer.

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "anusaaraka/features.hpp"
#include "anusaaraka/lexicon.hpp"

namespace anusaaraka {

enum class SegmentRole { root, suffix, sandhi_part };

struct Segment {
  std::string piece;
  SegmentRole role = SegmentRole::root;

  friend bool operator==(const Segment&, const Segment&) = default;
};

struct Analysis {
  std::string root;
  Category category = Category::noun;
  FeatureBundle features;  // suffix features, then inherent ones
  std::vector<Segment> segmentation;
  std::string display;  // name shown in analysis listings
  /// For a sandhi analysis: the left and right part analyses. The
  /// compound takes root, category and features from the right part.
  std::vector<Analysis> sandhi_parts;

  bool is_compound() const { return !sandhi_parts.empty(); }

  friend bool operator==(const Analysis&, const Analysis&) = default;
};

struct SplitCandidate {
  std::string root_part;
  std::string suffix_part;
  JoinRule applied_join_rule;
  const LexEntry* entry = nullptr;
  const SuffixEntry* suffix = nullptr;
};

/// Every (root, suffix) breakup of `word` where the suffix surface is in
/// the table and the reconstructed root is in the dictionary with the
/// suffix's paradigm. Ordered by split position, then root and suffix
/// file order.
std::vector<SplitCandidate> propose_splits(std::string_view word, const Dictionary& dict);

struct SandhiSplit {
  std::size_t position = 0;
  const VariantEntry* rule = nullptr;  // boundary rule applied, if any
  std::vector<Analysis> left;
  std::vector<Analysis> right;
};

/// Binary splits of `word` whose two parts both analyze without further
/// sandhi. Boundary rules may rewrite the junction.
std::vector<SandhiSplit> split_sandhi(std::string_view word, const Dictionary& dict,
                                      const std::vector<const VariantEntry*>& boundary_rules = {});

/// All analyses: whole-word hits on indeclinable roots, then every
/// root+suffix split; sandhi analyses only when both are empty. Never
/// ranks or prunes.
std::vector<Analysis> analyze_word(std::string_view word, const Dictionary& dict,
                                   const std::vector<const VariantEntry*>& boundary_rules = {});
std::vector<Analysis> analyze_word(std::string_view word, const Lexicon& lexicon);

/// Reapplies the join rules recorded in an analysis' segmentation.
std::string reconstruct(const Analysis& analysis);

/// `root{cat=n,number=sg,case=oblique}`; compounds print as `left+right`.
std::string format_analysis(const Analysis& analysis);
/// Analyses joined by `/`.
std::string format_analyses(const std::vector<Analysis>& analyses);

class SynthesisError : public std::runtime_error {
 public:
  enum class Kind { unknown_root, no_match, ambiguous };

  SynthesisError(Kind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Generates the word for (root, category, features) directly from the
/// suffix table: the most specific compatible suffix entry of the root's
/// paradigm is joined to the root. Indeclinable roots and empty requests
/// return the root itself.
std::string synthesize(std::string_view root, Category category, const FeatureBundle& features,
                       const Dictionary& dict);

/// Applies a suffix entry's join rule to `root`; empty if the root does
/// not end with the rule's deletion string.
std::optional<std::string> attach_suffix(std::string_view root, const SuffixEntry& suffix);

}  // namespace anusaaraka

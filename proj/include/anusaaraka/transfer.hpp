#pragma once

// Group mapper: root substitution, function-morpheme templates, source
// agreement annotation, and realisation of target word forms.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "anusaaraka/grouper.hpp"
#include "anusaaraka/lexicon.hpp"
#include "anusaaraka/notation.hpp"

namespace anusaaraka {

class TransferError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Substitutes target material for a source group. Forms of requested
/// words hold the target root until `generate_group` runs.
MappedGroup map_group(const WordGroup& group, const Lexicon& lexicon);

/// Pure expansion of the TAM table entry for `tam`. The fused element
/// shows as its label. Throws TransferError for an unmapped label.
std::vector<RenderNode> map_tam(std::string_view tam, const Lexicon& lexicon);

/// Attaches the source person, gender and number that the target forms
/// leave unexpressed. Verb groups carry them on the template's agreement
/// slot or on their last word; nominal groups only on pronoun heads.
MappedGroup annotate_agreement(MappedGroup mapped, const FeatureBundle& source_features);

/// Annotation items such as {"3", "~m.", "e."}; keys fixed by `fixed`
/// are left out.
std::vector<std::string> agreement_items(const FeatureBundle& source, const FeatureBundle& fixed);

/// Source order is kept.
std::vector<MappedGroup> order_clauses(std::vector<MappedGroup> groups);

/// The request that re-synthesizes `form`, when exactly one exists.
std::optional<WordRequest> recover_request(std::string_view form, const Dictionary& target);

/// Synthesizes `node` (and the words inside its alternatives) from its
/// request. Failures leave the root with a dialect mark.
void realize_node(RenderNode& node, const Dictionary& target);

/// Checks the target group shape, then realizes every node. A group
/// without a target pattern keeps its words and marks its head.
void generate_group(MappedGroup& mapped, const Dictionary& target);

}  // namespace anusaaraka

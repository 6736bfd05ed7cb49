#pragma once

// Output notation: data model for rendered word groups, the staged
// renderer, and the parser for the full-detail notation.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "anusaaraka/features.hpp"

namespace anusaaraka {

enum class GroupKind { noun_group, verb_group, fixed_expression, singleton, unknown };

std::string_view group_kind_name(GroupKind k);
std::optional<GroupKind> parse_group_kind(std::string_view text);

/// Which source morphemes a node carries. Used for conservation checks.
enum Origin : unsigned {
  kOriginRoot = 1u << 0,
  kOriginTam = 1u << 1,
  kOriginCase = 1u << 2,
  kOriginQmarker = 1u << 3,
  kOriginFollower = 1u << 4,
  kOriginInserted = 1u << 5,
  kOriginEdit = 1u << 6,
};

/// A target word to be produced by the synthesizer. An empty feature
/// bundle asks for the bare root.
struct WordRequest {
  std::string root;
  Category category = Category::particle;
  FeatureBundle features;

  friend bool operator==(const WordRequest&, const WordRequest&) = default;
};

struct RenderNode {
  std::string form;  // "*" is the unresolved postposition placeholder
  std::vector<std::vector<RenderNode>> alternatives;
  std::vector<std::string> annotation;  // rendered as {a_b_c}
  bool dialect_marked = false;          // rendered as a trailing backtick
  bool manual = false;                  // free-text override by a post-editor
  bool agreement_slot = false;          // source agreement annotation goes here
  bool is_head = false;
  std::optional<WordRequest> request;
  std::size_t token = 0;  // provenance: source token index within the sentence
  unsigned origin = 0;

  bool is_placeholder() const { return form == "*"; }
  bool is_choice() const { return form.empty() && !alternatives.empty(); }

  friend bool operator==(const RenderNode&, const RenderNode&) = default;
};

struct MappedGroup {
  GroupKind kind = GroupKind::singleton;
  std::size_t first_token = 0;
  std::size_t token_count = 1;
  std::vector<RenderNode> nodes;
  bool punctuation = false;
  bool suppresses_ne = false;
  bool perfective = false;
  std::optional<std::string> tam;
  /// Agreement features already expressed by the target forms.
  FeatureBundle fixed_by_target;

  friend bool operator==(const MappedGroup&, const MappedGroup&) = default;
};

struct Token {
  std::string text;
  std::size_t offset = 0;  // byte offset in the input line

  friend bool operator==(const Token&, const Token&) = default;
};

struct Sentence {
  std::vector<Token> tokens;
  std::vector<MappedGroup> groups;

  friend bool operator==(const Sentence&, const Sentence&) = default;
};

struct Document {
  std::vector<Sentence> sentences;

  friend bool operator==(const Document&, const Document&) = default;
};

/// 0 shows primary forms only, 1 adds bracketed alternatives,
/// 2 adds feature annotations and dialect markers.
enum class DetailLevel { plain = 0, alternatives = 1, full = 2 };

std::optional<DetailLevel> parse_detail_level(std::string_view text);

std::string render_node(const RenderNode& node, DetailLevel level);
std::string render_sequence(const std::vector<RenderNode>& nodes, DetailLevel level);
std::string render_group(const MappedGroup& group, DetailLevel level);
std::string render_sentence(const Sentence& sentence, DetailLevel level);
std::string render(const Document& doc, DetailLevel level);

class NotationError : public std::runtime_error {
 public:
  NotationError(const std::string& message, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Rebuilds the group/node structure of a rendered text. Sentences are
/// closed by `.`, `?`, `!` or a danda. Throws NotationError.
Document parse_notation(std::string_view text, DetailLevel level = DetailLevel::full);

/// Parses one node (form, alternatives, annotation, tick). Used for
/// mapping templates, where `$head` may appear as a form.
RenderNode parse_node(std::string_view text);

/// Byte length of the punctuation mark at `pos` (`,.?!;:` or a danda), or 0.
std::size_t punctuation_length(std::string_view text, std::size_t pos);
bool is_punctuation_text(std::string_view text);
bool is_sentence_final(std::string_view text);

}  // namespace anusaaraka

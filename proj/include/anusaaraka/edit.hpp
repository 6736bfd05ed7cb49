#pragma once

// Pre-editing diagnostics on source text and the level-1 post-editing
// command engine on rendered documents.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "anusaaraka/lexicon.hpp"
#include "anusaaraka/notation.hpp"

namespace anusaaraka {

enum class IssueKind { nonstandard_spelling, unanalyzable, suspect_missplit };

std::string_view issue_kind_name(IssueKind k);

struct PreEditIssue {
  std::size_t token = 0;   // index in tokenize(text)
  std::size_t span = 1;    // tokens covered; 2 for a pair to rejoin
  std::size_t offset = 0;  // byte range of the covered tokens
  std::size_t length = 0;
  std::string text;
  IssueKind kind = IssueKind::unanalyzable;
  std::vector<std::string> suggestions;  // each replaces the whole span

  friend bool operator==(const PreEditIssue&, const PreEditIssue&) = default;
};

std::vector<PreEditIssue> check_pre_edit(std::string_view text, const Lexicon& lexicon);

/// Replaces tokens [token, token + span) with `replacement`; every byte
/// outside that range is kept. Throws std::out_of_range.
std::string apply_pre_edit(std::string_view text, std::size_t token, std::string_view replacement,
                           std::size_t span = 1);

enum class EditVerb { set_gnp, insert_ne, resolve_vibhakti, choose_alternative, replace_form };

std::string_view edit_verb_name(EditVerb v);
std::optional<EditVerb> parse_edit_verb(std::string_view text);

/// `sentence.group[.node]`, all zero-based.
struct NodePath {
  std::size_t sentence = 0;
  std::size_t group = 0;
  std::optional<std::size_t> node;

  static NodePath parse(std::string_view text);
  std::string to_string() const;

  friend bool operator==(const NodePath&, const NodePath&) = default;
};

class EditError : public std::runtime_error {
 public:
  enum class Kind { invalid_command, invalid_position, guard, synthesis };

  EditError(Kind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}
  Kind kind() const { return kind_; }
  std::string_view code() const;

 private:
  Kind kind_;
};

/// One command per line: `0.2 set_gnp fem sg 3`, `0.0 insert_ne`,
/// `0.1.3 resolve_vibhakti meM`, `0.2.2 choose_alternative 1`,
/// `0.3.0 replace_form text`.
struct EditCommand {
  NodePath position;
  EditVerb verb = EditVerb::replace_form;
  std::vector<std::string> args;

  /// Throws EditError (invalid_command) on malformed lines.
  static EditCommand parse(std::string_view line);
  static EditCommand make(NodePath position, std::string_view verb, std::vector<std::string> args);
  std::string to_string() const;

  friend bool operator==(const EditCommand&, const EditCommand&) = default;
};

/// Reads a command script; blank lines and `#` comments are skipped.
std::vector<EditCommand> parse_command_script(std::string_view text);

/// Returns the edited copy; `doc` is never modified. Throws EditError.
Document apply_post_edit(const Document& doc, const EditCommand& cmd, const Lexicon& lexicon);

}  // namespace anusaaraka

#pragma once

// Declarative language data: root dictionaries, suffix tables, group
// patterns, bilingual mappings and spelling variants. File layouts are
// documented in docs/lexicon-format.md.

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "anusaaraka/features.hpp"
#include "anusaaraka/notation.hpp"

namespace anusaaraka {

struct SourceLocation {
  std::string file;
  std::size_t line = 0;

  std::string to_string() const;
};

class LexiconError : public std::runtime_error {
 public:
  LexiconError(const std::string& message, SourceLocation where);
  const SourceLocation& where() const { return where_; }

 private:
  SourceLocation where_;
};

/// Boundary change applied when a suffix attaches: strip
/// `delete_from_root` from the end of the root, then append
/// `insert_at_boundary` before the suffix surface.
struct JoinRule {
  std::string delete_from_root;
  std::string insert_at_boundary;

  friend bool operator==(const JoinRule&, const JoinRule&) = default;
};

struct LexEntry {
  std::string root;
  Category category = Category::noun;
  std::string paradigm;
  FeatureBundle inherent;
  std::string gloss;  // display name in analysis listings, defaults to root
  SourceLocation where;

  const std::string& display() const { return gloss.empty() ? root : gloss; }
};

struct SuffixEntry {
  std::string surface;  // empty for the zero suffix
  std::string paradigm;
  std::optional<Category> category;
  FeatureBundle features;
  JoinRule join;
  SourceLocation where;
};

struct Paradigm {
  std::string id;
  std::optional<Category> category;  // nullopt: any category
  SourceLocation where;
};

struct PatternItem {
  enum class Repeat { one, optional, plus, star };

  std::optional<Category> category;  // set for category items
  std::string root;                  // set for `=root` items
  Repeat repeat = Repeat::one;

  bool matches(std::string_view r, Category c) const;
  std::string to_string() const;
};

struct TargetRoot {
  std::string root;
  Category category = Category::noun;

  friend bool operator==(const TargetRoot&, const TargetRoot&) = default;
};

struct RootMapping {
  std::string source_root;
  Category source_category = Category::noun;
  std::vector<TargetRoot> targets;  // first is the default rendering
  SourceLocation where;
};

struct GroupPattern {
  GroupKind kind = GroupKind::noun_group;
  PatternItem head;
  std::vector<PatternItem> followers;
  std::vector<TargetRoot> meaning;  // non-empty for fixed expressions
  SourceLocation where;
};

/// `+label;k=v;gnp` in a mapping template: the element is realised by
/// synthesizing the group head with these target features.
struct FusedDirective {
  std::string label;
  FeatureBundle features;
  bool pass_gnp = false;

  friend bool operator==(const FusedDirective&, const FusedDirective&) = default;
};

struct TemplateElement {
  std::optional<FusedDirective> fused;
  RenderNode node;

  friend bool operator==(const TemplateElement&, const TemplateElement&) = default;
};

/// Rendering of one source function morpheme (a TAM label, a case
/// value or a question marker) in the target dialect.
struct TamMapping {
  std::string key;    // TAM, case or qmarker
  std::string value;  // the source label
  std::string template_text;
  std::vector<TemplateElement> rendering;
  bool suppresses_ne = false;
  bool dialect_marked = false;
  bool perfective = false;
  SourceLocation where;
};

enum class VariantKind { spelling, sandhi_join, sandhi_missplit };

std::string_view variant_kind_name(VariantKind k);

struct VariantEntry {
  std::string variant;
  std::string standard;
  VariantKind kind = VariantKind::spelling;
  SourceLocation where;

  /// Rows like `A  a+a  sandhi_join` describe a word-internal boundary:
  /// surface `A` stands for left part ending `a` plus right part starting `a`.
  bool is_boundary_rule() const;
};

/// Roots, suffixes and group patterns for one language.
class Dictionary {
 public:
  const std::vector<LexEntry>& roots() const { return roots_; }
  const std::vector<SuffixEntry>& suffixes() const { return suffixes_; }
  const std::vector<Paradigm>& paradigms() const { return paradigms_; }
  const std::vector<GroupPattern>& patterns() const { return patterns_; }

  /// Entries whose root equals `surface`, in file order.
  std::vector<const LexEntry*> lookup_root(std::string_view surface) const;
  /// Suffix entries with this surface that belong to `paradigm`.
  std::vector<const SuffixEntry*> lookup_suffix(std::string_view surface, std::string_view paradigm) const;
  std::vector<const SuffixEntry*> suffixes_with_surface(std::string_view surface) const;
  std::vector<const SuffixEntry*> paradigm_suffixes(std::string_view paradigm) const;
  const Paradigm* paradigm(std::string_view id) const;
  /// Declared with no suffix rows; such roots only match whole words.
  bool indeclinable(std::string_view paradigm) const;
  bool has_root(std::string_view root, Category category) const;

 private:
  friend class LexiconLoader;
  void build_indexes();

  std::vector<LexEntry> roots_;
  std::vector<SuffixEntry> suffixes_;
  std::vector<Paradigm> paradigms_;
  std::vector<GroupPattern> patterns_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> root_index_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> surface_index_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> paradigm_index_;
};

/// Immutable after loading; safe to share between threads.
class Lexicon {
 public:
  const Dictionary& source() const { return source_; }
  const Dictionary& target() const { return target_; }
  const std::vector<RootMapping>& root_mappings() const { return root_mappings_; }
  const std::vector<TamMapping>& feature_mappings() const { return feature_mappings_; }
  const std::vector<VariantEntry>& variants() const { return variants_; }
  const std::vector<std::string>& files() const { return files_; }

  const RootMapping* mapping_for(std::string_view root, Category category) const;
  const TamMapping* feature_mapping(std::string_view key, std::string_view value) const;
  const TamMapping* tam_mapping(std::string_view label) const { return feature_mapping("TAM", label); }
  /// Word-level variant rows (not boundary rules) whose variant is `word`.
  std::vector<const VariantEntry*> variants_for(std::string_view word) const;
  std::vector<const VariantEntry*> boundary_rules() const;

 private:
  friend class LexiconLoader;

  Dictionary source_;
  Dictionary target_;
  std::vector<RootMapping> root_mappings_;
  std::vector<TamMapping> feature_mappings_;
  std::vector<VariantEntry> variants_;
  std::vector<std::string> files_;
};

/// In-memory data file; `name` carries the extension that selects the
/// record layout, and a `target` filename prefix selects the target side.
struct DataFile {
  std::string name;
  std::string content;
};

/// Loads files and directories (searched recursively for the six data
/// extensions). Files are read in sorted path order, so the result does
/// not depend on argument order. Throws LexiconError.
Lexicon load_lexicon(const std::vector<std::filesystem::path>& paths);
Lexicon load_lexicon(std::vector<DataFile> files);

/// Parses one mapping template such as `+yA HE jo * vaHa`.
std::vector<TemplateElement> parse_template(std::string_view text);

struct Diagnostic {
  std::string code;
  std::string message;
  SourceLocation where;

  std::string to_string() const;
};

/// Cross-reference checks; an empty result means the data is consistent.
std::vector<Diagnostic> validate_lexicon(const Lexicon& lexicon);

}  // namespace anusaaraka

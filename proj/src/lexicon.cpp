#include "anusaaraka/lexicon.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace anusaaraka {

namespace fs = std::filesystem;

std::string SourceLocation::to_string() const {
  if (file.empty()) return "<lexicon>";
  if (line == 0) return file;
  return file + ":" + std::to_string(line);
}

LexiconError::LexiconError(const std::string& message, SourceLocation where)
    : std::runtime_error(where.to_string() + ": " + message), where_(std::move(where)) {}

std::string Diagnostic::to_string() const { return where.to_string() + ": " + code + ": " + message; }

std::string_view variant_kind_name(VariantKind k) {
  switch (k) {
    case VariantKind::spelling:
      return "spelling";
    case VariantKind::sandhi_join:
      return "sandhi_join";
    case VariantKind::sandhi_missplit:
      return "sandhi_missplit";
  }
  return "spelling";
}

bool VariantEntry::is_boundary_rule() const {
  return kind == VariantKind::sandhi_join && standard.find('+') != std::string::npos;
}

bool PatternItem::matches(std::string_view r, Category c) const {
  if (!root.empty()) return r == root;
  return category && *category == c;
}

std::string PatternItem::to_string() const {
  std::string out = root.empty() ? std::string(category_name(*category)) : "=" + root;
  switch (repeat) {
    case Repeat::one:
      break;
    case Repeat::optional:
      out += '?';
      break;
    case Repeat::plus:
      out += '+';
      break;
    case Repeat::star:
      out += '*';
      break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Dictionary

namespace {

template <class Map>
const std::vector<std::size_t>* find_index(const Map& m, std::string_view key) {
  auto it = m.find(key);
  return it == m.end() ? nullptr : &it->second;
}

}  // namespace

void Dictionary::build_indexes() {
  root_index_.clear();
  surface_index_.clear();
  paradigm_index_.clear();
  for (std::size_t i = 0; i < roots_.size(); ++i) root_index_[roots_[i].root].push_back(i);
  for (std::size_t i = 0; i < suffixes_.size(); ++i) {
    surface_index_[suffixes_[i].surface].push_back(i);
    paradigm_index_[suffixes_[i].paradigm].push_back(i);
  }
}

std::vector<const LexEntry*> Dictionary::lookup_root(std::string_view surface) const {
  std::vector<const LexEntry*> out;
  if (const auto* idx = find_index(root_index_, surface)) {
    for (auto i : *idx) out.push_back(&roots_[i]);
  }
  return out;
}

std::vector<const SuffixEntry*> Dictionary::suffixes_with_surface(std::string_view surface) const {
  std::vector<const SuffixEntry*> out;
  if (const auto* idx = find_index(surface_index_, surface)) {
    for (auto i : *idx) out.push_back(&suffixes_[i]);
  }
  return out;
}

std::vector<const SuffixEntry*> Dictionary::lookup_suffix(std::string_view surface,
                                                          std::string_view paradigm) const {
  std::vector<const SuffixEntry*> out;
  for (const auto* s : suffixes_with_surface(surface)) {
    if (s->paradigm == paradigm) out.push_back(s);
  }
  return out;
}

std::vector<const SuffixEntry*> Dictionary::paradigm_suffixes(std::string_view paradigm) const {
  std::vector<const SuffixEntry*> out;
  if (const auto* idx = find_index(paradigm_index_, paradigm)) {
    for (auto i : *idx) out.push_back(&suffixes_[i]);
  }
  return out;
}

const Paradigm* Dictionary::paradigm(std::string_view id) const {
  for (const auto& p : paradigms_) {
    if (p.id == id) return &p;
  }
  return nullptr;
}

bool Dictionary::indeclinable(std::string_view paradigm) const {
  return find_index(paradigm_index_, paradigm) == nullptr;
}

bool Dictionary::has_root(std::string_view root, Category category) const {
  for (const auto* e : lookup_root(root)) {
    if (e->category == category) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Lexicon

const RootMapping* Lexicon::mapping_for(std::string_view root, Category category) const {
  for (const auto& m : root_mappings_) {
    if (m.source_root == root && m.source_category == category) return &m;
  }
  return nullptr;
}

const TamMapping* Lexicon::feature_mapping(std::string_view key, std::string_view value) const {
  for (const auto& m : feature_mappings_) {
    if (m.key == key && m.value == value) return &m;
  }
  return nullptr;
}

std::vector<const VariantEntry*> Lexicon::variants_for(std::string_view word) const {
  std::vector<const VariantEntry*> out;
  for (const auto& v : variants_) {
    if (v.variant == word && !v.is_boundary_rule()) out.push_back(&v);
  }
  return out;
}

std::vector<const VariantEntry*> Lexicon::boundary_rules() const {
  std::vector<const VariantEntry*> out;
  for (const auto& v : variants_) {
    if (v.is_boundary_rule()) out.push_back(&v);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Templates

namespace {

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    auto at = text.find(sep, pos);
    if (at == std::string_view::npos) {
      out.emplace_back(text.substr(pos));
      return out;
    }
    out.emplace_back(text.substr(pos, at - pos));
    pos = at + 1;
  }
}

std::string empty_marker(std::string_view field) { return field == "-" ? std::string() : std::string(field); }

std::size_t count_slots(RenderNode& node, std::size_t& placeholders) {
  std::size_t slots = 0;
  if (node.is_placeholder()) ++placeholders;
  if (node.annotation.size() == 1 && node.annotation.front() == "gnp") {
    node.annotation.clear();
    node.agreement_slot = true;
    ++slots;
  }
  for (auto& alt : node.alternatives) {
    for (auto& n : alt) slots += count_slots(n, placeholders);
  }
  return slots;
}

}  // namespace

std::vector<TemplateElement> parse_template(std::string_view text) {
  std::vector<TemplateElement> out;
  std::size_t placeholders = 0;
  std::size_t slots = 0;
  std::size_t fused = 0;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) {
    TemplateElement el;
    if (token.front() == '+') {
      if (!out.empty()) throw std::invalid_argument("a fused '+' element must come first");
      FusedDirective d;
      auto parts = split(std::string_view(token).substr(1), ';');
      d.label = parts.front();
      if (!d.label.empty()) d.features.set("TAM", d.label);
      for (std::size_t i = 1; i < parts.size(); ++i) {
        if (parts[i] == "gnp") {
          d.pass_gnp = true;
        } else {
          auto extra = FeatureBundle::parse(parts[i]);
          for (const auto& [k, v] : extra) d.features.set(k, v);
        }
      }
      el.node.form = d.label;
      el.fused = std::move(d);
      ++fused;
    } else {
      try {
        el.node = parse_node(token);
      } catch (const NotationError& e) {
        throw std::invalid_argument("bad template element '" + token + "': " + e.what());
      }
      slots += count_slots(el.node, placeholders);
    }
    out.push_back(std::move(el));
  }
  if (out.empty()) throw std::invalid_argument("empty template");
  if (placeholders > 1) throw std::invalid_argument("placeholder '*' occurs more than once");
  if (slots > 1) throw std::invalid_argument("more than one {gnp} slot");
  if (fused > 1) throw std::invalid_argument("more than one fused '+' element");
  return out;
}

// ---------------------------------------------------------------------------
// Loading

class LexiconLoader {
 public:
  Lexicon load(std::vector<DataFile> files) {
    std::sort(files.begin(), files.end(), [](const DataFile& a, const DataFile& b) { return a.name < b.name; });
    bool any_roots = false;
    for (const auto& f : files) {
      lex_.files_.push_back(f.name);
      if (ext(f.name) == ".roots" && !is_target(f.name)) any_roots = true;
    }
    if (!any_roots) throw LexiconError("no dictionary file found", SourceLocation{});

    // Paradigm declarations first so references resolve regardless of order.
    for (const auto& f : files) {
      if (ext(f.name) == ".suffixes") parse_lines(f, [&](auto& cols, auto& where) { paradigm_row(f, cols, where); });
    }
    for (const auto& f : files) {
      auto e = ext(f.name);
      if (e == ".roots") {
        parse_lines(f, [&](auto& cols, auto& where) { root_row(f, cols, where); });
      } else if (e == ".suffixes") {
        parse_lines(f, [&](auto& cols, auto& where) { suffix_row(f, cols, where); });
      } else if (e == ".groups") {
        parse_lines(f, [&](auto& cols, auto& where) { group_row(f, cols, where); });
      } else if (e == ".map-roots") {
        parse_lines(f, [&](auto& cols, auto& where) { map_root_row(cols, where); });
      } else if (e == ".map-tam") {
        parse_lines(f, [&](auto& cols, auto& where) { map_tam_row(cols, where); });
      } else if (e == ".variants") {
        parse_lines(f, [&](auto& cols, auto& where) { variant_row(cols, where); });
      }
    }
    lex_.source_.build_indexes();
    lex_.target_.build_indexes();
    return std::move(lex_);
  }

 private:
  using Columns = std::vector<std::string>;

  static std::string ext(const std::string& name) { return fs::path(name).extension().string(); }
  static bool is_target(const std::string& name) { return fs::path(name).filename().string().starts_with("target"); }

  Dictionary& side(const DataFile& f) { return is_target(f.name) ? lex_.target_ : lex_.source_; }

  template <class Fn>
  void parse_lines(const DataFile& f, Fn&& fn) {
    std::istringstream in(f.content);
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
      ++number;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line.front() == '#') continue;
      SourceLocation where{f.name, number};
      auto cols = split(line, '\t');
      try {
        fn(cols, where);
      } catch (const FeatureError& e) {
        throw LexiconError(e.what(), where);
      } catch (const std::invalid_argument& e) {
        throw LexiconError(e.what(), where);
      }
    }
  }

  static void need(const Columns& cols, std::size_t min, std::size_t max, const SourceLocation& where) {
    if (cols.size() < min || cols.size() > max) {
      throw LexiconError("expected " + std::to_string(min) + (min == max ? "" : "-" + std::to_string(max)) +
                             " tab-separated fields, found " + std::to_string(cols.size()),
                         where);
    }
  }

  static Category category(const std::string& text, const SourceLocation& where) {
    auto c = parse_category(text);
    if (!c) throw LexiconError("unknown category '" + text + "'", where);
    return *c;
  }

  const Paradigm& paradigm_ref(Dictionary& d, const std::string& id, const SourceLocation& where) {
    const auto* p = d.paradigm(id);
    if (!p) throw LexiconError("dangling reference to unknown paradigm " + id, where);
    return *p;
  }

  void paradigm_row(const DataFile& f, const Columns& cols, const SourceLocation& where) {
    if (cols.front() != "@paradigm") return;
    need(cols, 3, 3, where);
    auto& d = side(f);
    if (d.paradigm(cols[1])) throw LexiconError("duplicate paradigm " + cols[1], where);
    Paradigm p{cols[1], std::nullopt, where};
    if (cols[2] != "*") p.category = category(cols[2], where);
    d.paradigms_.push_back(std::move(p));
  }

  void root_row(const DataFile& f, const Columns& cols, const SourceLocation& where) {
    need(cols, 3, 5, where);
    auto& d = side(f);
    LexEntry e;
    e.root = cols[0];
    if (e.root.empty()) throw LexiconError("empty root", where);
    e.category = category(cols[1], where);
    e.paradigm = cols[2];
    const auto& p = paradigm_ref(d, e.paradigm, where);
    if (p.category && *p.category != e.category) {
      throw LexiconError("root " + e.root + " is a " + std::string(category_name(e.category)) + " but paradigm " +
                             p.id + " is for " + std::string(category_name(*p.category)),
                         where);
    }
    if (cols.size() > 3) e.inherent = FeatureBundle::parse(cols[3]);
    if (cols.size() > 4) e.gloss = empty_marker(cols[4]);
    e.where = where;
    for (const auto& other : d.roots_) {
      if (other.root == e.root && other.category == e.category && other.paradigm == e.paradigm) {
        throw LexiconError("duplicate root " + e.root + " (" + std::string(category_name(e.category)) + ", " +
                               e.paradigm + "), first at " + other.where.to_string(),
                           where);
      }
    }
    d.roots_.push_back(std::move(e));
  }

  void suffix_row(const DataFile& f, const Columns& cols, const SourceLocation& where) {
    if (cols.front() == "@paradigm") return;
    need(cols, 3, 5, where);
    auto& d = side(f);
    SuffixEntry s;
    s.surface = empty_marker(cols[0]);
    s.features = FeatureBundle::parse(cols[2]);
    for (const auto& [k, v] : s.features) {
      if (k == "gender" || k == "person") throw LexiconError("feature '" + k + "' is not a suffix feature", where);
    }
    if (cols.size() > 3) s.join.delete_from_root = empty_marker(cols[3]);
    if (cols.size() > 4) s.join.insert_at_boundary = empty_marker(cols[4]);
    s.where = where;
    for (const auto& id : split(cols[1], ',')) {
      const auto& p = paradigm_ref(d, id, where);
      SuffixEntry copy = s;
      copy.paradigm = id;
      copy.category = p.category;
      d.suffixes_.push_back(std::move(copy));
    }
  }

  static std::vector<TargetRoot> targets(const std::string& text, const SourceLocation& where) {
    std::vector<TargetRoot> out;
    for (const auto& item : split(text, ',')) {
      auto colon = item.rfind(':');
      if (colon == std::string::npos || colon == 0) {
        throw LexiconError("expected root:category, found '" + item + "'", where);
      }
      out.push_back(TargetRoot{item.substr(0, colon), category(item.substr(colon + 1), where)});
    }
    return out;
  }

  static PatternItem pattern_item(std::string text, const SourceLocation& where) {
    PatternItem item;
    if (!text.empty()) {
      switch (text.back()) {
        case '?':
          item.repeat = PatternItem::Repeat::optional;
          break;
        case '+':
          item.repeat = PatternItem::Repeat::plus;
          break;
        case '*':
          item.repeat = PatternItem::Repeat::star;
          break;
        default:
          break;
      }
      if (item.repeat != PatternItem::Repeat::one) text.pop_back();
    }
    if (text.size() > 1 && text.front() == '=') {
      item.root = text.substr(1);
    } else {
      item.category = category(text, where);
    }
    return item;
  }

  void group_row(const DataFile& f, const Columns& cols, const SourceLocation& where) {
    need(cols, 3, 4, where);
    GroupPattern g;
    auto kind = parse_group_kind(cols[0]);
    if (!kind || *kind == GroupKind::singleton || *kind == GroupKind::unknown) {
      throw LexiconError("bad group kind '" + cols[0] + "'", where);
    }
    g.kind = *kind;
    g.head = pattern_item(cols[1], where);
    if (g.head.repeat != PatternItem::Repeat::one) throw LexiconError("group head cannot repeat", where);
    if (cols[2] != "-") {
      std::istringstream in(cols[2]);
      std::string tok;
      while (in >> tok) g.followers.push_back(pattern_item(tok, where));
    }
    if (cols.size() > 3 && cols[3] != "-") g.meaning = targets(cols[3], where);
    if (g.kind == GroupKind::fixed_expression) {
      if (g.followers.empty()) throw LexiconError("fixed expression needs at least two words", where);
      if (g.meaning.empty()) throw LexiconError("fixed expression without group meaning", where);
    }
    g.where = where;
    side(f).patterns_.push_back(std::move(g));
  }

  void map_root_row(const Columns& cols, const SourceLocation& where) {
    need(cols, 3, 3, where);
    RootMapping m;
    m.source_root = cols[0];
    m.source_category = category(cols[1], where);
    m.targets = targets(cols[2], where);
    m.where = where;
    if (const auto* dup = lex_.mapping_for(m.source_root, m.source_category)) {
      throw LexiconError("duplicate mapping for " + m.source_root + ", first at " + dup->where.to_string(), where);
    }
    lex_.root_mappings_.push_back(std::move(m));
  }

  void map_tam_row(const Columns& cols, const SourceLocation& where) {
    need(cols, 2, 3, where);
    TamMapping m;
    auto eq = cols[0].find('=');
    if (eq == std::string::npos) throw LexiconError("expected key=value, found '" + cols[0] + "'", where);
    m.key = cols[0].substr(0, eq);
    m.value = cols[0].substr(eq + 1);
    if (m.key != "TAM" && m.key != "case" && m.key != "qmarker") {
      throw LexiconError("mappable keys are TAM, case and qmarker, not '" + m.key + "'", where);
    }
    m.template_text = cols[1];
    m.rendering = parse_template(cols[1]);
    if (cols.size() > 2 && cols[2] != "-") {
      for (const auto& flag : split(cols[2], ',')) {
        if (flag == "suppress_ne") {
          m.suppresses_ne = true;
        } else if (flag == "dialect") {
          m.dialect_marked = true;
        } else if (flag == "perfective") {
          m.perfective = true;
        } else {
          throw LexiconError("unknown mapping flag '" + flag + "'", where);
        }
      }
    }
    m.where = where;
    if (const auto* dup = lex_.feature_mapping(m.key, m.value)) {
      throw LexiconError("duplicate mapping for " + cols[0] + ", first at " + dup->where.to_string(), where);
    }
    lex_.feature_mappings_.push_back(std::move(m));
  }

  void variant_row(const Columns& cols, const SourceLocation& where) {
    need(cols, 3, 3, where);
    VariantEntry v;
    v.variant = cols[0];
    v.standard = cols[1];
    if (cols[2] == "spelling") {
      v.kind = VariantKind::spelling;
    } else if (cols[2] == "sandhi_join") {
      v.kind = VariantKind::sandhi_join;
    } else if (cols[2] == "sandhi_missplit") {
      v.kind = VariantKind::sandhi_missplit;
    } else {
      throw LexiconError("unknown variant kind '" + cols[2] + "'", where);
    }
    if (v.variant.empty() || v.standard.empty()) throw LexiconError("empty variant field", where);
    if (v.variant == v.standard) throw LexiconError("variant equals its standard form", where);
    if (v.is_boundary_rule() && std::count(v.standard.begin(), v.standard.end(), '+') != 1) {
      throw LexiconError("boundary rule needs exactly one '+'", where);
    }
    for (const auto& other : lex_.variants_) {
      if (other.variant == v.variant && other.standard == v.standard) {
        throw LexiconError("duplicate variant " + v.variant + ", first at " + other.where.to_string(), where);
      }
    }
    v.where = where;
    lex_.variants_.push_back(std::move(v));
  }

  Lexicon lex_;
};

namespace {

bool is_data_file(const fs::path& p) {
  static const std::set<std::string> kExts = {".roots", ".suffixes", ".groups", ".map-roots", ".map-tam", ".variants"};
  return kExts.count(p.extension().string()) > 0;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw LexiconError("cannot open file", SourceLocation{p.string(), 0});
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

Lexicon load_lexicon(const std::vector<fs::path>& paths) {
  std::vector<fs::path> found;
  for (const auto& p : paths) {
    if (fs::is_directory(p)) {
      for (const auto& entry : fs::recursive_directory_iterator(p, fs::directory_options::follow_directory_symlink)) {
        if (is_data_file(entry.path()) && fs::is_regular_file(entry.path())) found.push_back(entry.path());
      }
    } else if (fs::exists(p)) {
      found.push_back(p);
    } else {
      throw LexiconError("no such file or directory", SourceLocation{p.string(), 0});
    }
  }
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  std::vector<DataFile> files;
  for (const auto& p : found) files.push_back(DataFile{p.string(), read_file(p)});
  return load_lexicon(std::move(files));
}

Lexicon load_lexicon(std::vector<DataFile> files) { return LexiconLoader().load(std::move(files)); }

// ---------------------------------------------------------------------------
// Validation

std::vector<Diagnostic> validate_lexicon(const Lexicon& lexicon) {
  std::vector<Diagnostic> out;
  const auto& src = lexicon.source();
  const auto& tgt = lexicon.target();

  for (const auto& e : src.roots()) {
    if (e.category == Category::punctuation) continue;
    if (!lexicon.mapping_for(e.root, e.category)) {
      out.push_back({"unmapped-root",
                     "source root " + e.root + " (" + std::string(category_name(e.category)) + ") has no target mapping",
                     e.where});
    }
  }

  std::set<std::pair<std::string, std::string>> reported;
  for (const auto& s : src.suffixes()) {
    for (const auto& [k, v] : s.features) {
      if (k != "TAM" && k != "case" && k != "qmarker") continue;
      if (v == "0" || v == "any") continue;
      for (const auto& label : split_alternatives(v)) {
        if (lexicon.feature_mapping(k, label) || !reported.insert({k, label}).second) continue;
        out.push_back({"unmapped-feature", k + " label " + label + " has no mapping", s.where});
      }
    }
  }

  for (const auto& m : lexicon.root_mappings()) {
    if (!src.has_root(m.source_root, m.source_category)) {
      out.push_back({"unknown-source-root", "mapping names unknown source root " + m.source_root, m.where});
    }
    for (const auto& t : m.targets) {
      if (!tgt.has_root(t.root, t.category)) {
        out.push_back({"unknown-target-root",
                       "target root " + t.root + " (" + std::string(category_name(t.category)) +
                           ") is not in the target dictionary",
                       m.where});
      }
    }
  }

  auto check_patterns = [&](const Dictionary& d, bool source_side) {
    for (const auto& g : d.patterns()) {
      std::vector<const PatternItem*> items{&g.head};
      for (const auto& f : g.followers) items.push_back(&f);
      for (const auto* item : items) {
        if (!item->root.empty() && d.lookup_root(item->root).empty()) {
          out.push_back({"unknown-pattern-root", "group pattern names unknown root " + item->root, g.where});
        }
      }
      if (!source_side) continue;
      for (const auto& t : g.meaning) {
        if (!tgt.has_root(t.root, t.category)) {
          out.push_back({"unknown-target-root", "group meaning " + t.root + " is not in the target dictionary", g.where});
        }
      }
    }
  };
  check_patterns(src, true);
  check_patterns(tgt, false);
  return out;
}

}  // namespace anusaaraka

#include "anusaaraka/morph.hpp"

#include <algorithm>
#include <set>

namespace anusaaraka {

namespace {

Analysis from_candidate(const SplitCandidate& c) {
  Analysis a;
  a.root = c.entry->root;
  a.category = c.entry->category;
  a.features = c.suffix->features;
  a.features.merge_missing(c.entry->inherent);
  a.display = c.entry->display();
  a.segmentation = {{c.root_part, SegmentRole::root}, {c.suffix_part, SegmentRole::suffix}};
  return a;
}

Analysis whole_word(const LexEntry& e) {
  Analysis a;
  a.root = e.root;
  a.category = e.category;
  a.features = e.inherent;
  a.display = e.display();
  a.segmentation = {{e.root, SegmentRole::root}};
  return a;
}

std::vector<Analysis> plain_analyses(std::string_view word, const Dictionary& dict) {
  std::vector<Analysis> out;
  for (const auto* e : dict.lookup_root(word)) {
    if (dict.indeclinable(e->paradigm)) out.push_back(whole_word(*e));
  }
  for (const auto& c : propose_splits(word, dict)) out.push_back(from_candidate(c));
  return out;
}

std::string format_single(const Analysis& a) {
  std::string out = a.display.empty() ? a.root : a.display;
  out += "{cat=";
  out += category_abbrev(a.category);
  for (const auto& [k, v] : a.features) {
    out += ',';
    out += k;
    out += '=';
    out += v;
  }
  out += '}';
  return out;
}

}  // namespace

std::vector<SplitCandidate> propose_splits(std::string_view word, const Dictionary& dict) {
  std::vector<SplitCandidate> out;
  const auto* root_base = dict.roots().data();
  const auto* suffix_base = dict.suffixes().data();
  for (std::size_t p = 1; p <= word.size(); ++p) {
    std::string_view root_part = word.substr(0, p);
    std::string_view suffix_part = word.substr(p);
    std::size_t first = out.size();
    for (const auto* s : dict.suffixes_with_surface(suffix_part)) {
      const auto& ins = s->join.insert_at_boundary;
      if (!root_part.ends_with(ins)) continue;
      std::string root(root_part.substr(0, root_part.size() - ins.size()));
      root += s->join.delete_from_root;
      for (const auto* e : dict.lookup_root(root)) {
        if (e->paradigm != s->paradigm) continue;
        out.push_back(SplitCandidate{std::string(root_part), std::string(suffix_part), s->join, e, s});
      }
    }
    std::stable_sort(out.begin() + static_cast<std::ptrdiff_t>(first), out.end(),
                     [&](const SplitCandidate& a, const SplitCandidate& b) {
                       auto ra = a.entry - root_base;
                       auto rb = b.entry - root_base;
                       if (ra != rb) return ra < rb;
                       return (a.suffix - suffix_base) < (b.suffix - suffix_base);
                     });
  }
  return out;
}

std::vector<SandhiSplit> split_sandhi(std::string_view word, const Dictionary& dict,
                                      const std::vector<const VariantEntry*>& boundary_rules) {
  std::vector<SandhiSplit> out;
  if (word.size() < 2) return out;
  for (std::size_t q = 1; q < word.size(); ++q) {
    auto left = plain_analyses(word.substr(0, q), dict);
    if (!left.empty()) {
      auto right = plain_analyses(word.substr(q), dict);
      if (!right.empty()) out.push_back(SandhiSplit{q, nullptr, std::move(left), std::move(right)});
    }
    for (const auto* rule : boundary_rules) {
      if (word.substr(q).rfind(rule->variant, 0) != 0) continue;
      auto plus = rule->standard.find('+');
      std::string l = std::string(word.substr(0, q)) + rule->standard.substr(0, plus);
      std::string r = rule->standard.substr(plus + 1) + std::string(word.substr(q + rule->variant.size()));
      if (r.empty()) continue;
      auto la = plain_analyses(l, dict);
      if (la.empty()) continue;
      auto ra = plain_analyses(r, dict);
      if (ra.empty()) continue;
      out.push_back(SandhiSplit{q, rule, std::move(la), std::move(ra)});
    }
  }
  return out;
}

std::vector<Analysis> analyze_word(std::string_view word, const Dictionary& dict,
                                   const std::vector<const VariantEntry*>& boundary_rules) {
  if (word.empty()) return {};
  auto out = plain_analyses(word, dict);
  if (!out.empty()) return out;
  for (const auto& split : split_sandhi(word, dict, boundary_rules)) {
    std::size_t junction = split.rule ? split.rule->variant.size() : 0;
    std::vector<Segment> pieces{{std::string(word.substr(0, split.position)), SegmentRole::sandhi_part}};
    if (junction) pieces.push_back({split.rule->variant, SegmentRole::sandhi_part});
    if (split.position + junction < word.size()) {
      pieces.push_back({std::string(word.substr(split.position + junction)), SegmentRole::sandhi_part});
    }
    for (const auto& l : split.left) {
      for (const auto& r : split.right) {
        Analysis a;
        a.root = r.root;
        a.category = r.category;
        a.features = r.features;
        a.display = r.display;
        a.segmentation = pieces;
        a.sandhi_parts = {l, r};
        out.push_back(std::move(a));
      }
    }
  }
  return out;
}

std::vector<Analysis> analyze_word(std::string_view word, const Lexicon& lexicon) {
  return analyze_word(word, lexicon.source(), lexicon.boundary_rules());
}

std::string reconstruct(const Analysis& analysis) {
  std::string out;
  for (const auto& s : analysis.segmentation) out += s.piece;
  return out;
}

std::string format_analysis(const Analysis& analysis) {
  if (analysis.is_compound()) {
    return format_single(analysis.sandhi_parts.front()) + "+" + format_single(analysis.sandhi_parts.back());
  }
  return format_single(analysis);
}

std::string format_analyses(const std::vector<Analysis>& analyses) {
  std::string out;
  for (std::size_t i = 0; i < analyses.size(); ++i) {
    if (i) out += '/';
    out += format_analysis(analyses[i]);
  }
  return out;
}

std::optional<std::string> attach_suffix(std::string_view root, const SuffixEntry& suffix) {
  const auto& del = suffix.join.delete_from_root;
  if (!root.ends_with(del)) return std::nullopt;
  std::string out(root.substr(0, root.size() - del.size()));
  out += suffix.join.insert_at_boundary;
  out += suffix.surface;
  return out;
}

std::string synthesize(std::string_view root, Category category, const FeatureBundle& features,
                       const Dictionary& dict) {
  std::vector<const LexEntry*> entries;
  for (const auto* e : dict.lookup_root(root)) {
    if (e->category == category) entries.push_back(e);
  }
  if (entries.empty()) {
    throw SynthesisError(SynthesisError::Kind::unknown_root,
                         "unknown root " + std::string(root) + " (" + std::string(category_name(category)) + ")");
  }
  if (features.empty()) return std::string(root);
  std::size_t best = 0;
  std::set<std::string> words;
  for (const auto* e : entries) {
    if (dict.indeclinable(e->paradigm)) {
      if (best == 0) words.insert(e->root);
      continue;
    }
    for (const auto* s : dict.paradigm_suffixes(e->paradigm)) {
      if (!bundle_satisfies(features, s->features)) continue;
      if (s->features.empty() && !features.empty()) continue;
      auto word = attach_suffix(e->root, *s);
      if (!word) continue;
      if (s->features.size() > best) {
        best = s->features.size();
        words.clear();
      }
      if (s->features.size() == best) words.insert(*word);
    }
  }
  if (words.empty()) {
    throw SynthesisError(SynthesisError::Kind::no_match, "no suffix of " + std::string(root) + " matches " +
                                                             features.to_string());
  }
  if (words.size() > 1) {
    std::string list;
    for (const auto& w : words) list += (list.empty() ? "" : ", ") + w;
    throw SynthesisError(SynthesisError::Kind::ambiguous,
                         "ambiguous request " + features.to_string() + " for " + std::string(root) + ": " + list);
  }
  return *words.begin();
}

}  // namespace anusaaraka

#include "anusaaraka/grouper.hpp"

namespace anusaaraka {

namespace {

using Items = std::vector<PatternItem>;

// First analysis of `t` accepted by `item`, or null when none match or
// the matches name more than one (root, category) word.
const Analysis* unique_match(const PatternItem& item, const TokenAnalyses& t) {
  const Analysis* found = nullptr;
  for (const auto& a : t.analyses) {
    if (!item.matches(a.root, a.category)) continue;
    if (!found) {
      found = &a;
    } else if (a.root != found->root || a.category != found->category) {
      return nullptr;
    }
  }
  return found;
}

// Longest follower sequence matching items[k..] from token j; nullopt if
// the items cannot be completed.
std::optional<std::vector<const Analysis*>> followers_from(const Items& items, std::size_t k,
                                                           const std::vector<TokenAnalyses>& tokens, std::size_t j) {
  if (k == items.size()) return std::vector<const Analysis*>{};
  const auto& item = items[k];
  const Analysis* here = j < tokens.size() ? unique_match(item, tokens[j]) : nullptr;
  std::optional<std::vector<const Analysis*>> best;
  auto consider = [&](std::optional<std::vector<const Analysis*>> rest, bool consumed) {
    if (!rest) return;
    if (consumed) rest->insert(rest->begin(), here);
    if (!best || rest->size() > best->size()) best = std::move(rest);
  };
  using R = PatternItem::Repeat;
  switch (item.repeat) {
    case R::one:
      if (here) consider(followers_from(items, k + 1, tokens, j + 1), true);
      break;
    case R::optional:
      if (here) consider(followers_from(items, k + 1, tokens, j + 1), true);
      consider(followers_from(items, k + 1, tokens, j), false);
      break;
    case R::plus:
    case R::star: {
      if (here) {
        Items rest_items = items;
        rest_items[k].repeat = R::star;
        consider(followers_from(rest_items, k, tokens, j + 1), true);
      }
      if (item.repeat == R::star) consider(followers_from(items, k + 1, tokens, j), false);
      break;
    }
  }
  return best;
}

WordGroup singleton(const std::vector<TokenAnalyses>& tokens, std::size_t i) {
  WordGroup g;
  g.first_token = i;
  g.token_count = 1;
  g.surfaces = {tokens[i].token.text};
  g.head = tokens[i].analyses;
  if (g.head.empty()) {
    g.kind = GroupKind::unknown;
  } else {
    g.punctuation = g.head.front().category == Category::punctuation;
  }
  return g;
}

Category node_category(const RenderNode& node, const Dictionary& target) {
  if (node.request) return node.request->category;
  if (node.is_placeholder()) return Category::postposition;
  if (node.is_choice()) return node_category(node.alternatives.front().front(), target);
  auto analyses = analyze_word(node.form, target);
  if (analyses.empty()) throw GroupShapeError("no target category for '" + node.form + "'");
  return analyses.front().category;
}

}  // namespace

std::size_t match_pattern(const GroupPattern& pattern, const std::vector<TokenAnalyses>& tokens, std::size_t start,
                          std::size_t* primary, std::vector<Analysis>* followers) {
  if (start >= tokens.size()) return 0;
  const auto& head = tokens[start].analyses;
  std::size_t index = head.size();
  for (std::size_t i = 0; i < head.size(); ++i) {
    if (pattern.head.matches(head[i].root, head[i].category)) {
      index = i;
      break;
    }
  }
  if (index == head.size()) return 0;
  auto rest = followers_from(pattern.followers, 0, tokens, start + 1);
  if (!rest) return 0;
  if (primary) *primary = index;
  if (followers) {
    followers->clear();
    for (const auto* a : *rest) followers->push_back(*a);
  }
  return 1 + rest->size();
}

std::vector<WordGroup> group_words(const std::vector<TokenAnalyses>& tokens, const Dictionary& dict) {
  std::vector<WordGroup> out;
  std::size_t i = 0;
  while (i < tokens.size()) {
    const GroupPattern* chosen = nullptr;
    std::size_t length = 0;
    for (bool fixed : {true, false}) {
      for (const auto& p : dict.patterns()) {
        if ((p.kind == GroupKind::fixed_expression) != fixed) continue;
        std::size_t n = match_pattern(p, tokens, i);
        if (n > length) {
          length = n;
          chosen = &p;
        }
      }
      if (chosen) break;
    }
    if (!chosen) {
      out.push_back(singleton(tokens, i));
      ++i;
      continue;
    }
    WordGroup g;
    g.kind = chosen->kind;
    g.pattern = chosen;
    g.first_token = i;
    g.token_count = length;
    g.head = tokens[i].analyses;
    match_pattern(*chosen, tokens, i, &g.primary, &g.followers);
    for (std::size_t k = i; k < i + length; ++k) g.surfaces.push_back(tokens[k].token.text);
    if (g.kind == GroupKind::noun_group) {
      for (const auto& f : g.followers) g.group_vibhakti.push_back(f.root);
    }
    if (g.kind == GroupKind::verb_group) {
      const auto* tam = g.head[g.primary].features.get("TAM");
      std::string label = tam ? *tam : "0";
      for (const auto& f : g.followers) label += "_" + f.root;
      g.group_tam = label;
    }
    out.push_back(std::move(g));
    i += length;
  }
  return out;
}

std::vector<SplitItem> split_group(const MappedGroup& mapped, const Dictionary& target) {
  std::vector<SplitItem> items;
  bool manual = false;
  for (std::size_t i = 0; i < mapped.nodes.size(); ++i) {
    const auto& n = mapped.nodes[i];
    manual = manual || n.manual;
    if (n.manual) {
      items.push_back(SplitItem{i, Category::particle, std::nullopt});
      continue;
    }
    items.push_back(SplitItem{i, node_category(n, target), n.request});
  }
  if (items.size() < 2 || manual || mapped.punctuation) return items;

  std::vector<TokenAnalyses> shape;
  for (const auto& item : items) {
    const auto& n = mapped.nodes[item.node];
    Analysis a;
    a.root = n.request ? n.request->root : n.form;
    a.category = item.category;
    shape.push_back(TokenAnalyses{Token{n.form, 0}, {a}});
  }
  for (const auto& p : target.patterns()) {
    if (match_pattern(p, shape, 0) == shape.size()) return items;
  }
  std::string desc;
  for (const auto& item : items) desc += (desc.empty() ? "" : " ") + std::string(category_name(item.category));
  throw GroupShapeError("no target group pattern for " + desc);
}

}  // namespace anusaaraka

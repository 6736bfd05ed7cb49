#include "anusaaraka/transfer.hpp"

#include "anusaaraka/morph.hpp"

namespace anusaaraka {

namespace {

unsigned origin_for_key(std::string_view key) {
  if (key == "TAM") return kOriginTam;
  if (key == "case") return kOriginCase;
  return kOriginQmarker;
}

RenderNode verbatim(const std::string& text, std::size_t token, bool marked) {
  RenderNode n;
  n.form = text;
  n.token = token;
  n.origin = kOriginRoot;
  n.dialect_marked = marked;
  return n;
}

RenderNode word_node(const TargetRoot& t, FeatureBundle features, std::size_t token, unsigned origin) {
  RenderNode n;
  n.form = t.root;
  n.request = WordRequest{t.root, t.category, std::move(features)};
  n.token = token;
  n.origin = origin;
  return n;
}

// Fills in template literals: `$head` becomes the bare head root, other
// words get the request that reproduces them.
void prepare_literal(RenderNode& node, const TargetRoot* head, const Dictionary& target, std::size_t token,
                     unsigned origin) {
  node.token = token;
  node.origin = origin;
  if (node.form == "$head" && head) {
    node.form = head->root;
    node.request = WordRequest{head->root, head->category, {}};
  } else if (!node.form.empty() && !node.is_placeholder()) {
    node.request = recover_request(node.form, target);
  }
  for (auto& alt : node.alternatives) {
    for (auto& n : alt) prepare_literal(n, head, target, token, origin);
  }
}

std::vector<RenderNode> expand(const TamMapping& tm, const TargetRoot* head, const Dictionary& target,
                               std::size_t token, bool keep_fused) {
  std::vector<RenderNode> out;
  unsigned origin = origin_for_key(tm.key);
  for (const auto& el : tm.rendering) {
    if (el.fused) {
      if (!keep_fused) continue;
      RenderNode n;
      n.form = el.fused->label;
      n.token = token;
      n.origin = origin;
      n.dialect_marked = tm.dialect_marked;
      if (!n.form.empty()) out.push_back(std::move(n));
      continue;
    }
    RenderNode n = el.node;
    prepare_literal(n, head, target, token, origin);
    out.push_back(std::move(n));
  }
  bool has_fused = !tm.rendering.empty() && tm.rendering.front().fused;
  if (tm.dialect_marked && !has_fused && !out.empty()) out.back().dialect_marked = true;
  return out;
}

RenderNode* find_slot(std::vector<RenderNode>& nodes) {
  for (auto& n : nodes) {
    if (n.agreement_slot) return &n;
    for (auto& alt : n.alternatives) {
      if (auto* s = find_slot(alt)) return s;
    }
  }
  return nullptr;
}

std::string gender_abbrev(std::string_view g) {
  if (g == "masc" || g == "m") return "m.";
  if (g == "fem" || g == "f") return "f.";
  if (g == "neut" || g == "n") return "n.";
  if (g == "non-masc") return "~m.";
  if (g == "non-neuter") return "~n.";
  return std::string(g);
}

std::string number_abbrev(std::string_view n) {
  if (n == "sg") return "e.";
  if (n == "pl") return "ba.";
  return std::string(n);
}

struct Agreement {
  std::optional<std::string> gender;
  std::optional<std::string> number;
  std::optional<std::string> person;
};

Agreement agreement_of(const FeatureBundle& f) {
  Agreement a;
  if (const auto* gnp = f.get("gnp")) {
    auto g = Gnp::parse(*gnp);
    a.gender = g.gender;
    a.number = g.number;
    a.person = g.person;
  }
  auto take = [&](std::optional<std::string>& slot, std::string_view key) {
    const auto* v = f.get(key);
    if (v && *v != "any") slot = *v;
  };
  take(a.gender, "gender");
  take(a.number, "number");
  take(a.person, "person");
  return a;
}

std::string abbreviate(const std::string& value, std::string (*fn)(std::string_view)) {
  std::string out;
  for (const auto& v : split_alternatives(value)) out += fn(v);
  return out;
}

std::string person_text(std::string_view p) {
  std::string out;
  for (char c : p) {
    if (c != '|') out += c;
  }
  return out;
}

}  // namespace

std::optional<WordRequest> recover_request(std::string_view form, const Dictionary& target) {
  std::optional<WordRequest> found;
  for (const auto& a : analyze_word(form, target)) {
    if (a.is_compound()) continue;
    try {
      if (synthesize(a.root, a.category, a.features, target) != form) continue;
    } catch (const SynthesisError&) {
      continue;
    }
    WordRequest r{a.root, a.category, a.features};
    if (found && !(*found == r)) return std::nullopt;
    found = std::move(r);
  }
  return found;
}

std::vector<RenderNode> map_tam(std::string_view tam, const Lexicon& lexicon) {
  const auto* tm = lexicon.tam_mapping(tam);
  if (!tm) throw TransferError("no mapping for TAM label " + std::string(tam));
  return expand(*tm, nullptr, lexicon.target(), 0, true);
}

MappedGroup map_group(const WordGroup& group, const Lexicon& lexicon) {
  const auto& target = lexicon.target();
  MappedGroup m;
  m.kind = group.kind;
  m.first_token = group.first_token;
  m.token_count = group.token_count;
  m.punctuation = group.punctuation;
  const std::size_t tok = group.first_token;

  if (group.kind == GroupKind::unknown || group.head.empty() || group.punctuation) {
    for (std::size_t i = 0; i < group.surfaces.size(); ++i) {
      m.nodes.push_back(verbatim(group.surfaces[i], tok + i, !group.punctuation));
    }
    return m;
  }

  if (group.kind == GroupKind::fixed_expression && group.pattern && !group.pattern->meaning.empty()) {
    const auto& meaning = group.pattern->meaning;
    auto head = word_node(meaning.front(), {}, tok, kOriginRoot | kOriginFollower);
    head.is_head = true;
    for (std::size_t i = 1; i < meaning.size(); ++i) {
      head.alternatives.push_back({word_node(meaning[i], {}, tok, kOriginRoot | kOriginFollower)});
    }
    m.nodes.push_back(std::move(head));
    return m;
  }

  const Analysis& a = group.head[group.primary];
  const RootMapping* rm = lexicon.mapping_for(a.root, a.category);
  if (!rm) {
    for (std::size_t i = 0; i < group.surfaces.size(); ++i) m.nodes.push_back(verbatim(group.surfaces[i], tok + i, true));
    return m;
  }
  const TargetRoot& t = rm->targets.front();

  std::vector<const TamMapping*> templates;
  bool unmapped = false;
  bool case_template = false;
  for (std::string_view key : {"TAM", "case", "qmarker"}) {
    const auto* v = a.features.get(key);
    if (!v || *v == "0" || *v == "any") continue;
    const auto* tm = lexicon.feature_mapping(key, *v);
    if (!tm) {
      unmapped = true;
      continue;
    }
    templates.push_back(tm);
    if (key == "case") case_template = true;
  }

  const TamMapping* fused_from = nullptr;
  for (const auto* tm : templates) {
    if (!tm->rendering.empty() && tm->rendering.front().fused) {
      fused_from = tm;
      break;
    }
  }

  FeatureBundle req;
  if (is_nominal(a.category)) {
    if (const auto* n = a.features.get("number")) req.set("number", *n);
    if (const auto* c = a.features.get("case"); c && !case_template) {
      req.set("case", group.followers.empty() ? *c : std::string("oblique"));
    }
  }
  if (fused_from) {
    const auto& d = *fused_from->rendering.front().fused;
    if (d.label.empty() && d.features.empty()) req = FeatureBundle{};
    for (const auto& [k, v] : d.features) req.set(k, v);
    if (d.pass_gnp) {
      if (const auto* g = a.features.get("gnp")) req.set("gnp", *g);
    }
  }

  auto head = word_node(t, req, tok, kOriginRoot | (fused_from ? origin_for_key(fused_from->key) : 0u));
  head.is_head = true;
  head.dialect_marked = unmapped || (fused_from && fused_from->dialect_marked);
  std::vector<TargetRoot> alts;
  auto add_alt = [&](const TargetRoot& r) {
    if (r == t) return;
    for (const auto& x : alts) {
      if (x == r) return;
    }
    alts.push_back(r);
  };
  for (std::size_t i = 1; i < rm->targets.size(); ++i) add_alt(rm->targets[i]);
  for (std::size_t i = 0; i < group.head.size(); ++i) {
    if (i == group.primary) continue;
    if (const auto* other = lexicon.mapping_for(group.head[i].root, group.head[i].category)) {
      for (const auto& r : other->targets) add_alt(r);
    }
  }
  for (const auto& r : alts) {
    head.alternatives.push_back({word_node(r, r.category == t.category ? req : FeatureBundle{}, tok, kOriginRoot)});
  }

  for (const auto* e : target.lookup_root(t.root)) {
    if (e->category == t.category) {
      m.fixed_by_target = e->inherent;
      break;
    }
  }
  for (const auto& [k, v] : req) m.fixed_by_target.set(k, v);
  m.nodes.push_back(std::move(head));

  auto append = [&](std::string_view key) {
    for (const auto* tm : templates) {
      if (tm->key != key) continue;
      for (auto& n : expand(*tm, &t, target, tok, false)) m.nodes.push_back(std::move(n));
      m.suppresses_ne = m.suppresses_ne || tm->suppresses_ne;
      m.perfective = m.perfective || tm->perfective;
    }
  };
  append("TAM");
  for (std::size_t k = 0; k < group.followers.size(); ++k) {
    const auto& f = group.followers[k];
    const auto* fm = lexicon.mapping_for(f.root, f.category);
    std::size_t ftok = tok + 1 + k;
    if (fm) {
      m.nodes.push_back(word_node(fm->targets.front(), {}, ftok, kOriginFollower));
    } else {
      auto n = verbatim(group.surfaces[1 + k], ftok, true);
      n.origin = kOriginFollower;
      m.nodes.push_back(std::move(n));
    }
  }
  append("case");
  append("qmarker");
  if (const auto* tam = a.features.get("TAM")) m.tam = *tam;
  return m;
}

std::vector<std::string> agreement_items(const FeatureBundle& source, const FeatureBundle& fixed) {
  auto have = agreement_of(source);
  auto done = agreement_of(fixed);
  std::vector<std::string> items;
  if (have.person && !done.person) items.push_back(person_text(*have.person));
  if (have.gender && !done.gender) items.push_back(abbreviate(*have.gender, gender_abbrev));
  if (have.number && !done.number) items.push_back(abbreviate(*have.number, number_abbrev));
  return items;
}

MappedGroup annotate_agreement(MappedGroup mapped, const FeatureBundle& source_features) {
  RenderNode* head = nullptr;
  for (auto& n : mapped.nodes) {
    if (n.is_head) {
      head = &n;
      break;
    }
  }
  if (!head || !head->request) return mapped;
  auto items = agreement_items(source_features, mapped.fixed_by_target);
  if (items.empty()) return mapped;
  Category c = head->request->category;
  if (is_verbal(c)) {
    RenderNode* slot = find_slot(mapped.nodes);
    (slot ? *slot : mapped.nodes.back()).annotation = std::move(items);
  } else if (c == Category::pronoun) {
    head->annotation = std::move(items);
  }
  return mapped;
}

std::vector<MappedGroup> order_clauses(std::vector<MappedGroup> groups) { return groups; }

void realize_node(RenderNode& node, const Dictionary& target) {
  if (node.manual) return;
  if (node.request) {
    try {
      node.form = synthesize(node.request->root, node.request->category, node.request->features, target);
    } catch (const SynthesisError&) {
      node.form = node.request->root;
      node.dialect_marked = true;
    }
  }
  for (auto& alt : node.alternatives) {
    for (auto& n : alt) realize_node(n, target);
  }
}

void generate_group(MappedGroup& mapped, const Dictionary& target) {
  try {
    split_group(mapped, target);
  } catch (const GroupShapeError&) {
    for (auto& n : mapped.nodes) {
      if (n.is_head) n.dialect_marked = true;
    }
  }
  for (auto& n : mapped.nodes) realize_node(n, target);
}

}  // namespace anusaaraka

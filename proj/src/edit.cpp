#include "anusaaraka/edit.hpp"

#include <charconv>
#include <sstream>

#include "anusaaraka/morph.hpp"
#include "anusaaraka/pipeline.hpp"
#include "anusaaraka/transfer.hpp"

namespace anusaaraka {

namespace {

std::optional<std::size_t> parse_index(std::string_view text) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) return std::nullopt;
  return value;
}

EditError bad(const std::string& message) { return EditError(EditError::Kind::invalid_command, message); }
EditError bad_position(const std::string& message) { return EditError(EditError::Kind::invalid_position, message); }

void add_unique(std::vector<std::string>& list, const std::string& s) {
  for (const auto& x : list) {
    if (x == s) return;
  }
  list.push_back(s);
}

std::string normalize_gender(const std::string& g) {
  if (g == "m" || g == "masc") return "masc";
  if (g == "f" || g == "fem") return "fem";
  if (g == "n" || g == "neut") return "neut";
  if (g == "non-masc" || g == "non-neuter") return g;
  throw bad("unknown gender '" + g + "'");
}

std::string gnp_argument(const std::vector<std::string>& args) {
  if (args.size() != 3) throw bad("set_gnp takes gender, number and person");
  Gnp gnp;
  if (args[0] != "-") gnp.gender = normalize_gender(args[0]);
  if (args[1] != "-") {
    if (args[1] != "sg" && args[1] != "pl") throw bad("number must be sg or pl, not '" + args[1] + "'");
    gnp.number = args[1];
  }
  if (args[2] != "-") {
    if (!parse_index(args[2])) throw bad("person must be digits, not '" + args[2] + "'");
    gnp.person = args[2];
  }
  return gnp.to_string();
}

bool has_whitespace(std::string_view s) { return s.find_first_of(" \t\r\n") != std::string_view::npos; }

void check_form(const std::string& form) {
  try {
    auto node = parse_node(form);
    if (node.form != form) throw bad("'" + form + "' is not a plain word form");
  } catch (const NotationError& e) {
    throw bad("'" + form + "' is not a plain word form: " + e.what());
  }
}

void resynthesize(RenderNode& node, const Dictionary& target) {
  try {
    node.form = synthesize(node.request->root, node.request->category, node.request->features, target);
  } catch (const SynthesisError& e) {
    throw EditError(EditError::Kind::synthesis, e.what());
  }
  node.origin |= kOriginEdit;
}

void clear_annotations(std::vector<RenderNode>& nodes) {
  for (auto& n : nodes) {
    n.annotation.clear();
    for (auto& alt : n.alternatives) clear_annotations(alt);
  }
}

std::size_t set_gnp_in(std::vector<RenderNode>& nodes, const std::string& gnp, const Dictionary& target,
                       bool top_level) {
  std::size_t changed = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    auto& n = nodes[i];
    if (!n.manual && !n.request && !n.form.empty() && !n.is_placeholder()) n.request = recover_request(n.form, target);
    if (n.request && !n.manual) {
      const auto& r = *n.request;
      bool head = n.is_head || (top_level && i == 0 && r.category == Category::verb);
      bool eligible = r.category == Category::auxiliary || (head && is_verbal(r.category) && !r.features.empty());
      if (eligible) {
        n.request->features.set("gnp", gnp);
        resynthesize(n, target);
        ++changed;
      }
    }
    for (auto& alt : n.alternatives) changed += set_gnp_in(alt, gnp, target, false);
  }
  return changed;
}

RenderNode* head_node(MappedGroup& g) {
  for (auto& n : g.nodes) {
    if (n.is_head) return &n;
  }
  return g.nodes.empty() ? nullptr : &g.nodes.front();
}

std::optional<Category> node_category(RenderNode& n, const Dictionary& target) {
  if (!n.request && !n.manual) n.request = recover_request(n.form, target);
  if (n.request) return n.request->category;
  return std::nullopt;
}

const MappedGroup* governing_verb_group(const Sentence& s, std::size_t g) {
  for (std::size_t i = g + 1; i < s.groups.size(); ++i) {
    if (s.groups[i].kind == GroupKind::verb_group) return &s.groups[i];
  }
  for (std::size_t i = g; i-- > 0;) {
    if (s.groups[i].kind == GroupKind::verb_group) return &s.groups[i];
  }
  return nullptr;
}

}  // namespace

std::string_view issue_kind_name(IssueKind k) {
  switch (k) {
    case IssueKind::nonstandard_spelling:
      return "nonstandard_spelling";
    case IssueKind::unanalyzable:
      return "unanalyzable";
    case IssueKind::suspect_missplit:
      return "suspect_missplit";
  }
  return "unanalyzable";
}

std::vector<PreEditIssue> check_pre_edit(std::string_view text, const Lexicon& lexicon) {
  auto tokens = tokenize(text);
  std::vector<PreEditIssue> out;
  auto issue = [&](std::size_t i, std::size_t span, IssueKind kind) {
    PreEditIssue p;
    p.token = i;
    p.span = span;
    p.offset = tokens[i].offset;
    const auto& last = tokens[i + span - 1];
    p.length = last.offset + last.text.size() - p.offset;
    p.text = std::string(text.substr(p.offset, p.length));
    p.kind = kind;
    return p;
  };
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const auto& t = tokens[i].text;
    if (is_punctuation_text(t)) continue;
    bool has_next = i + 1 < tokens.size() && !is_punctuation_text(tokens[i + 1].text);

    auto p = issue(i, 1, IssueKind::nonstandard_spelling);
    for (const auto* v : lexicon.variants_for(t)) {
      if (v->kind != VariantKind::sandhi_missplit) add_unique(p.suggestions, v->standard);
    }
    if (!p.suggestions.empty()) {
      out.push_back(std::move(p));
      continue;
    }
    if (has_next) {
      auto pair = issue(i, 2, IssueKind::suspect_missplit);
      for (const auto* v : lexicon.variants_for(t + " " + tokens[i + 1].text)) {
        if (v->kind == VariantKind::sandhi_missplit) add_unique(pair.suggestions, v->standard);
      }
      if (!pair.suggestions.empty()) {
        out.push_back(std::move(pair));
        ++i;
        continue;
      }
    }
    if (!analyze_word(t, lexicon).empty()) continue;
    if (has_next) {
      auto joined = t + tokens[i + 1].text;
      if (!analyze_word(joined, lexicon).empty()) {
        auto pair = issue(i, 2, IssueKind::suspect_missplit);
        pair.suggestions.push_back(joined);
        out.push_back(std::move(pair));
        ++i;
        continue;
      }
    }
    out.push_back(issue(i, 1, IssueKind::unanalyzable));
  }
  return out;
}

std::string apply_pre_edit(std::string_view text, std::size_t token, std::string_view replacement, std::size_t span) {
  auto tokens = tokenize(text);
  if (span == 0 || token >= tokens.size() || token + span > tokens.size()) {
    throw std::out_of_range("token index " + std::to_string(token) + " out of range");
  }
  std::size_t begin = tokens[token].offset;
  const auto& last = tokens[token + span - 1];
  std::size_t end = last.offset + last.text.size();
  std::string out(text.substr(0, begin));
  out += replacement;
  out += text.substr(end);
  return out;
}

std::string_view edit_verb_name(EditVerb v) {
  switch (v) {
    case EditVerb::set_gnp:
      return "set_gnp";
    case EditVerb::insert_ne:
      return "insert_ne";
    case EditVerb::resolve_vibhakti:
      return "resolve_vibhakti";
    case EditVerb::choose_alternative:
      return "choose_alternative";
    case EditVerb::replace_form:
      return "replace_form";
  }
  return "replace_form";
}

std::optional<EditVerb> parse_edit_verb(std::string_view text) {
  for (auto v : {EditVerb::set_gnp, EditVerb::insert_ne, EditVerb::resolve_vibhakti, EditVerb::choose_alternative,
                 EditVerb::replace_form}) {
    if (edit_verb_name(v) == text) return v;
  }
  return std::nullopt;
}

std::string_view EditError::code() const {
  switch (kind_) {
    case Kind::invalid_command:
      return "invalid_command";
    case Kind::invalid_position:
      return "invalid_position";
    case Kind::guard:
      return "guard_violation";
    case Kind::synthesis:
      return "synthesis_failed";
  }
  return "invalid_command";
}

NodePath NodePath::parse(std::string_view text) {
  std::vector<std::size_t> parts;
  std::size_t pos = 0;
  while (true) {
    auto dot = text.find('.', pos);
    auto piece = text.substr(pos, dot == std::string_view::npos ? std::string_view::npos : dot - pos);
    auto value = parse_index(piece);
    if (!value) throw bad_position("malformed position '" + std::string(text) + "'");
    parts.push_back(*value);
    if (dot == std::string_view::npos) break;
    pos = dot + 1;
  }
  if (parts.size() < 2 || parts.size() > 3) throw bad_position("position must be S.G or S.G.N");
  NodePath p{parts[0], parts[1], std::nullopt};
  if (parts.size() == 3) p.node = parts[2];
  return p;
}

std::string NodePath::to_string() const {
  std::string out = std::to_string(sentence) + "." + std::to_string(group);
  if (node) out += "." + std::to_string(*node);
  return out;
}

EditCommand EditCommand::make(NodePath position, std::string_view verb, std::vector<std::string> args) {
  auto v = parse_edit_verb(verb);
  if (!v) throw bad("unknown command '" + std::string(verb) + "'");
  std::size_t want = 0;
  switch (*v) {
    case EditVerb::set_gnp:
      want = 3;
      break;
    case EditVerb::insert_ne:
      want = 0;
      break;
    case EditVerb::resolve_vibhakti:
    case EditVerb::choose_alternative:
    case EditVerb::replace_form:
      want = 1;
      break;
  }
  if (args.size() != want) {
    throw bad(std::string(verb) + " takes " + std::to_string(want) + " argument" + (want == 1 ? "" : "s"));
  }
  for (const auto& a : args) {
    if (a.empty() || has_whitespace(a)) throw bad("empty or blank argument to " + std::string(verb));
  }
  if (*v == EditVerb::set_gnp) gnp_argument(args);
  if (*v == EditVerb::choose_alternative && !parse_index(args[0])) throw bad("alternative index must be a number");
  return EditCommand{position, *v, std::move(args)};
}

EditCommand EditCommand::parse(std::string_view line) {
  std::istringstream in{std::string(line)};
  std::string path;
  std::string verb;
  if (!(in >> path >> verb)) throw bad("expected 'position command [arguments]'");
  std::vector<std::string> args;
  for (std::string a; in >> a;) args.push_back(a);
  return make(NodePath::parse(path), verb, std::move(args));
}

std::string EditCommand::to_string() const {
  std::string out = position.to_string() + " " + std::string(edit_verb_name(verb));
  for (const auto& a : args) out += " " + a;
  return out;
}

std::vector<EditCommand> parse_command_script(std::string_view text) {
  std::vector<EditCommand> out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    try {
      out.push_back(EditCommand::parse(line));
    } catch (const EditError& e) {
      throw EditError(e.kind(), "line " + std::to_string(number) + ": " + e.what());
    }
  }
  return out;
}

Document apply_post_edit(const Document& doc, const EditCommand& cmd, const Lexicon& lexicon) {
  const auto& target = lexicon.target();
  const auto& p = cmd.position;
  if (p.sentence >= doc.sentences.size()) throw bad_position("no sentence " + std::to_string(p.sentence));
  if (p.group >= doc.sentences[p.sentence].groups.size()) throw bad_position("no group " + p.to_string());
  if (p.node && *p.node >= doc.sentences[p.sentence].groups[p.group].nodes.size()) {
    throw bad_position("no node " + p.to_string());
  }

  Document out = doc;
  auto& sentence = out.sentences[p.sentence];
  auto& group = sentence.groups[p.group];
  if (group.punctuation) throw bad_position("position " + p.to_string() + " is punctuation");

  switch (cmd.verb) {
    case EditVerb::set_gnp: {
      auto gnp = gnp_argument(cmd.args);
      if (set_gnp_in(group.nodes, gnp, target, true) == 0) {
        throw bad("group " + p.to_string() + " has no verb form to re-synthesize");
      }
      clear_annotations(group.nodes);
      break;
    }

    case EditVerb::insert_ne: {
      auto* head = head_node(group);
      auto c = head ? node_category(*head, target) : std::nullopt;
      if (!c || (*c != Category::noun && *c != Category::pronoun)) {
        throw bad("insert_ne needs a noun or pronoun group at " + p.to_string());
      }
      for (const auto& n : group.nodes) {
        if (n.form == "ne") throw bad("group " + p.to_string() + " already has ne");
      }
      const auto* verb = governing_verb_group(doc.sentences[p.sentence], p.group);
      if (!verb || !(verb->suppresses_ne || verb->perfective)) {
        throw EditError(EditError::Kind::guard, "ne is not licensed: the verb group of " + p.to_string() +
                                                    " is not perfective");
      }
      if (head->request && head->request->features.contains("case")) {
        head->request->features.set("case", "oblique");
        resynthesize(*head, target);
      }
      RenderNode ne;
      ne.form = "ne";
      if (target.has_root("ne", Category::postposition)) ne.request = WordRequest{"ne", Category::postposition, {}};
      ne.token = head->token;
      ne.origin = kOriginInserted | kOriginEdit;
      group.nodes.push_back(std::move(ne));
      for (auto& n : group.nodes) n.dialect_marked = false;
      break;
    }

    case EditVerb::resolve_vibhakti: {
      const auto& form = cmd.args.at(0);
      check_form(form);
      std::size_t index = group.nodes.size();
      if (p.node) {
        if (!group.nodes[*p.node].is_placeholder()) throw bad_position("node " + p.to_string() + " is not '*'");
        index = *p.node;
      } else {
        for (std::size_t i = 0; i < group.nodes.size(); ++i) {
          if (group.nodes[i].is_placeholder()) {
            index = i;
            break;
          }
        }
        if (index == group.nodes.size()) throw bad_position("group " + p.to_string() + " has no '*'");
      }
      auto& node = group.nodes[index];
      node.form = form;
      node.request = recover_request(form, target);
      node.origin |= kOriginEdit;
      if (index > 0) {
        auto& before = group.nodes[index - 1];
        if (!before.request && !before.manual) before.request = recover_request(before.form, target);
        if (before.request && before.request->features.contains("case")) {
          auto original = *before.request;
          before.request->features.set("case", "oblique");
          try {
            resynthesize(before, target);
          } catch (const EditError&) {
            before.request = std::move(original);
          }
        }
      }
      break;
    }

    case EditVerb::choose_alternative: {
      std::size_t index = group.nodes.size();
      if (p.node) {
        index = *p.node;
      } else {
        for (std::size_t i = 0; i < group.nodes.size(); ++i) {
          if (!group.nodes[i].alternatives.empty()) {
            index = i;
            break;
          }
        }
      }
      if (index == group.nodes.size() || group.nodes[index].alternatives.empty()) {
        throw bad_position("no alternatives at " + p.to_string());
      }
      auto node = group.nodes[index];
      std::vector<std::vector<RenderNode>> options;
      if (!node.form.empty()) {
        RenderNode primary = node;
        primary.alternatives.clear();
        primary.annotation.clear();
        primary.dialect_marked = false;
        options.push_back({primary});
      }
      for (const auto& alt : node.alternatives) options.push_back(alt);
      auto choice = *parse_index(cmd.args.at(0));
      if (choice >= options.size()) {
        throw bad("alternative " + std::to_string(choice) + " out of range (" + std::to_string(options.size()) +
                  " options)");
      }
      auto chosen = options[choice];
      for (auto& n : chosen) {
        n.token = node.token;
        n.origin |= kOriginEdit;
      }
      chosen.front().is_head = node.is_head;
      if (!node.annotation.empty()) chosen.back().annotation = node.annotation;
      chosen.back().dialect_marked = chosen.back().dialect_marked || node.dialect_marked;
      chosen.back().agreement_slot = chosen.back().agreement_slot || node.agreement_slot;
      group.nodes.erase(group.nodes.begin() + static_cast<std::ptrdiff_t>(index));
      group.nodes.insert(group.nodes.begin() + static_cast<std::ptrdiff_t>(index), chosen.begin(), chosen.end());
      break;
    }

    case EditVerb::replace_form: {
      const auto& text = cmd.args.at(0);
      try {
        parse_notation(text);
      } catch (const NotationError& e) {
        throw bad("replacement is not valid notation: " + std::string(e.what()));
      }
      RenderNode manual;
      manual.form = text;
      manual.manual = true;
      manual.origin = kOriginEdit;
      if (p.node) {
        auto& n = group.nodes[*p.node];
        manual.token = n.token;
        manual.is_head = n.is_head;
        n = std::move(manual);
      } else {
        manual.token = group.nodes.empty() ? group.first_token : group.nodes.front().token;
        manual.is_head = true;
        group.nodes = {std::move(manual)};
      }
      break;
    }
  }
  return out;
}

}  // namespace anusaaraka

#include "anusaaraka/notation.hpp"

#include <array>

namespace anusaaraka {

namespace {

constexpr std::string_view kDanda = "\xE0\xA5\xA4";
constexpr std::string_view kDoubleDanda = "\xE0\xA5\xA5";

}  // namespace

std::size_t punctuation_length(std::string_view text, std::size_t pos) {
  if (pos >= text.size()) return 0;
  switch (text[pos]) {
    case ',':
    case '.':
    case '?':
    case '!':
    case ';':
    case ':':
      return 1;
    default:
      break;
  }
  auto rest = text.substr(pos);
  if (rest.starts_with(kDanda) || rest.starts_with(kDoubleDanda)) return 3;
  return 0;
}

namespace {

std::size_t punct_len(std::string_view text, std::size_t pos) { return punctuation_length(text, pos); }

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

bool is_form_char(std::string_view text, std::size_t pos) {
  char c = text[pos];
  if (is_space(c)) return false;
  switch (c) {
    case '_':
    case '[':
    case ']':
    case '|':
    case '{':
    case '}':
    case '`':
      return false;
    default:
      break;
  }
  return punct_len(text, pos) == 0;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Document document() {
    Document doc;
    Sentence current;
    auto flush = [&] {
      if (!current.groups.empty()) doc.sentences.push_back(std::move(current));
      current = Sentence{};
    };
    while (pos_ < text_.size()) {
      if (is_space(text_[pos_])) {
        ++pos_;
        continue;
      }
      std::size_t start = pos_;
      MappedGroup group;
      if (punct_len(text_, pos_) > 0) {
        std::size_t end = pos_;
        while (std::size_t n = punct_len(text_, end)) end += n;
        RenderNode node;
        node.form = std::string(text_.substr(pos_, end - pos_));
        pos_ = end;
        group.punctuation = true;
        group.nodes.push_back(std::move(node));
      } else {
        group.nodes = sequence();
        if (pos_ < text_.size() && !is_space(text_[pos_]) && punct_len(text_, pos_) == 0) {
          throw NotationError(std::string("unexpected '") + text_[pos_] + "'", pos_);
        }
      }
      std::size_t index = current.groups.size();
      group.first_token = index;
      group.token_count = 1;
      for (auto& n : group.nodes) n.token = index;
      current.tokens.push_back(Token{std::string(text_.substr(start, pos_ - start)), start});
      bool closes = group.punctuation && is_sentence_final(group.nodes.front().form);
      current.groups.push_back(std::move(group));
      if (closes) flush();
    }
    flush();
    return doc;
  }

  RenderNode single_node() {
    auto n = node();
    if (pos_ != text_.size()) throw NotationError("trailing text after node", pos_);
    return n;
  }

 private:
  std::vector<RenderNode> sequence() {
    std::vector<RenderNode> nodes;
    nodes.push_back(node());
    while (pos_ < text_.size() && text_[pos_] == '_') {
      ++pos_;
      nodes.push_back(node());
    }
    return nodes;
  }

  RenderNode node() {
    RenderNode n;
    std::size_t start = pos_;
    while (pos_ < text_.size() && is_form_char(text_, pos_)) ++pos_;
    n.form = std::string(text_.substr(start, pos_ - start));
    if (pos_ < text_.size() && text_[pos_] == '[') n.alternatives = alternatives();
    if (n.form.empty() && n.alternatives.empty()) {
      if (pos_ < text_.size() && text_[pos_] == '{') {
        throw NotationError("annotation outside a form", pos_);
      }
      throw NotationError("expected a form", pos_);
    }
    if (pos_ < text_.size() && text_[pos_] == '{') n.annotation = annotation();
    if (pos_ < text_.size() && text_[pos_] == '`') {
      n.dialect_marked = true;
      ++pos_;
    }
    return n;
  }

  std::vector<std::vector<RenderNode>> alternatives() {
    std::size_t open = pos_++;
    std::vector<std::vector<RenderNode>> alts;
    while (true) {
      if (pos_ >= text_.size()) throw NotationError("unbalanced '['", open);
      alts.push_back(sequence());
      if (pos_ >= text_.size()) throw NotationError("unbalanced '['", open);
      if (text_[pos_] == '|') {
        ++pos_;
        continue;
      }
      if (text_[pos_] == ']') {
        ++pos_;
        return alts;
      }
      throw NotationError("unbalanced '['", open);
    }
  }

  std::vector<std::string> annotation() {
    std::size_t open = pos_++;
    std::vector<std::string> items;
    std::string item;
    while (true) {
      if (pos_ >= text_.size()) throw NotationError("unbalanced '{'", open);
      char c = text_[pos_++];
      if (c == '}' || c == '_') {
        if (item.empty()) throw NotationError("empty annotation item", pos_ - 1);
        items.push_back(std::move(item));
        item.clear();
        if (c == '}') return items;
        continue;
      }
      if (is_space(c) || c == '{' || c == '[' || c == ']' || c == '|') {
        throw NotationError("unbalanced '{'", open);
      }
      item += c;
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string_view group_kind_name(GroupKind k) {
  switch (k) {
    case GroupKind::noun_group:
      return "noun_group";
    case GroupKind::verb_group:
      return "verb_group";
    case GroupKind::fixed_expression:
      return "fixed";
    case GroupKind::singleton:
      return "singleton";
    case GroupKind::unknown:
      return "unknown";
  }
  return "singleton";
}

std::optional<GroupKind> parse_group_kind(std::string_view text) {
  if (text == "noun_group") return GroupKind::noun_group;
  if (text == "verb_group") return GroupKind::verb_group;
  if (text == "fixed" || text == "fixed_expression") return GroupKind::fixed_expression;
  if (text == "singleton") return GroupKind::singleton;
  if (text == "unknown") return GroupKind::unknown;
  return std::nullopt;
}

std::optional<DetailLevel> parse_detail_level(std::string_view text) {
  if (text == "0") return DetailLevel::plain;
  if (text == "1") return DetailLevel::alternatives;
  if (text == "2") return DetailLevel::full;
  return std::nullopt;
}

NotationError::NotationError(const std::string& message, std::size_t position)
    : std::runtime_error(message + " at offset " + std::to_string(position)), position_(position) {}

std::string render_node(const RenderNode& node, DetailLevel level) {
  if (level == DetailLevel::plain) {
    if (node.is_placeholder()) return {};
    if (node.form.empty() && !node.alternatives.empty()) {
      return render_sequence(node.alternatives.front(), level);
    }
    return node.form;
  }
  std::string out = node.form;
  if (!node.alternatives.empty()) {
    out += '[';
    for (std::size_t i = 0; i < node.alternatives.size(); ++i) {
      if (i) out += '|';
      out += render_sequence(node.alternatives[i], level);
    }
    out += ']';
  }
  if (level == DetailLevel::full) {
    if (!node.annotation.empty()) {
      out += '{';
      for (std::size_t i = 0; i < node.annotation.size(); ++i) {
        if (i) out += '_';
        out += node.annotation[i];
      }
      out += '}';
    }
    if (node.dialect_marked) out += '`';
  }
  return out;
}

std::string render_sequence(const std::vector<RenderNode>& nodes, DetailLevel level) {
  std::string out;
  bool first = true;
  for (const auto& n : nodes) {
    auto piece = render_node(n, level);
    if (piece.empty()) continue;
    if (!first) out += '_';
    out += piece;
    first = false;
  }
  return out;
}

std::string render_group(const MappedGroup& group, DetailLevel level) {
  return render_sequence(group.nodes, level);
}

std::string render_sentence(const Sentence& sentence, DetailLevel level) {
  std::string out;
  for (const auto& g : sentence.groups) {
    auto piece = render_group(g, level);
    if (piece.empty()) continue;
    if (!out.empty() && !g.punctuation) out += ' ';
    out += piece;
  }
  return out;
}

std::string render(const Document& doc, DetailLevel level) {
  std::string out;
  for (const auto& s : doc.sentences) {
    auto piece = render_sentence(s, level);
    if (piece.empty()) continue;
    if (!out.empty()) out += ' ';
    out += piece;
  }
  return out;
}

Document parse_notation(std::string_view text, DetailLevel /*level*/) {
  return Parser(text).document();
}

RenderNode parse_node(std::string_view text) { return Parser(text).single_node(); }

bool is_punctuation_text(std::string_view text) {
  if (text.empty()) return false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto n = punct_len(text, pos);
    if (n == 0) return false;
    pos += n;
  }
  return true;
}

bool is_sentence_final(std::string_view text) {
  return text.find_first_of(".?!") != std::string_view::npos ||
         text.find(kDanda) != std::string_view::npos ||
         text.find(kDoubleDanda) != std::string_view::npos;
}

}  // namespace anusaaraka

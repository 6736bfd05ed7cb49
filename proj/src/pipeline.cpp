#include "anusaaraka/pipeline.hpp"

#include <utility>

#include "anusaaraka/transfer.hpp"

namespace anusaaraka {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (is_space(text[pos])) {
      ++pos;
      continue;
    }
    std::size_t start = pos;
    if (punctuation_length(text, pos)) {
      while (std::size_t n = punctuation_length(text, pos)) pos += n;
    } else {
      while (pos < text.size() && !is_space(text[pos]) && !punctuation_length(text, pos)) ++pos;
    }
    out.push_back(Token{std::string(text.substr(start, pos - start)), start});
  }
  return out;
}

std::vector<std::vector<Token>> split_sentences(std::string_view text) {
  std::vector<std::vector<Token>> out;
  std::vector<Token> current;
  std::size_t line_start = 0;
  while (line_start <= text.size()) {
    auto nl = text.find('\n', line_start);
    if (nl == std::string_view::npos) nl = text.size();
    for (auto t : tokenize(text.substr(line_start, nl - line_start))) {
      t.offset += line_start;
      bool closes = is_punctuation_text(t.text) && is_sentence_final(t.text);
      current.push_back(std::move(t));
      if (closes) out.push_back(std::exchange(current, {}));
    }
    if (!current.empty()) out.push_back(std::exchange(current, {}));
    line_start = nl + 1;
  }
  return out;
}

std::vector<Analysis> analyze_token(std::string_view token, const Lexicon& lexicon) {
  if (is_punctuation_text(token)) {
    Analysis a;
    a.root = std::string(token);
    a.category = Category::punctuation;
    a.segmentation = {{std::string(token), SegmentRole::root}};
    return {a};
  }
  return analyze_word(token, lexicon);
}

Sentence translate_sentence(const std::vector<Token>& tokens, const Lexicon& lexicon) {
  std::vector<TokenAnalyses> analysed;
  for (const auto& t : tokens) analysed.push_back(TokenAnalyses{t, analyze_token(t.text, lexicon)});
  std::vector<MappedGroup> mapped;
  for (const auto& g : group_words(analysed, lexicon.source())) {
    auto m = map_group(g, lexicon);
    if (const auto* a = g.primary_analysis(); a && !g.punctuation) m = annotate_agreement(std::move(m), a->features);
    mapped.push_back(std::move(m));
  }
  mapped = order_clauses(std::move(mapped));
  for (auto& m : mapped) generate_group(m, lexicon.target());
  return Sentence{tokens, std::move(mapped)};
}

Document run_pipeline(std::string_view text, const Lexicon& lexicon) {
  Document doc;
  for (const auto& tokens : split_sentences(text)) doc.sentences.push_back(translate_sentence(tokens, lexicon));
  return doc;
}

std::string translate_text(std::string_view text, const Lexicon& lexicon, DetailLevel level) {
  std::string out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    out += render(run_pipeline(text.substr(pos, nl - pos), lexicon), level);
    out += '\n';
    pos = nl + 1;
  }
  return out;
}

}  // namespace anusaaraka

#include "anusaaraka/features.hpp"

#include <algorithm>
#include <array>

namespace anusaaraka {

namespace {

struct CategoryName {
  Category category;
  std::string_view name;
  std::string_view abbrev;
};

constexpr std::array<CategoryName, 8> kCategories{{
    {Category::noun, "noun", "n"},
    {Category::verb, "verb", "v"},
    {Category::pronoun, "pronoun", "pn"},
    {Category::adjective, "adjective", "adj"},
    {Category::postposition, "postposition", "post"},
    {Category::auxiliary, "auxiliary", "aux"},
    {Category::particle, "particle", "part"},
    {Category::punctuation, "punctuation", "punc"},
}};

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

// Genders as sets over {m, f, n}.
std::string gender_members(std::string_view g) {
  if (g == "masc" || g == "m") return "m";
  if (g == "fem" || g == "f") return "f";
  if (g == "neut" || g == "n") return "n";
  if (g == "non-masc") return "fn";
  if (g == "non-neuter") return "mf";
  return std::string(g);
}

}  // namespace

std::optional<Category> parse_category(std::string_view text) {
  for (const auto& c : kCategories) {
    if (text == c.name || text == c.abbrev) return c.category;
  }
  return std::nullopt;
}

std::string_view category_name(Category c) {
  return kCategories[static_cast<std::size_t>(c)].name;
}

std::string_view category_abbrev(Category c) {
  return kCategories[static_cast<std::size_t>(c)].abbrev;
}

bool is_nominal(Category c) {
  return c == Category::noun || c == Category::pronoun || c == Category::adjective;
}

bool is_verbal(Category c) { return c == Category::verb || c == Category::auxiliary; }

bool is_feature_key(std::string_view key) {
  return std::find(std::begin(kFeatureKeys), std::end(kFeatureKeys), key) != std::end(kFeatureKeys);
}

FeatureBundle FeatureBundle::parse(std::string_view text) {
  FeatureBundle bundle;
  if (text.empty() || text == "-") return bundle;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    auto item = text.substr(pos, comma - pos);
    auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0 || eq + 1 == item.size()) {
      throw FeatureError("malformed feature item '" + std::string(item) + "'");
    }
    std::string key(item.substr(0, eq));
    std::string value(item.substr(eq + 1));
    if (!is_feature_key(key)) throw FeatureError("unknown feature key '" + key + "'");
    for (const auto& alt : split_alternatives(value)) {
      if (alt.empty()) throw FeatureError("empty member in ambiguity set '" + value + "'");
    }
    if (bundle.contains(key)) throw FeatureError("duplicate feature key '" + key + "'");
    bundle.items_.emplace_back(std::move(key), std::move(value));
    pos = comma + 1;
  }
  return bundle;
}

const std::string* FeatureBundle::get(std::string_view key) const {
  for (const auto& [k, v] : items_) {
    if (k == key) return &v;
  }
  return nullptr;
}

void FeatureBundle::set(std::string key, std::string value) {
  for (auto& [k, v] : items_) {
    if (k == key) {
      v = std::move(value);
      return;
    }
  }
  items_.emplace_back(std::move(key), std::move(value));
}

bool FeatureBundle::erase(std::string_view key) {
  auto it = std::find_if(items_.begin(), items_.end(), [&](const Item& i) { return i.first == key; });
  if (it == items_.end()) return false;
  items_.erase(it);
  return true;
}

void FeatureBundle::merge_missing(const FeatureBundle& other) {
  for (const auto& [k, v] : other) {
    if (!contains(k)) items_.emplace_back(k, v);
  }
}

std::string FeatureBundle::to_string() const {
  if (items_.empty()) return "-";
  std::string out;
  for (const auto& [k, v] : items_) {
    if (!out.empty()) out += ',';
    out += k;
    out += '=';
    out += v;
  }
  return out;
}

std::vector<std::string> split_alternatives(std::string_view value) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    auto bar = value.find('|', pos);
    if (bar == std::string_view::npos) {
      out.emplace_back(value.substr(pos));
      return out;
    }
    out.emplace_back(value.substr(pos, bar - pos));
    pos = bar + 1;
  }
}

Gnp Gnp::parse(std::string_view value) {
  Gnp gnp;
  if (value == "any") return gnp;
  std::size_t pos = 0;
  while (pos <= value.size()) {
    auto us = value.find('_', pos);
    if (us == std::string_view::npos) us = value.size();
    auto part = value.substr(pos, us - pos);
    if (part.empty() || part == "any") {
      // unconstrained
    } else if (part == "sg" || part == "pl") {
      gnp.number = std::string(part);
    } else if (all_digits(part)) {
      gnp.person = std::string(part);
    } else {
      gnp.gender = std::string(part);
    }
    pos = us + 1;
  }
  return gnp;
}

std::string Gnp::to_string() const {
  std::string out;
  for (const auto* part : {&gender, &number, &person}) {
    if (!*part) continue;
    if (!out.empty()) out += '_';
    out += **part;
  }
  return out.empty() ? "any" : out;
}

bool genders_compatible(std::string_view a, std::string_view b) {
  if (a == "any" || b == "any") return true;
  auto ma = gender_members(a);
  auto mb = gender_members(b);
  return std::any_of(ma.begin(), ma.end(), [&](char c) { return mb.find(c) != std::string::npos; });
}

bool persons_compatible(std::string_view a, std::string_view b) {
  if (a == "any" || b == "any") return true;
  return std::any_of(a.begin(), a.end(), [&](char c) { return b.find(c) != std::string_view::npos; });
}

namespace {

bool single_compatible(std::string_view key, std::string_view a, std::string_view b) {
  if (a == "any" || b == "any") return true;
  if (key == "gender") return genders_compatible(a, b);
  if (key == "person") return persons_compatible(a, b);
  if (key == "gnp") {
    auto ga = Gnp::parse(a);
    auto gb = Gnp::parse(b);
    if (ga.gender && gb.gender && !genders_compatible(*ga.gender, *gb.gender)) return false;
    if (ga.number && gb.number && *ga.number != *gb.number) return false;
    if (ga.person && gb.person && !persons_compatible(*ga.person, *gb.person)) return false;
    return true;
  }
  return a == b;
}

}  // namespace

bool values_compatible(std::string_view key, std::string_view a, std::string_view b) {
  for (const auto& x : split_alternatives(a)) {
    for (const auto& y : split_alternatives(b)) {
      if (single_compatible(key, x, y)) return true;
    }
  }
  return false;
}

bool bundle_satisfies(const FeatureBundle& offered, const FeatureBundle& required) {
  for (const auto& [k, v] : required) {
    const auto* have = offered.get(k);
    if (!have || !values_compatible(k, *have, v)) return false;
  }
  return true;
}

}  // namespace anusaaraka

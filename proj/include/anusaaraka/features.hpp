#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace anusaaraka {

enum class Category {
  noun,
  verb,
  pronoun,
  adjective,
  postposition,
  auxiliary,
  particle,
  punctuation,
};

/// Accepts full names ("noun") and the short forms used in analysis
/// listings ("n", "v", "pn", "adj", "post", "aux", "part", "punc").
std::optional<Category> parse_category(std::string_view text);
std::string_view category_name(Category c);
std::string_view category_abbrev(Category c);

bool is_nominal(Category c);
bool is_verbal(Category c);

class FeatureError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Closed feature vocabulary. Suffix entries contribute the first five,
/// inherent root features may also carry gender and person.
inline constexpr std::string_view kFeatureKeys[] = {
    "number", "case", "TAM", "gnp", "qmarker", "gender", "person"};

bool is_feature_key(std::string_view key);

/// Ordered key=value map. Values may be ambiguity sets written `2|3`
/// or the wildcard `any`. Insertion order is display order.
class FeatureBundle {
 public:
  using Item = std::pair<std::string, std::string>;

  FeatureBundle() = default;

  /// Parses "k=v,k=v". "-" and "" yield the empty bundle.
  static FeatureBundle parse(std::string_view text);

  const std::string* get(std::string_view key) const;
  bool contains(std::string_view key) const { return get(key) != nullptr; }

  /// Replaces an existing value in place or appends.
  void set(std::string key, std::string value);
  bool erase(std::string_view key);

  /// Adds every item of `other` whose key is not already present.
  void merge_missing(const FeatureBundle& other);

  bool empty() const { return items_.empty(); }
  std::size_t size() const { return items_.size(); }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }

  /// "k=v,k=v"; "-" for an empty bundle.
  std::string to_string() const;

  friend bool operator==(const FeatureBundle&, const FeatureBundle&) = default;

 private:
  std::vector<Item> items_;
};

std::vector<std::string> split_alternatives(std::string_view value);

/// Gender-number-person value such as "non-neuter_pl_3", "fem_sg_3",
/// "pl_23" or "any". Missing components are unconstrained.
struct Gnp {
  std::optional<std::string> gender;
  std::optional<std::string> number;
  std::optional<std::string> person;  // digits; "23" means 2nd or 3rd

  static Gnp parse(std::string_view value);
  std::string to_string() const;
};

bool genders_compatible(std::string_view a, std::string_view b);
bool persons_compatible(std::string_view a, std::string_view b);

/// True when some member of `a`'s ambiguity set agrees with some member
/// of `b`'s under the rules for `key`.
bool values_compatible(std::string_view key, std::string_view a, std::string_view b);

/// Every key of `required` is present in `offered` with a compatible value.
bool bundle_satisfies(const FeatureBundle& offered, const FeatureBundle& required);

}  // namespace anusaaraka

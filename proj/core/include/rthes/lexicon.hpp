#pragma once

// Dictionaries and the mapping from (term, context) to abstract concepts.
//
// Per language there are three tab-separated files:
//   variations.tsv  lang, variant, normal_form
//   main.tsv        lang, normal_form, context, concept, representative,
//                   category, related (comma separated, may be empty)
//   stopwords.tsv   lang, word
// Blank lines and lines starting with '#' are ignored. All matching is done
// on case-folded text.

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rthes/thesaurus.hpp"

namespace rthes {

enum class Category { noun, adjective, verb };

inline constexpr std::array<Category, 3> kCategories{Category::noun, Category::adjective, Category::verb};

std::string_view to_string(Category c);
std::optional<Category> parse_category(std::string_view text);

// Symmetric co-occurrence window per pair of grammatical categories.
class DistMatrix {
 public:
  static constexpr int kDefaultWindow = 5;

  explicit DistMatrix(int uniform = kDefaultWindow);

  int at(Category a, Category b) const;
  // Sets both (a, b) and (b, a). Throws LexiconError for windows below 1.
  void set(Category a, Category b, int window);

  friend bool operator==(const DistMatrix&, const DistMatrix&) = default;

 private:
  std::array<std::array<int, 3>, 3> cells_{};
};

int pair_threshold(Category a, Category b, const DistMatrix& matrix);

struct VariationEntry {
  std::string language;
  std::string variant;
  std::string normal_form;
};

struct MainEntry {
  std::string language;
  std::string normal_form;
  std::string context;
  ConceptId concept_id;
  std::string representative;
  Category category = Category::noun;
  std::vector<ConceptId> related;
};

struct DictionaryFiles {
  std::string language;
  std::filesystem::path variations;
  std::filesystem::path main;
  std::filesystem::path stopwords;
};

enum class IssueKind { syntax, duplicate_key, injectivity, dangling_related };

struct ValidationIssue {
  IssueKind kind;
  std::string source;
  std::size_t line = 0;
  std::string message;

  // Dangling related concepts are reported but do not block loading.
  bool is_error() const { return kind != IssueKind::dangling_related; }
  std::string describe() const;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool empty() const { return issues.empty(); }
  bool has_errors() const;
};

enum class UnitKind { term, stopword, unknown };

// One normalized unit covering `token_count` input tokens from `first_token`.
struct LexicalUnit {
  UnitKind kind;
  std::string form;     // folded normal form (or folded spelling when unknown)
  std::string surface;  // original tokens joined by single spaces
  std::size_t first_token = 0;
  std::size_t token_count = 1;
};

struct Normalization {
  std::vector<LexicalUnit> units;

  // Normal forms of the `term` units, in order.
  std::vector<std::string> terms() const;
};

struct Candidate {
  std::string context;
  ConceptId concept_id;
  Category category = Category::noun;

  friend bool operator==(const Candidate&, const Candidate&) = default;
};

struct Resolved {
  ConceptId concept_id;
  std::string context;
  Category category = Category::noun;
};

struct Ambiguous {
  std::vector<Candidate> candidates;  // sorted by context
};

struct UnknownTerm {};

using ConceptResolution = std::variant<Resolved, Ambiguous, UnknownTerm>;

struct RepresentativeInfo {
  std::string term;
  std::vector<ConceptId> related;
};

// Immutable once built; share through std::shared_ptr<const Lexicon>.
class Lexicon {
 public:
  class Builder {
   public:
    Builder& add_language(std::string language);
    Builder& add_variation(VariationEntry entry, std::string source = {}, std::size_t line = 0);
    Builder& add_entry(MainEntry entry, std::string source = {}, std::size_t line = 0);
    Builder& add_stopword(std::string language, std::string word, std::string source = {},
                          std::size_t line = 0);
    Builder& add_issue(ValidationIssue issue);
    Builder& dist(DistMatrix matrix);

    ValidationReport validate() const;
    // Throws LexiconError when validate() reports errors.
    std::shared_ptr<const Lexicon> build() const;

   private:
    template <class T>
    struct Sourced {
      T value;
      std::string source;
      std::size_t line;
    };

    std::set<std::string> languages_;
    std::vector<Sourced<VariationEntry>> variations_;
    std::vector<Sourced<MainEntry>> entries_;
    std::vector<Sourced<std::pair<std::string, std::string>>> stopwords_;
    std::vector<ValidationIssue> issues_;
    DistMatrix dist_;
  };

  bool has_language(std::string_view language) const;
  std::vector<std::string> languages() const;

  // Longest-match look-ahead over `tokens`. Throws LexiconError when no
  // dictionary is loaded for `language`.
  Normalization normalize(std::span<const std::string> tokens, std::string_view language) const;

  ConceptResolution resolve(std::string_view normal_form, std::string_view language,
                            std::optional<std::string_view> context = std::nullopt) const;

  // Throws LexiconError("concept_unknown_in_language").
  RepresentativeInfo representative(const ConceptId& concept_id, std::string_view language) const;

  std::optional<Category> category_of(const ConceptId& concept_id, std::string_view language) const;
  bool knows_concept(const ConceptId& concept_id) const { return concepts_.contains(concept_id); }
  const std::set<ConceptId>& concepts() const { return concepts_; }
  std::size_t max_compound_length(std::string_view language) const;

  const DistMatrix& dist() const { return dist_; }

 private:
  struct Tables {
    std::map<std::string, std::string, std::less<>> variations;  // folded variant -> folded form
    std::map<std::string, std::vector<std::size_t>, std::less<>> by_form;
    std::map<ConceptId, std::vector<std::size_t>> by_concept;
    std::set<std::string, std::less<>> stopwords;
    std::size_t max_compound = 1;
  };

  const Tables& tables(std::string_view language) const;

  std::vector<MainEntry> entries_;
  std::map<std::string, Tables, std::less<>> languages_;
  std::set<ConceptId> concepts_;
  DistMatrix dist_;
};

struct LoadedLexicon {
  std::shared_ptr<const Lexicon> lexicon;
  ValidationReport report;  // warnings only; errors throw
};

ValidationReport validate_dictionaries(std::span<const DictionaryFiles> files,
                                       const DistMatrix& dist = DistMatrix{});

// Throws LexiconError on unreadable files or any validation error.
LoadedLexicon load_dictionaries(std::span<const DictionaryFiles> files,
                                const DistMatrix& dist = DistMatrix{});

}  // namespace rthes

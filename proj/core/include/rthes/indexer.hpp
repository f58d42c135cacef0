#pragma once

// Occurrences and term-term association statistics for one document.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rthes/lexicon.hpp"

namespace rthes {

inline constexpr int kDefaultCorrectionExponent = 3;
inline constexpr double kDefaultSignificance = 0.10;

// One occurrence of a concept: document, phrase (1-based) and token
// position within the phrase (1-based, counted on the raw token stream so
// stopwords keep their slots).
struct Occurrence {
  ConceptId concept_id;
  DocId document = 0;
  std::uint32_t phrase = 1;
  std::uint32_t position = 1;
  Category category = Category::noun;

  friend bool operator==(const Occurrence&, const Occurrence&) = default;
};

// Token distance inside one phrase of one document; 0 otherwise.
std::uint32_t distance(const Occurrence& a, const Occurrence& b);

// 1/d for 0 < d <= window, else 0.
double binding_force(const Occurrence& a, const Occurrence& b, int window);

struct Association {
  double k = 0;  // ((f-1)/f)^n
  double m = 0;  // k * b / f
};

Association association(double b, std::size_t f, int n);

struct PairStats {
  ConceptId first;  // first < second
  ConceptId second;
  double b = 0;
  std::size_t f = 0;
  double k = 0;
  double m = 0;
};

// Statistics for every unordered pair of distinct concepts that share a
// phrase at a nonzero distance. f counts those co-located occurrence pairs;
// b sums the binding forces within the category window. Sorted by (first,
// second).
std::vector<PairStats> pair_statistics(std::span<const Occurrence> occurrences, const DistMatrix& dist,
                                       int n = kDefaultCorrectionExponent);

// Concepts taking part in at least one pair with m >= theta.
std::set<ConceptId> significant_terms(std::span<const PairStats> stats, double theta = kDefaultSignificance);

// Terms still to be mapped by the user: ambiguous forms (several candidate
// contexts) and unknown forms (no candidate).
struct AmbiguityItem {
  std::size_t id = 0;
  std::string surface;
  std::string normal_form;
  std::string language;
  DocId document = 0;
  std::uint32_t phrase = 1;
  std::uint32_t position = 1;
  std::size_t token_count = 1;
  std::vector<Candidate> candidates;

  bool unknown() const { return candidates.empty(); }
};

struct DocumentAnalysis {
  std::vector<Occurrence> occurrences;
  std::vector<AmbiguityItem> pending;  // ids numbered from 0 in text order
};

DocumentAnalysis extract_occurrences(std::string_view text, DocId document, std::string_view language,
                                     const Lexicon& lexicon);

// Tab-separated export: term1, term2, b, f, b/f, k, M (header line first),
// sorted by descending M. `label` maps a concept to the displayed term.
void write_stats_tsv(std::ostream& out, std::span<const PairStats> stats,
                     const std::function<std::string(const ConceptId&)>& label, int precision = 2);

}  // namespace rthes

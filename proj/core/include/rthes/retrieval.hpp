#pragma once

// Query resolution and matching against the rectangular thesaurus.

#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rthes/lexicon.hpp"
#include "rthes/thesaurus.hpp"

namespace rthes {

struct Query {
  std::string language;
  std::vector<std::string> surface_terms;
  std::set<ConceptId> concepts;
};

struct QueryAmbiguity {
  std::string surface;
  std::string normal_form;
  std::vector<Candidate> candidates;
};

struct QueryResolution {
  Query query;
  std::vector<QueryAmbiguity> ambiguities;  // terms needing a context
  std::vector<std::string> unknown;         // surfaces with no dictionary entry
};

// Each surface term is tokenized and normalized with the indexing
// machinery. `contexts` maps a term (surface or normal form, case-folded)
// to the context that settles its ambiguity. Stopwords and unknown terms
// are dropped. Throws EmptyQuery when nothing resolves and nothing is
// ambiguous.
QueryResolution resolve_query(const Lexicon& lexicon, std::string_view language,
                              std::span<const std::string> terms,
                              const std::map<std::string, std::string>& contexts = {});

struct RectangleMatch {
  NodeId node{};
  std::set<ConceptId> domain;
  std::set<DocId> documents;
  std::set<ConceptId> feedback;  // domain - query
};

struct MatchResult {
  std::vector<RectangleMatch> matches;  // ascending domain size, then domain

  bool empty() const { return matches.empty(); }
  std::set<DocId> documents() const;
};

// Non-bound nodes whose domain contains `concepts` and is inclusion-minimal
// among such nodes. Throws EmptyQuery for an empty concept set.
MatchResult match(const RectangularThesaurus& th, const std::set<ConceptId>& concepts);

// Throws Error("concept_not_in_query") when `drop` is absent.
Query broaden(Query query, const ConceptId& drop);

// Representative in `language`, or the concept id when none exists.
std::string render_concept(const Lexicon& lexicon, const ConceptId& concept_id, std::string_view language);

}  // namespace rthes

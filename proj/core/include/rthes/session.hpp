#pragma once

// Interactive indexing. A session holds every term of its documents that the
// dictionaries cannot settle alone until the user resolves it. Only a
// session with nothing pending can be indexed into the thesaurus.

#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rthes/indexer.hpp"
#include "rthes/thesaurus_store.hpp"

namespace rthes {

struct SelectContext {
  std::string context;
  friend bool operator==(const SelectContext&, const SelectContext&) = default;
};

struct MapToConcept {
  ConceptId concept_id;
  friend bool operator==(const MapToConcept&, const MapToConcept&) = default;
};

struct Discard {
  friend bool operator==(const Discard&, const Discard&) = default;
};

using Choice = std::variant<SelectContext, MapToConcept, Discard>;

std::string describe(const Choice& choice);

// A session-wide decision for one surface term, as read from a resolutions
// file: `surface<TAB>language<TAB>context`, where the context column may
// also be `-` (discard) or `=CONCEPT` (map straight to a concept id).
struct ResolutionRule {
  std::string surface;
  std::string language;
  Choice choice;
};

Choice parse_choice(std::string_view text);
std::vector<ResolutionRule> read_resolutions(std::istream& in, const std::string& source = {});
std::vector<ResolutionRule> read_resolutions_file(const std::string& path);

struct SessionDocument {
  DocId id = 0;
  DocumentInfo info;  // info.language selects the dictionaries
  std::string text;
};

enum class SessionPhase { analyzing, awaiting_resolutions, committed };

std::string_view to_string(SessionPhase phase);

class AmbiguitySession {
 public:
  // Analyzes every document (concurrently when there are several).
  AmbiguitySession(std::string id, std::vector<SessionDocument> documents,
                   std::shared_ptr<const Lexicon> lexicon);

  const std::string& id() const { return id_; }
  SessionPhase phase() const { return phase_; }
  const std::vector<SessionDocument>& documents() const { return documents_; }
  const Lexicon& lexicon() const { return *lexicon_; }

  const std::vector<AmbiguityItem>& items() const { return items_; }
  const AmbiguityItem& item(std::size_t id) const;
  std::vector<AmbiguityItem> pending() const;
  std::size_t pending_count() const;
  std::size_t resolved_count() const { return resolutions_.size(); }
  std::optional<Choice> resolution(std::size_t id) const;

  // Resolves one item, or with `apply_to_all` every pending item sharing its
  // language and normal form. Returns the ids resolved by this call.
  // Repeating an identical resolution is a no-op; changing one is refused.
  std::vector<std::size_t> resolve(std::size_t id, const Choice& choice, bool apply_to_all = false);

  // Resolves every pending item whose surface or normal form matches the
  // rule. Returns the number of items resolved.
  std::size_t apply(const ResolutionRule& rule);

  // Throws SessionError("pending_ambiguities") while items are pending.
  void commit();

  // Occurrences known so far: direct dictionary hits plus resolved items.
  std::map<DocId, std::vector<Occurrence>> occurrences() const;

 private:
  void check_choice(const AmbiguityItem& item, const Choice& choice) const;
  std::optional<Occurrence> occurrence_for(const AmbiguityItem& item, const Choice& choice) const;

  std::string id_;
  std::vector<SessionDocument> documents_;
  std::shared_ptr<const Lexicon> lexicon_;
  SessionPhase phase_ = SessionPhase::analyzing;
  std::map<DocId, std::vector<Occurrence>> direct_;
  std::vector<AmbiguityItem> items_;
  std::map<std::size_t, Choice> resolutions_;
};

struct IndexParams {
  int n = kDefaultCorrectionExponent;
  double theta = kDefaultSignificance;
  std::size_t cell_cap = kDefaultCellCap;
  // Insert documents one at a time instead of decomposing them together.
  bool incremental = false;
};

struct DocumentIndexing {
  DocId document = 0;
  std::vector<PairStats> stats;
  std::set<ConceptId> significant;
};

struct IndexReport {
  std::vector<DocumentIndexing> documents;
  std::vector<InsertReport> insertions;
};

// Inserts per-document significant term sets: a lone document becomes one
// rectangle (terms x {doc}); several documents are decomposed together into
// optimal rectangles first. Documents with no terms add no rectangle.
std::vector<InsertReport> insert_term_sets(RectangularThesaurus& th,
                                           const std::map<DocId, std::set<ConceptId>>& term_sets,
                                           std::size_t cell_cap = kDefaultCellCap);

// Refuses uncommitted sessions with SessionError("session_not_committed").
// The thesaurus changes atomically: on error nothing is published.
IndexReport index_documents(const AmbiguitySession& session, const IndexParams& params, ThesaurusStore& store);

}  // namespace rthes

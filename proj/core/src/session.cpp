#include "rthes/session.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <istream>
#include <tuple>

#include "rthes/errors.hpp"
#include "rthes/text.hpp"

namespace rthes {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    const auto tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return fields;
}

std::string trim_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

}  // namespace

std::string describe(const Choice& choice) {
  if (const auto* s = std::get_if<SelectContext>(&choice)) return s->context;
  if (const auto* m = std::get_if<MapToConcept>(&choice)) return "=" + m->concept_id;
  return "-";
}

Choice parse_choice(std::string_view text) {
  if (text == "-") return Discard{};
  if (!text.empty() && text.front() == '=') {
    if (text.size() == 1) throw SessionError("invalid_choice", "'=' must be followed by a concept id");
    return MapToConcept{std::string(text.substr(1))};
  }
  if (text.empty()) throw SessionError("invalid_choice", "empty choice");
  return SelectContext{std::string(text)};
}

std::vector<ResolutionRule> read_resolutions(std::istream& in, const std::string& source) {
  std::vector<ResolutionRule> rules;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    line = trim_cr(std::move(line));
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split_tabs(line);
    if (fields.size() != 3) throw ParseError(source, number, "expected surface<TAB>language<TAB>choice");
    if (fields[0].empty() || fields[1].empty()) throw ParseError(source, number, "empty surface or language");
    try {
      rules.push_back({fields[0], fields[1], parse_choice(fields[2])});
    } catch (const SessionError& e) {
      throw ParseError(source, number, e.what());
    }
  }
  return rules;
}

std::vector<ResolutionRule> read_resolutions_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("io_error", "cannot open " + path);
  return read_resolutions(in, path);
}

std::string_view to_string(SessionPhase phase) {
  switch (phase) {
    case SessionPhase::analyzing: return "analyzing";
    case SessionPhase::awaiting_resolutions: return "awaiting_resolutions";
    case SessionPhase::committed: return "committed";
  }
  return "unknown";
}

AmbiguitySession::AmbiguitySession(std::string id, std::vector<SessionDocument> documents,
                                   std::shared_ptr<const Lexicon> lexicon)
    : id_(std::move(id)), documents_(std::move(documents)), lexicon_(std::move(lexicon)) {
  if (!lexicon_) throw SessionError("no_lexicon", "a session needs a lexicon");
  for (const auto& d : documents_) {
    if (!lexicon_->has_language(d.info.language)) {
      throw SessionError("unsupported_language", "no dictionary for language '" + d.info.language + "'");
    }
  }
  std::vector<DocId> ids;
  for (const auto& d : documents_) ids.push_back(d.id);
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
    throw SessionError("duplicate_document", "a document id appears twice in the session");
  }

  std::vector<DocumentAnalysis> analyses(documents_.size());
  if (documents_.size() == 1) {
    analyses[0] = extract_occurrences(documents_[0].text, documents_[0].id, documents_[0].info.language, *lexicon_);
  } else {
    std::vector<std::future<DocumentAnalysis>> futures;
    for (const auto& d : documents_) {
      futures.push_back(std::async(std::launch::async, [this, &d] {
        return extract_occurrences(d.text, d.id, d.info.language, *lexicon_);
      }));
    }
    for (std::size_t i = 0; i < futures.size(); ++i) analyses[i] = futures[i].get();
  }

  for (std::size_t i = 0; i < documents_.size(); ++i) {
    direct_[documents_[i].id] = std::move(analyses[i].occurrences);
    for (auto& item : analyses[i].pending) {
      item.id = items_.size();
      items_.push_back(std::move(item));
    }
  }
  phase_ = SessionPhase::awaiting_resolutions;
}

const AmbiguityItem& AmbiguitySession::item(std::size_t id) const {
  if (id >= items_.size()) throw SessionError("unknown_item", "no ambiguity item " + std::to_string(id));
  return items_[id];
}

std::vector<AmbiguityItem> AmbiguitySession::pending() const {
  std::vector<AmbiguityItem> out;
  for (const auto& it : items_) {
    if (!resolutions_.contains(it.id)) out.push_back(it);
  }
  return out;
}

std::size_t AmbiguitySession::pending_count() const { return items_.size() - resolutions_.size(); }

std::optional<Choice> AmbiguitySession::resolution(std::size_t id) const {
  if (auto it = resolutions_.find(id); it != resolutions_.end()) return it->second;
  return std::nullopt;
}

void AmbiguitySession::check_choice(const AmbiguityItem& it, const Choice& choice) const {
  if (const auto* s = std::get_if<SelectContext>(&choice)) {
    const bool offered = std::any_of(it.candidates.begin(), it.candidates.end(),
                                     [&](const Candidate& c) { return c.context == s->context; });
    if (!offered) {
      throw SessionError("invalid_choice", "context '" + s->context + "' is not a candidate for '" + it.surface + "'");
    }
  } else if (const auto* m = std::get_if<MapToConcept>(&choice)) {
    if (!lexicon_->knows_concept(m->concept_id)) {
      throw SessionError("invalid_choice", "unknown concept '" + m->concept_id + "'");
    }
  }
}

std::optional<Occurrence> AmbiguitySession::occurrence_for(const AmbiguityItem& it, const Choice& choice) const {
  if (const auto* s = std::get_if<SelectContext>(&choice)) {
    for (const auto& c : it.candidates) {
      if (c.context == s->context) return Occurrence{c.concept_id, it.document, it.phrase, it.position, c.category};
    }
    return std::nullopt;
  }
  if (const auto* m = std::get_if<MapToConcept>(&choice)) {
    const auto category = lexicon_->category_of(m->concept_id, it.language).value_or(Category::noun);
    return Occurrence{m->concept_id, it.document, it.phrase, it.position, category};
  }
  return std::nullopt;
}

std::vector<std::size_t> AmbiguitySession::resolve(std::size_t id, const Choice& choice, bool apply_to_all) {
  if (phase_ == SessionPhase::committed) throw SessionError("session_committed", "session is already committed");
  const AmbiguityItem& target = item(id);
  if (auto existing = resolutions_.find(id); existing != resolutions_.end()) {
    if (existing->second == choice) return {};
    throw SessionError("already_resolved", "item " + std::to_string(id) + " is already resolved as '" +
                                               describe(existing->second) + "'");
  }
  check_choice(target, choice);

  std::vector<std::size_t> done{id};
  resolutions_.emplace(id, choice);
  if (apply_to_all) {
    for (const auto& other : items_) {
      if (resolutions_.contains(other.id)) continue;
      if (other.language != target.language || other.normal_form != target.normal_form) continue;
      resolutions_.emplace(other.id, choice);
      done.push_back(other.id);
    }
  }
  return done;
}

std::size_t AmbiguitySession::apply(const ResolutionRule& rule) {
  if (phase_ == SessionPhase::committed) throw SessionError("session_committed", "session is already committed");
  const std::string folded = fold_case(rule.surface);
  std::size_t count = 0;
  for (const auto& it : items_) {
    if (resolutions_.contains(it.id) || it.language != rule.language) continue;
    if (fold_case(it.surface) != folded && it.normal_form != folded) continue;
    check_choice(it, rule.choice);
    resolutions_.emplace(it.id, rule.choice);
    ++count;
  }
  return count;
}

void AmbiguitySession::commit() {
  if (phase_ == SessionPhase::committed) return;
  if (const auto n = pending_count(); n > 0) {
    throw SessionError("pending_ambiguities", std::to_string(n) + " ambiguity item(s) still pending");
  }
  phase_ = SessionPhase::committed;
}

std::map<DocId, std::vector<Occurrence>> AmbiguitySession::occurrences() const {
  auto out = direct_;
  for (const auto& [id, choice] : resolutions_) {
    const auto& it = items_[id];
    if (auto occ = occurrence_for(it, choice)) out[it.document].push_back(std::move(*occ));
  }
  for (auto& [doc, list] : out) {
    std::stable_sort(list.begin(), list.end(), [](const Occurrence& a, const Occurrence& b) {
      return std::tie(a.phrase, a.position) < std::tie(b.phrase, b.position);
    });
  }
  return out;
}

std::vector<InsertReport> insert_term_sets(RectangularThesaurus& th,
                                           const std::map<DocId, std::set<ConceptId>>& term_sets,
                                           std::size_t cell_cap) {
  TermDocRelation relation;
  std::size_t documents_with_terms = 0;
  for (const auto& [doc, terms] : term_sets) {
    if (terms.empty()) continue;
    ++documents_with_terms;
    for (const auto& t : terms) relation.insert(t, doc);
  }

  std::vector<InsertReport> reports;
  if (documents_with_terms == 0) return reports;
  if (documents_with_terms == 1) {
    const auto& [doc, terms] = *std::find_if(term_sets.begin(), term_sets.end(),
                                             [](const auto& entry) { return !entry.second.empty(); });
    reports.push_back(th.insert(TermDocRectangle{terms, {doc}}));
    return reports;
  }
  for (const auto& rect : decompose(relation, cell_cap)) reports.push_back(th.insert(rect));
  return reports;
}

IndexReport index_documents(const AmbiguitySession& session, const IndexParams& params, ThesaurusStore& store) {
  if (session.phase() != SessionPhase::committed) {
    throw SessionError("session_not_committed", "session '" + session.id() + "' has not been committed");
  }
  IndexReport report;
  std::map<DocId, std::set<ConceptId>> term_sets;
  const auto occurrences = session.occurrences();
  for (const auto& d : session.documents()) {
    DocumentIndexing indexing;
    indexing.document = d.id;
    if (auto it = occurrences.find(d.id); it != occurrences.end()) {
      indexing.stats = pair_statistics(it->second, session.lexicon().dist(), params.n);
    }
    indexing.significant = significant_terms(indexing.stats, params.theta);
    term_sets[d.id] = indexing.significant;
    report.documents.push_back(std::move(indexing));
  }

  report.insertions = store.mutate([&](RectangularThesaurus& th) {
    for (const auto& d : session.documents()) th.register_document(d.id, d.info);
    if (!params.incremental) return insert_term_sets(th, term_sets, params.cell_cap);
    std::vector<InsertReport> reports;
    for (const auto& [doc, terms] : term_sets) {
      auto part = insert_term_sets(th, {{doc, terms}}, params.cell_cap);
      reports.insert(reports.end(), part.begin(), part.end());
    }
    return reports;
  });
  return report;
}

}  // namespace rthes

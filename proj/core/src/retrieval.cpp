#include "rthes/retrieval.hpp"

#include <algorithm>
#include <variant>

#include "rthes/errors.hpp"
#include "rthes/text.hpp"

namespace rthes {

QueryResolution resolve_query(const Lexicon& lexicon, std::string_view language,
                              std::span<const std::string> terms,
                              const std::map<std::string, std::string>& contexts) {
  if (!lexicon.has_language(language)) {
    throw LexiconError("unsupported_language", "no dictionary for language '" + std::string(language) + "'");
  }
  std::map<std::string, std::string> folded_contexts;
  for (const auto& [term, context] : contexts) folded_contexts[fold_case(term)] = context;

  QueryResolution out;
  out.query.language = std::string(language);
  for (const auto& term : terms) {
    out.query.surface_terms.push_back(term);
    const auto tokens = words(term);
    if (tokens.empty()) continue;
    for (const auto& unit : lexicon.normalize(tokens, language).units) {
      if (unit.kind == UnitKind::stopword) continue;
      if (unit.kind == UnitKind::unknown) {
        out.unknown.push_back(unit.surface);
        continue;
      }
      std::optional<std::string_view> context;
      auto hit = folded_contexts.find(fold_case(unit.surface));
      if (hit == folded_contexts.end()) hit = folded_contexts.find(unit.form);
      if (hit != folded_contexts.end()) context = hit->second;

      auto resolution = lexicon.resolve(unit.form, language, context);
      if (const auto* r = std::get_if<Resolved>(&resolution)) {
        out.query.concepts.insert(r->concept_id);
      } else if (const auto* a = std::get_if<Ambiguous>(&resolution)) {
        out.ambiguities.push_back({unit.surface, unit.form, a->candidates});
      } else {
        out.unknown.push_back(unit.surface);
      }
    }
  }
  if (out.query.concepts.empty() && out.ambiguities.empty()) throw EmptyQuery();
  return out;
}

std::set<DocId> MatchResult::documents() const {
  std::set<DocId> out;
  for (const auto& m : matches) out.insert(m.documents.begin(), m.documents.end());
  return out;
}

MatchResult match(const RectangularThesaurus& th, const std::set<ConceptId>& concepts) {
  if (concepts.empty()) throw EmptyQuery();
  std::vector<NodeId> containing;
  for (NodeId id : th.node_ids()) {
    if (detail::is_subset(concepts, th.rectangle(id).domain)) containing.push_back(id);
  }

  MatchResult result;
  for (NodeId id : containing) {
    const auto& domain = th.rectangle(id).domain;
    const bool minimal = std::none_of(containing.begin(), containing.end(), [&](NodeId other) {
      const auto& d = th.rectangle(other).domain;
      return other != id && d.size() < domain.size() && detail::is_subset(d, domain);
    });
    if (!minimal) continue;
    RectangleMatch m{id, domain, th.rectangle(id).codomain, {}};
    std::set_difference(domain.begin(), domain.end(), concepts.begin(), concepts.end(),
                        std::inserter(m.feedback, m.feedback.end()));
    result.matches.push_back(std::move(m));
  }
  std::sort(result.matches.begin(), result.matches.end(), [](const RectangleMatch& a, const RectangleMatch& b) {
    if (a.domain.size() != b.domain.size()) return a.domain.size() < b.domain.size();
    return a.domain < b.domain;
  });
  return result;
}

Query broaden(Query query, const ConceptId& drop) {
  if (query.concepts.erase(drop) == 0) {
    throw Error("concept_not_in_query", "concept '" + drop + "' is not part of the query");
  }
  return query;
}

std::string render_concept(const Lexicon& lexicon, const ConceptId& concept_id, std::string_view language) {
  try {
    return lexicon.representative(concept_id, language).term;
  } catch (const LexiconError&) {
    return concept_id;
  }
}

}  // namespace rthes

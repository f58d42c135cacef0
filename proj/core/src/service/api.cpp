#include "rthes/service/api.hpp"

#include <algorithm>
#include <sstream>

#include "rthes/errors.hpp"
#include "rthes/retrieval.hpp"
#include "rthes/text.hpp"

namespace rthes::service {

using nlohmann::json;

namespace {

// Malformed requests.
class BadRequest : public Error {
 public:
  explicit BadRequest(const std::string& message) : Error("bad_request", message) {}
};

class NotFound : public Error {
 public:
  NotFound(std::string code, const std::string& message) : Error(std::move(code), message) {}
};

ApiResponse ok(json body, int status = 200) {
  body["schema_version"] = kApiSchemaVersion;
  return {status, std::move(body)};
}

ApiResponse failure(int status, const std::string& code, const std::string& message, json extra = json::object()) {
  json error{{"code", code}, {"message", message}};
  for (auto& [k, v] : extra.items()) error[k] = v;
  return {status, json{{"schema_version", kApiSchemaVersion}, {"error", std::move(error)}}};
}

int status_for(const std::string& code) {
  static const std::map<std::string, int> table{
      {"unknown_session", 404},     {"unknown_item", 404},        {"unknown_node", 404},
      {"unknown_concept", 404},     {"unknown_document", 404},    {"not_found", 404},
      {"pending_ambiguities", 409}, {"already_resolved", 409},    {"session_committed", 409},
      {"ambiguous_query", 409},     {"method_not_allowed", 405},  {"cap_exceeded", 422},
      {"io_error", 500},             {"concept_unknown_in_language", 404},
  };
  auto it = table.find(code);
  return it == table.end() ? 400 : it->second;
}

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> parts;
  std::stringstream ss(path);
  std::string part;
  while (std::getline(ss, part, '/')) {
    if (!part.empty()) parts.push_back(part);
  }
  return parts;
}

std::optional<std::string> param(const ApiRequest& r, const std::string& key) {
  auto it = r.params.find(key);
  if (it == r.params.end()) return std::nullopt;
  return it->second;
}

std::string required_param(const ApiRequest& r, const std::string& key) {
  auto v = param(r, key);
  if (!v || v->empty()) throw BadRequest("missing query parameter '" + key + "'");
  return *v;
}

json parse_body(const ApiRequest& r) {
  if (r.body.empty()) return json::object();
  try {
    return json::parse(r.body);
  } catch (const json::exception& e) {
    throw BadRequest(std::string("malformed JSON body: ") + e.what());
  }
}

json label(const Lexicon& lexicon, const ConceptId& concept_id, const std::string& language) {
  return json{{"concept", concept_id}, {"label", render_concept(lexicon, concept_id, language)}};
}

json labels(const Lexicon& lexicon, const std::set<ConceptId>& concepts, const std::string& language) {
  json out = json::array();
  for (const auto& c : concepts) out.push_back(label(lexicon, c, language));
  return out;
}

json session_json(const AmbiguitySession& s) {
  json docs = json::array();
  for (const auto& d : s.documents()) docs.push_back(d.id);
  return json{{"id", s.id()},
              {"phase", std::string(to_string(s.phase()))},
              {"documents", docs},
              {"pending", s.pending_count()},
              {"resolved", s.resolved_count()}};
}

json item_json(const AmbiguityItem& it, const Lexicon& lexicon) {
  json candidates = json::array();
  for (const auto& c : it.candidates) {
    candidates.push_back({{"context", c.context},
                          {"concept", c.concept_id},
                          {"category", std::string(to_string(c.category))},
                          {"representative", render_concept(lexicon, c.concept_id, it.language)}});
  }
  return json{{"id", it.id},
              {"surface", it.surface},
              {"normal_form", it.normal_form},
              {"language", it.language},
              {"document", it.document},
              {"phrase", it.phrase},
              {"position", it.position},
              {"unknown", it.unknown()},
              {"candidates", candidates}};
}

Choice choice_from_json(const json& j) {
  if (j.is_string()) return parse_choice(j.get<std::string>());
  if (!j.is_object()) throw BadRequest("choice must be a string or an object");
  if (j.contains("context")) return SelectContext{j.at("context").get<std::string>()};
  if (j.contains("concept")) return MapToConcept{j.at("concept").get<std::string>()};
  if (j.value("discard", false)) return Discard{};
  throw BadRequest("choice needs 'context', 'concept' or 'discard'");
}

json insert_json(const InsertReport& r) {
  auto ids = [](const std::vector<NodeId>& v) {
    json a = json::array();
    for (NodeId n : v) a.push_back(raw(n));
    return a;
  };
  return json{{"node", raw(r.node)},
              {"merged", r.merged},
              {"level_created", r.level_created},
              {"generics", ids(r.generics)},
              {"specifics", ids(r.specifics)},
              {"added_to_supremum", r.added_to_supremum},
              {"linked_to_infimum", r.linked_to_infimum},
              {"extended", ids(r.extended)}};
}

json report_json(const IndexReport& report) {
  json docs = json::array();
  for (const auto& d : report.documents) docs.push_back({{"id", d.document}, {"significant", d.significant}});
  json inserts = json::array();
  for (const auto& r : report.insertions) inserts.push_back(insert_json(r));
  return json{{"documents", docs}, {"insertions", inserts}};
}

}  // namespace

std::string ApiResponse::text() const { return body.dump() + "\n"; }

ApiResponse ApiService::handle(const ApiRequest& request) const {
  try {
    return route(request);
  } catch (const SessionError& e) {
    return failure(status_for(e.code()), e.code(), e.what());
  } catch (const EmptyQuery& e) {
    return failure(400, e.code(), e.what());
  } catch (const Error& e) {
    return failure(status_for(e.code()), e.code(), e.what());
  } catch (const json::exception& e) {
    return failure(400, "bad_request", e.what());
  } catch (const std::exception& e) {
    return failure(500, "internal_error", e.what());
  }
}

ApiResponse ApiService::route(const ApiRequest& r) const {
  const auto parts = split_path(r.path);
  const bool get = r.method == "GET";
  const bool post = r.method == "POST";
  auto wrong_method = [&] { return failure(405, "method_not_allowed", r.method + " not allowed on " + r.path); };

  if (parts.size() == 1 && parts[0] == "sessions") return post ? create_session(r) : wrong_method();
  if (parts.size() == 2 && parts[0] == "sessions") return get ? session_state(parts[1]) : wrong_method();
  if (parts.size() == 3 && parts[0] == "sessions") {
    if (parts[2] == "ambiguities") return get ? ambiguities(parts[1]) : wrong_method();
    if (parts[2] == "resolutions") return post ? resolutions(parts[1], r) : wrong_method();
    if (parts[2] == "commit") return post ? commit(parts[1]) : wrong_method();
  }
  if (parts.size() == 1 && parts[0] == "thesaurus") return get ? thesaurus(r) : wrong_method();
  if (parts.size() == 1 && parts[0] == "query") return get ? query(r) : wrong_method();
  if (parts.size() == 2 && parts[0] == "concepts") return get ? concept_info(parts[1], r) : wrong_method();
  return failure(404, "not_found", "no endpoint " + r.method + " " + r.path);
}

ApiResponse ApiService::create_session(const ApiRequest& r) const {
  const json body = parse_body(r);
  if (!body.contains("documents") || !body.at("documents").is_array() || body.at("documents").empty())
    throw BadRequest("'documents' must be a nonempty array");

  std::vector<SessionDocument> docs;
  std::optional<std::vector<ManifestEntry>> corpus;
  for (const auto& d : body.at("documents")) {
    if (d.is_number_unsigned()) {
      if (!corpus) corpus = engine_.corpus();
      const auto id = d.get<DocId>();
      auto it = std::find_if(corpus->begin(), corpus->end(), [&](const ManifestEntry& e) { return e.id == id; });
      if (it == corpus->end()) throw NotFound("unknown_document", "document " + std::to_string(id) + " is not in the corpus");
      auto loaded = load_documents(std::span(&*it, 1));
      docs.push_back(std::move(loaded.front()));
    } else if (d.is_object()) {
      SessionDocument doc;
      doc.id = d.at("id").get<DocId>();
      doc.info.language = d.at("language").get<std::string>();
      doc.info.uri = d.value("uri", std::string());
      doc.info.title = d.value("title", std::string());
      doc.text = d.at("text").get<std::string>();
      docs.push_back(std::move(doc));
    } else {
      throw BadRequest("documents are corpus ids or {id, language, text} objects");
    }
  }
  const auto id = engine_.open_session(std::move(docs));
  return engine_.with_session(id, [](AmbiguitySession& s) { return ok({{"session", session_json(s)}}, 201); });
}

ApiResponse ApiService::session_state(const std::string& id) const {
  return engine_.with_session(id, [](AmbiguitySession& s) { return ok({{"session", session_json(s)}}); });
}

ApiResponse ApiService::ambiguities(const std::string& id) const {
  return engine_.with_session(id, [](AmbiguitySession& s) {
    json items = json::array();
    for (const auto& it : s.pending()) items.push_back(item_json(it, s.lexicon()));
    return ok({{"session", session_json(s)}, {"items", items}});
  });
}

ApiResponse ApiService::resolutions(const std::string& id, const ApiRequest& r) const {
  const json body = parse_body(r);
  json list;
  if (body.contains("resolutions")) {
    list = body.at("resolutions");
  } else {
    list = json::array({body});
  }
  if (!list.is_array() || list.empty()) throw BadRequest("'resolutions' must be a nonempty array");
  return engine_.with_session(id, [&](AmbiguitySession& s) {
    json resolved = json::array();
    for (const auto& entry : list) {
      if (!entry.contains("item") || !entry.contains("choice")) throw BadRequest("each resolution needs 'item' and 'choice'");
      const auto item = entry.at("item").get<std::size_t>();
      const auto choice = choice_from_json(entry.at("choice"));
      for (auto done : s.resolve(item, choice, entry.value("apply_to_all", false))) resolved.push_back(done);
    }
    return ok({{"session", session_json(s)}, {"resolved_items", resolved}});
  });
}

ApiResponse ApiService::commit(const std::string& id) const {
  const auto pending = engine_.with_session(id, [](AmbiguitySession& s) {
    return s.phase() == SessionPhase::committed ? std::size_t{0} : s.pending_count();
  });
  if (pending > 0) {
    return failure(409, "pending_ambiguities", std::to_string(pending) + " ambiguity item(s) still pending",
                   json{{"pending", pending}});
  }
  const auto report = engine_.commit_session(id);
  const auto state = engine_.with_session(id, [](AmbiguitySession& s) { return session_json(s); });
  return ok({{"session", state}, {"report", report_json(report)}});
}

ApiResponse ApiService::thesaurus(const ApiRequest& r) const {
  const auto language = required_param(r, "lang");
  const auto lexicon = engine_.lexicon();
  if (!lexicon->has_language(language)) throw LexiconError("unsupported_language", "no dictionary for '" + language + "'");
  const auto th = engine_.snapshot();
  const auto simplified = simplify(*th);

  std::map<NodeId, const SimplifiedNode*> by_id;
  for (const auto& n : simplified.nodes) by_id[n.id] = &n;

  json levels = json::array();
  for (const auto& [cardinality, ids] : th->levels()) {
    json nodes = json::array();
    for (NodeId id : ids) {
      const auto& node = *by_id.at(id);
      nodes.push_back({{"id", raw(id)},
                       {"parent", raw(node.parent)},
                       {"added_terms", labels(*lexicon, node.added_terms, language)},
                       {"removed_docs", node.removed_docs},
                       {"domain", labels(*lexicon, th->rectangle(id).domain, language)},
                       {"documents", th->rectangle(id).codomain}});
    }
    levels.push_back({{"cardinality", cardinality}, {"nodes", nodes}});
  }
  json documents = json::array();
  for (const auto& [id, info] : th->documents()) {
    documents.push_back({{"id", id}, {"uri", info.uri}, {"language", info.language}, {"title", info.title}});
  }
  json generic = json::array();
  for (const auto& [lo, hi] : th->generic_edges()) generic.push_back({raw(lo), raw(hi)});
  json neighbor = json::array();
  for (const auto& [a, b] : th->neighbor_edges()) neighbor.push_back({raw(a), raw(b)});
  return ok({{"language", language},
             {"concepts", labels(*lexicon, th->supremum().domain, language)},
             {"documents", documents},
             {"levels", levels},
             {"generic_edges", generic},
             {"neighbor_edges", neighbor}});
}

ApiResponse ApiService::query(const ApiRequest& r) const {
  const auto language = required_param(r, "lang");
  std::vector<std::string> terms;
  for (auto [it, end] = r.params.equal_range("terms"); it != end; ++it) {
    std::stringstream ss(it->second);
    std::string term;
    while (std::getline(ss, term, ',')) {
      if (!term.empty()) terms.push_back(term);
    }
  }
  if (terms.empty()) throw BadRequest("missing query parameter 'terms'");
  std::map<std::string, std::string> contexts;
  for (const auto& [key, value] : r.params) {
    if (key.rfind("context.", 0) == 0) contexts[key.substr(8)] = value;
  }

  const auto lexicon = engine_.lexicon();
  const auto resolution = resolve_query(*lexicon, language, terms, contexts);
  if (!resolution.ambiguities.empty()) {
    json items = json::array();
    for (const auto& a : resolution.ambiguities) {
      json candidates = json::array();
      for (const auto& c : a.candidates) {
        candidates.push_back({{"context", c.context},
                              {"concept", c.concept_id},
                              {"representative", render_concept(*lexicon, c.concept_id, language)}});
      }
      items.push_back({{"surface", a.surface}, {"normal_form", a.normal_form}, {"candidates", candidates}});
    }
    return failure(409, "ambiguous_query", "query terms need a context (context.<term>=<context>)",
                   json{{"ambiguities", items}});
  }

  const auto th = engine_.snapshot();
  const auto result = match(*th, resolution.query.concepts);
  json matches = json::array();
  for (const auto& m : result.matches) {
    matches.push_back({{"node", raw(m.node)},
                       {"domain", labels(*lexicon, m.domain, language)},
                       {"documents", m.documents},
                       {"feedback", labels(*lexicon, m.feedback, language)}});
  }
  return ok({{"query", {{"language", language}, {"concepts", labels(*lexicon, resolution.query.concepts, language)}}},
             {"unknown", resolution.unknown},
             {"matches", matches},
             {"documents", result.documents()}});
}

ApiResponse ApiService::concept_info(const std::string& id, const ApiRequest& r) const {
  const auto language = required_param(r, "lang");
  const auto lexicon = engine_.lexicon();
  if (!lexicon->knows_concept(id)) throw NotFound("unknown_concept", "no concept '" + id + "'");
  const auto info = lexicon->representative(id, language);
  json related = json::array();
  for (const auto& c : info.related) related.push_back(label(*lexicon, c, language));
  const auto th = engine_.snapshot();
  json nodes = json::array();
  for (NodeId n : th->node_ids()) {
    if (th->rectangle(n).domain.contains(id)) nodes.push_back(raw(n));
  }
  const auto category = lexicon->category_of(id, language);
  return ok({{"concept", id},
             {"language", language},
             {"representative", info.term},
             {"category", category ? json(std::string(to_string(*category))) : json(nullptr)},
             {"related", related},
             {"nodes", nodes}});
}

}  // namespace rthes::service

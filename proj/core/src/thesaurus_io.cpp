#include "rthes/thesaurus_io.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <sstream>

namespace rthes {
namespace {

using nlohmann::json;

json edges_json(const std::set<std::pair<NodeId, NodeId>>& edges) {
  json out = json::array();
  for (const auto& [a, b] : edges) out.push_back({raw(a), raw(b)});
  return out;
}

std::set<std::pair<NodeId, NodeId>> edges_from(const json& j) {
  std::set<std::pair<NodeId, NodeId>> out;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2) throw ParseError({}, 0, "edge must be a pair of node ids");
    out.emplace(NodeId{e[0].get<std::uint32_t>()}, NodeId{e[1].get<std::uint32_t>()});
  }
  return out;
}

json documents_json(const std::map<DocId, DocumentInfo>& docs) {
  json out = json::array();
  for (const auto& [id, info] : docs)
    out.push_back({{"id", id}, {"uri", info.uri}, {"language", info.language}, {"title", info.title}});
  return out;
}

std::map<DocId, DocumentInfo> documents_from(const json& j) {
  std::map<DocId, DocumentInfo> out;
  for (const auto& d : j) {
    out.emplace(d.at("id").get<DocId>(),
                DocumentInfo{d.value("uri", ""), d.value("language", ""), d.value("title", "")});
  }
  return out;
}

json header(const char* form, const std::set<ConceptId>& concepts,
            const std::map<DocId, DocumentInfo>& docs) {
  json j;
  j["version"] = kThesaurusFormatVersion;
  j["form"] = form;
  j["concepts"] = concepts;
  j["documents"] = documents_json(docs);
  return j;
}

void check_version(const json& j, const std::string& source) {
  if (!j.is_object()) throw ParseError(source, 1, "thesaurus file must hold a JSON object");
  if (!j.contains("version") || !j["version"].is_number_integer())
    throw ParseError(source, 0, "missing integer 'version' field");
  const int version = j["version"].get<int>();
  if (version != kThesaurusFormatVersion) throw VersionMismatch(version, kThesaurusFormatVersion);
}

std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(byte), '\n'));
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("io_error", "cannot write " + tmp.string());
    out << text;
    if (!out) throw Error("io_error", "write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

json to_json(const RectangularThesaurus& th) {
  json j = header("full", th.supremum().domain, th.documents());
  json levels = json::array();
  for (const auto& [cardinality, ids] : th.levels()) {
    json nodes = json::array();
    for (NodeId id : ids) {
      const auto& rect = th.rectangle(id);
      nodes.push_back({{"id", raw(id)}, {"domain", rect.domain}, {"codomain", rect.codomain}});
    }
    levels.push_back({{"cardinality", cardinality}, {"nodes", std::move(nodes)}});
  }
  j["levels"] = std::move(levels);
  j["generic_edges"] = edges_json(th.generic_edges());
  j["neighbor_edges"] = edges_json(th.neighbor_edges());
  return j;
}

json to_json(const SimplifiedThesaurus& simplified) {
  json j = header("simplified", simplified.concepts, simplified.documents);
  json nodes = json::array();
  for (const auto& node : simplified.nodes) {
    nodes.push_back({{"id", raw(node.id)},
                     {"parent", raw(node.parent)},
                     {"added_terms", node.added_terms},
                     {"removed_docs", node.removed_docs}});
  }
  j["nodes"] = std::move(nodes);
  j["generic_edges"] = edges_json(simplified.generic_edges);
  j["neighbor_edges"] = edges_json(simplified.neighbor_edges);
  return j;
}

RectangularThesaurus thesaurus_from_json(const json& j) {
  check_version(j, {});
  RectangularThesaurus::Parts parts;
  parts.concepts = j.at("concepts").get<std::set<ConceptId>>();
  parts.documents = documents_from(j.at("documents"));
  for (const auto& level : j.at("levels")) {
    const auto cardinality = level.at("cardinality").get<std::size_t>();
    for (const auto& node : level.at("nodes")) {
      TermDocRectangle rect{node.at("domain").get<std::set<ConceptId>>(),
                            node.at("codomain").get<std::set<DocId>>()};
      if (rect.domain.size() != cardinality)
        throw Error("invalid_thesaurus", "node " + std::to_string(node.at("id").get<std::uint32_t>()) +
                                             " is filed under the wrong level");
      parts.nodes.emplace(NodeId{node.at("id").get<std::uint32_t>()}, std::move(rect));
    }
  }
  parts.generic_edges = edges_from(j.at("generic_edges"));
  parts.neighbor_edges = edges_from(j.at("neighbor_edges"));
  return RectangularThesaurus::assemble(std::move(parts));
}

SimplifiedThesaurus simplified_from_json(const json& j) {
  check_version(j, {});
  SimplifiedThesaurus out;
  out.concepts = j.at("concepts").get<std::set<ConceptId>>();
  out.documents = documents_from(j.at("documents"));
  for (const auto& node : j.at("nodes")) {
    out.nodes.push_back({NodeId{node.at("id").get<std::uint32_t>()},
                         NodeId{node.at("parent").get<std::uint32_t>()},
                         node.at("added_terms").get<std::set<ConceptId>>(),
                         node.at("removed_docs").get<std::set<DocId>>()});
  }
  std::sort(out.nodes.begin(), out.nodes.end(),
            [](const SimplifiedNode& a, const SimplifiedNode& b) { return a.id < b.id; });
  out.generic_edges = edges_from(j.at("generic_edges"));
  out.neighbor_edges = edges_from(j.at("neighbor_edges"));
  return out;
}

RectangularThesaurus parse_thesaurus(std::string_view text, const std::string& source) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(source, line_of(text, e.byte == 0 ? 0 : e.byte - 1), e.what());
  }
  check_version(j, source);
  try {
    if (j.value("form", "full") == "simplified") return reconstruct(simplified_from_json(j));
    return thesaurus_from_json(j);
  } catch (const json::exception& e) {
    throw ParseError(source, 0, std::string("malformed thesaurus: ") + e.what());
  }
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

void save(const RectangularThesaurus& th, const std::filesystem::path& path) {
  write_text(path, dump_json(to_json(th)));
}

void save(const SimplifiedThesaurus& simplified, const std::filesystem::path& path) {
  write_text(path, dump_json(to_json(simplified)));
}

RectangularThesaurus load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("io_error", "cannot open " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_thesaurus(text, path.string());
}

}  // namespace rthes

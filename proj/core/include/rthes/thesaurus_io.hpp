#pragma once

// JSON persistence. Full form:
//   {version, form: "full", concepts[], documents[{id, uri, language, title}],
//    levels[{cardinality, nodes[{id, domain[], codomain[]}]}],
//    generic_edges[[lower, higher]], neighbor_edges[[a, b]]}
// Simplified form replaces levels with nodes[{id, parent, added_terms[],
// removed_docs[]}]. Node 0 is the infimum and node 1 the supremum. Arrays
// are sorted so equal thesauri serialize to identical bytes.

#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "rthes/thesaurus.hpp"

namespace rthes {

inline constexpr int kThesaurusFormatVersion = 1;

nlohmann::json to_json(const RectangularThesaurus& th);
nlohmann::json to_json(const SimplifiedThesaurus& simplified);

RectangularThesaurus thesaurus_from_json(const nlohmann::json& j);
SimplifiedThesaurus simplified_from_json(const nlohmann::json& j);

// Either form; a simplified document is reconstructed.
RectangularThesaurus parse_thesaurus(std::string_view text, const std::string& source = {});

std::string dump_json(const nlohmann::json& j);

void save(const RectangularThesaurus& th, const std::filesystem::path& path);
void save(const SimplifiedThesaurus& simplified, const std::filesystem::path& path);
RectangularThesaurus load(const std::filesystem::path& path);

}  // namespace rthes

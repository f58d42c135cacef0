#pragma once

// Service configuration (JSON). Relative paths are resolved against the
// directory of the configuration file.
//
// {
//   "languages": {"en": {"variations": "...", "main": "...", "stopwords": "..."}},
//   "dist": {"default": 5, "overrides": [{"a": "noun", "b": "verb", "window": 3}]},
//   "n": 3, "theta": 0.10, "enumeration_cap": 4096,
//   "data_dir": "data", "listen": "127.0.0.1:8080",
//   "corpus": "manifest.tsv", "static_dir": "ui"
// }

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "rthes/lexicon.hpp"
#include "rthes/relation.hpp"

namespace rthes::service {

inline constexpr const char* kConfigEnvVar = "RTHES_CONFIG";

struct Config {
  std::vector<DictionaryFiles> languages;
  DistMatrix dist;
  int n = 3;
  double theta = 0.10;
  std::size_t enumeration_cap = kDefaultCellCap;
  std::filesystem::path data_dir;  // empty: nothing is persisted
  std::string host = "127.0.0.1";
  int port = 8080;
  std::filesystem::path corpus;      // manifest served to POST /sessions
  std::filesystem::path static_dir;  // optional UI assets
};

// Throws Error("config_invalid").
Config parse_config(const nlohmann::json& j, const std::filesystem::path& base_dir);
Config load_config(const std::filesystem::path& path);

// `override_path` if given, else $RTHES_CONFIG. Throws Error("config_missing").
std::filesystem::path config_path(const std::optional<std::string>& override_path);

// "host:port" or ":port" or "port".
void parse_listen(const std::string& text, std::string& host, int& port);

}  // namespace rthes::service

#include "rthes/service/config.hpp"

#include <cstdlib>
#include <fstream>

#include <nlohmann/json.hpp>

#include "rthes/errors.hpp"

namespace rthes::service {

namespace {

[[noreturn]] void invalid(const std::string& message) { throw Error("config_invalid", message); }

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

}  // namespace

void parse_listen(const std::string& text, std::string& host, int& port) {
  const auto colon = text.rfind(':');
  const std::string port_text = colon == std::string::npos ? text : text.substr(colon + 1);
  if (colon != std::string::npos && colon > 0) host = text.substr(0, colon);
  try {
    std::size_t used = 0;
    port = std::stoi(port_text, &used);
    if (used != port_text.size() || port < 0 || port > 65535) throw std::invalid_argument(port_text);
  } catch (const std::exception&) {
    invalid("listen address '" + text + "' has no valid port");
  }
}

Config parse_config(const nlohmann::json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object()) invalid("configuration must be a JSON object");
  Config c;
  try {
    if (!j.contains("languages") || !j.at("languages").is_object() || j.at("languages").empty())
      invalid("'languages' must name at least one language");
    for (const auto& [lang, files] : j.at("languages").items()) {
      DictionaryFiles f;
      f.language = lang;
      for (const char* key : {"variations", "main", "stopwords"}) {
        if (!files.contains(key)) invalid("language '" + lang + "' lacks the '" + key + "' dictionary");
      }
      f.variations = resolve(base_dir, files.at("variations").get<std::string>());
      f.main = resolve(base_dir, files.at("main").get<std::string>());
      f.stopwords = resolve(base_dir, files.at("stopwords").get<std::string>());
      c.languages.push_back(std::move(f));
    }

    if (j.contains("dist")) {
      const auto& d = j.at("dist");
      c.dist = DistMatrix(d.value("default", DistMatrix::kDefaultWindow));
      for (const auto& o : d.value("overrides", nlohmann::json::array())) {
        const auto a = parse_category(o.at("a").get<std::string>());
        const auto b = parse_category(o.at("b").get<std::string>());
        if (!a || !b) invalid("unknown category in dist override");
        c.dist.set(*a, *b, o.at("window").get<int>());
      }
    }

    c.n = j.value("n", c.n);
    c.theta = j.value("theta", c.theta);
    c.enumeration_cap = j.value("enumeration_cap", c.enumeration_cap);
    if (c.n < 1) invalid("n must be at least 1");
    if (!(c.theta > 0)) invalid("theta must be positive");
    if (c.enumeration_cap == 0) invalid("enumeration_cap must be positive");

    if (j.contains("data_dir")) c.data_dir = resolve(base_dir, j.at("data_dir").get<std::string>());
    if (j.contains("corpus")) c.corpus = resolve(base_dir, j.at("corpus").get<std::string>());
    if (j.contains("static_dir")) c.static_dir = resolve(base_dir, j.at("static_dir").get<std::string>());
    if (j.contains("listen")) parse_listen(j.at("listen").get<std::string>(), c.host, c.port);
  } catch (const nlohmann::json::exception& e) {
    invalid(e.what());
  } catch (const LexiconError& e) {
    invalid(e.what());
  }
  return c;
}

Config load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("config_invalid", "cannot open configuration " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error("config_invalid", path.string() + ": " + e.what());
  }
  return parse_config(j, path.parent_path());
}

std::filesystem::path config_path(const std::optional<std::string>& override_path) {
  if (override_path && !override_path->empty()) return *override_path;
  if (const char* env = std::getenv(kConfigEnvVar); env && *env) return env;
  throw Error("config_missing", std::string("no configuration: pass --config or set ") + kConfigEnvVar);
}

}  // namespace rthes::service

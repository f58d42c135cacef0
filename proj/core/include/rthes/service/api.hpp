#pragma once

// Transport-independent HTTP API. Every JSON body carries
// "schema_version"; errors are {"error": {"code", "message"}}.
//
//   POST /sessions                     {"documents": [doc ids | inline docs]}
//   GET  /sessions/{id}
//   GET  /sessions/{id}/ambiguities
//   POST /sessions/{id}/resolutions    {"resolutions": [{"item", "choice", "apply_to_all"}]}
//   POST /sessions/{id}/commit
//   GET  /thesaurus?lang=L
//   GET  /query?lang=L&terms=a,b[&context.<term>=ctx]
//   GET  /concepts/{id}?lang=L

#include <map>
#include <string>

#include <nlohmann/json.hpp>

#include "rthes/service/engine.hpp"

namespace rthes::service {

inline constexpr int kApiSchemaVersion = 1;

struct ApiRequest {
  std::string method;
  std::string path;
  std::multimap<std::string, std::string> params;
  std::string body;
};

struct ApiResponse {
  int status = 200;
  nlohmann::json body;

  std::string text() const;
};

class ApiService {
 public:
  explicit ApiService(Engine& engine) : engine_(engine) {}

  ApiResponse handle(const ApiRequest& request) const;

 private:
  ApiResponse route(const ApiRequest& request) const;
  ApiResponse create_session(const ApiRequest& request) const;
  ApiResponse session_state(const std::string& id) const;
  ApiResponse ambiguities(const std::string& id) const;
  ApiResponse resolutions(const std::string& id, const ApiRequest& request) const;
  ApiResponse commit(const std::string& id) const;
  ApiResponse thesaurus(const ApiRequest& request) const;
  ApiResponse query(const ApiRequest& request) const;
  ApiResponse concept_info(const std::string& id, const ApiRequest& request) const;

  Engine& engine_;
};

}  // namespace rthes::service

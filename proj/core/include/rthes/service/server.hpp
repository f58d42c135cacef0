#pragma once

#include <functional>
#include <memory>
#include <string>

#include "rthes/service/api.hpp"

namespace rthes::service {

// Blocks serving the API on host:port until stop() is called from another
// thread. `on_ready` receives the bound port (useful with port 0).
class HttpServer {
 public:
  explicit HttpServer(ApiService& api, std::string static_dir = {});
  ~HttpServer();

  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Returns false when the address cannot be bound.
  bool listen(const std::string& host, int port, const std::function<void(int)>& on_ready = {});
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace rthes::service

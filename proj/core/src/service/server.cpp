#include "rthes/service/server.hpp"

#include <httplib.h>

namespace rthes::service {

struct HttpServer::Impl {
  httplib::Server server;
};

namespace {

ApiRequest to_api(const httplib::Request& req) {
  ApiRequest r;
  r.method = req.method;
  r.path = req.path;
  for (const auto& [k, v] : req.params) r.params.emplace(k, v);
  r.body = req.body;
  return r;
}

}  // namespace

HttpServer::HttpServer(ApiService& api, std::string static_dir) : impl_(std::make_unique<Impl>()) {
  auto handler = [&api](const httplib::Request& req, httplib::Response& res) {
    const auto response = api.handle(to_api(req));
    res.status = response.status;
    res.set_content(response.text(), "application/json; charset=utf-8");
  };
  if (!static_dir.empty()) impl_->server.set_mount_point("/ui", static_dir);
  impl_->server.Get(".*", handler);
  impl_->server.Post(".*", handler);
  impl_->server.Put(".*", handler);
  impl_->server.Delete(".*", handler);
}

HttpServer::~HttpServer() = default;

bool HttpServer::listen(const std::string& host, int port, const std::function<void(int)>& on_ready) {
  int bound = port;
  if (port == 0) {
    bound = impl_->server.bind_to_any_port(host);
    if (bound < 0) return false;
  } else if (!impl_->server.bind_to_port(host, port)) {
    return false;
  }
  if (on_ready) on_ready(bound);
  return impl_->server.listen_after_bind();
}

void HttpServer::stop() { impl_->server.stop(); }

}  // namespace rthes::service

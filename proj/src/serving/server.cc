// Copyright 2026 The attrinf Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "attrinf/serving/server.h"

#include <charconv>

#include "attrinf/common/error.h"
#include "httplib.h"

namespace attrinf::serving {

BindAddress BindAddress::parse(const std::string& text) {
  const auto colon = text.rfind(':');
  if (colon == std::string::npos || colon == 0) throw InvalidArgument("bind address must be host:port: " + text);
  BindAddress a;
  a.host = text.substr(0, colon);
  const std::string port = text.substr(colon + 1);
  const auto [ptr, ec] = std::from_chars(port.data(), port.data() + port.size(), a.port);
  if (ec != std::errc() || ptr != port.data() + port.size() || a.port < 0 || a.port > 65535) {
    throw InvalidArgument("bad port in bind address: " + text);
  }
  return a;
}

HttpServer::HttpServer(std::shared_ptr<const ExplanationService> service, BindAddress address)
    : service_(std::move(service)), address_(std::move(address)), server_(std::make_unique<httplib::Server>()) {
  if (!service_) throw InvalidArgument("server needs a service");
  auto reply = [](httplib::Response& res, const HttpReply& r) {
    res.status = r.status;
    res.set_content(r.body, "application/json");
  };
  server_->Post("/v1/predict", [this, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, service_->handle_predict(req.body));
  });
  server_->Post("/v1/explain", [this, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, service_->handle_explain(req.body));
  });
  server_->Get("/v1/health", [this, reply](const httplib::Request&, httplib::Response& res) {
    reply(res, service_->handle_health());
  });
}

HttpServer::~HttpServer() { stop(); }

void HttpServer::bind() {
  if (address_.port == 0) {
    port_ = server_->bind_to_any_port(address_.host);
    if (port_ < 0) throw TransportError("cannot bind " + address_.host);
  } else {
    if (!server_->bind_to_port(address_.host, address_.port)) {
      throw TransportError("cannot bind " + address_.host + ":" + std::to_string(address_.port));
    }
    port_ = address_.port;
  }
}

void HttpServer::start() {
  bind();
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
}

void HttpServer::run() {
  bind();
  server_->listen_after_bind();
}

void HttpServer::stop() {
  if (server_) server_->stop();
  if (thread_.joinable()) thread_.join();
}

std::string HttpServer::url() const { return "http://" + address_.host + ":" + std::to_string(port_); }

}  // namespace attrinf::serving

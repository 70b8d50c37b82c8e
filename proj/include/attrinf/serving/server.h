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

#ifndef ATTRINF_SERVING_SERVER_H_
#define ATTRINF_SERVING_SERVER_H_

#include <memory>
#include <string>
#include <thread>

#include "attrinf/serving/service.h"

namespace httplib {
class Server;
}

namespace attrinf::serving {

// "host:port"; port 0 asks the OS for a free port.
struct BindAddress {
  std::string host = "127.0.0.1";
  int port = 0;

  static BindAddress parse(const std::string& text);
};

// HTTP/1.1 front end for an ExplanationService.
class HttpServer {
 public:
  HttpServer(std::shared_ptr<const ExplanationService> service, BindAddress address);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Binds and serves on a background thread. Throws TransportError if the
  // address cannot be bound.
  void start();
  // Binds and serves on the calling thread until stop() is called elsewhere.
  void run();
  void stop();

  // Bound port; valid after start().
  int port() const { return port_; }
  std::string url() const;

 private:
  void bind();

  std::shared_ptr<const ExplanationService> service_;
  BindAddress address_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  int port_ = 0;
};

}  // namespace attrinf::serving

#endif  // ATTRINF_SERVING_SERVER_H_

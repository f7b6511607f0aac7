// Copyright 2026 The asrbench Authors
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

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "httplib.h"

#include "asrbench/backends.hpp"

namespace asrbench {
namespace {

struct SplitUrl {
  std::string origin;  // scheme://host[:port]
  std::string target;  // /path?query
};

SplitUrl split_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos)
    fail(ErrorCode::kInvalidArgument, "not an absolute URL: " + url);
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

class HttplibTransport final : public HttpTransport {
 public:
  HttpResponse send(const HttpRequest& request,
                    std::chrono::duration<double> timeout) override {
    const SplitUrl url = split_url(request.url);
    httplib::Client client(url.origin);
    const auto secs = std::chrono::duration_cast<std::chrono::microseconds>(timeout);
    client.set_connection_timeout(secs);
    client.set_read_timeout(secs);
    client.set_write_timeout(secs);

    httplib::Headers headers(request.headers.begin(), request.headers.end());
    const auto started = std::chrono::steady_clock::now();
    httplib::Result res = [&] {
      if (request.method == "GET") return client.Get(url.target, headers);
      if (request.method == "POST")
        return client.Post(url.target, headers, request.body, request.content_type);
      if (request.method == "DELETE") return client.Delete(url.target, headers);
      fail(ErrorCode::kInvalidArgument, "unsupported HTTP method " + request.method);
    }();
    if (!res) {
      const auto elapsed = std::chrono::steady_clock::now() - started;
      const bool timed_out = res.error() == httplib::Error::ConnectionTimeout ||
                             elapsed >= std::chrono::duration_cast<std::chrono::steady_clock::duration>(timeout * 0.95);
      fail(timed_out ? ErrorCode::kTimeout : ErrorCode::kTransport,
           request.method + " " + request.url + ": " + httplib::to_string(res.error()));
    }
    return {res->status, res->body};
  }
};

}  // namespace

std::shared_ptr<HttpTransport> make_default_transport() {
  return std::make_shared<HttplibTransport>();
}

}  // namespace asrbench

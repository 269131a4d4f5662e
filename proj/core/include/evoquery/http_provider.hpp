// Copyright 2026 The evoquery Authors
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

#pragma once

#include <chrono>
#include <cstddef>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "evoquery/provider.hpp"

namespace evoquery {

struct HttpEndpoint {
  std::string url;             // http://host[:port]/path
  std::string api_key_header;  // empty: no key header is sent
  std::string api_key;
  double requests_per_second = 1.0;  // <= 0 disables throttling
  int retries = 2;
  std::chrono::milliseconds backoff{250};
  std::chrono::milliseconds timeout{10000};
};

// Spaces one caller at a time through a minimum interval.
class RateLimiter {
 public:
  explicit RateLimiter(double per_second);
  void acquire();

 private:
  std::mutex mu_;
  std::chrono::steady_clock::duration interval_{};
  std::chrono::steady_clock::time_point next_{};
};

std::string url_encode(std::string_view s);

// Maps {"results": [{"url", "title", "snippet"}, ...]} to hits in array
// order, truncated to `limit`. Throws ProtocolError.
std::vector<SearchHit> parse_search_response(std::string_view body, std::size_t limit);

// GET {endpoint}?q=...&count=... Transport failures and 5xx responses are
// retried with exponential backoff; requests are serialized through the
// rate limiter.
class HttpProvider final : public SearchProvider {
 public:
  explicit HttpProvider(HttpEndpoint endpoint);

  std::vector<SearchHit> execute(std::string_view query, std::size_t limit) override;
  std::string name() const override { return "http"; }
  bool replayable() const override { return false; }
  bool concurrent() const override { return true; }

  const HttpEndpoint& endpoint() const noexcept { return endpoint_; }

 private:
  HttpEndpoint endpoint_;
  std::string origin_;  // scheme://host[:port]
  std::string path_;
  RateLimiter limiter_;
  std::mutex request_mu_;
};

std::vector<SearchHit> http_execute(const HttpEndpoint& endpoint, std::string_view query, std::size_t limit);

}  // namespace evoquery

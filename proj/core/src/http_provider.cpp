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

#include "evoquery/http_provider.hpp"

#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "evoquery/error.hpp"

namespace evoquery {

RateLimiter::RateLimiter(double per_second) {
  if (per_second > 0.0) {
    interval_ = std::chrono::duration_cast<std::chrono::steady_clock::duration>(
        std::chrono::duration<double>(1.0 / per_second));
  }
}

void RateLimiter::acquire() {
  std::unique_lock lock(mu_);
  const auto now = std::chrono::steady_clock::now();
  if (next_ > now) std::this_thread::sleep_until(next_);
  next_ = std::max(now, next_) + interval_;
}

std::string url_encode(std::string_view s) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  out.reserve(s.size() * 3);
  for (unsigned char c : s) {
    const bool unreserved = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                            c == '-' || c == '_' || c == '.' || c == '~';
    if (unreserved) {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('%');
      out.push_back(kHex[c >> 4]);
      out.push_back(kHex[c & 0xF]);
    }
  }
  return out;
}

std::vector<SearchHit> parse_search_response(std::string_view body, std::size_t limit) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(body);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ProtocolError, std::string("response is not JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("results") || !j["results"].is_array()) {
    throw Error(ErrorCode::ProtocolError, "response has no 'results' array");
  }
  std::vector<SearchHit> hits;
  for (const auto& item : j["results"]) {
    if (hits.size() >= limit) break;
    if (!item.is_object() || !item.contains("url") || !item["url"].is_string()) {
      throw Error(ErrorCode::ProtocolError, "result item without a string 'url'");
    }
    auto text = [&](const char* key) -> std::string {
      if (!item.contains(key) || item[key].is_null()) return {};
      if (!item[key].is_string()) throw Error(ErrorCode::ProtocolError, std::string("'") + key + "' is not a string");
      return item[key].get<std::string>();
    };
    SearchHit hit;
    hit.doc_url = item["url"].get<std::string>();
    hit.doc_host = host_from_url(hit.doc_url);
    hit.title = text("title");
    hit.snippet = text("snippet");
    hit.position = hits.size() + 1;
    hits.push_back(std::move(hit));
  }
  return hits;
}

namespace {

void split_endpoint(const std::string& url, std::string& origin, std::string& path) {
  const auto scheme = url.find("://");
  if (scheme == std::string::npos) throw Error(ErrorCode::ConfigInvalid, "endpoint '" + url + "' has no scheme");
  if (url.compare(0, scheme, "http") != 0) {
    throw Error(ErrorCode::ConfigInvalid, "only http:// endpoints are supported, got '" + url + "'");
  }
  const auto slash = url.find('/', scheme + 3);
  origin = url.substr(0, slash);
  path = slash == std::string::npos ? "/" : url.substr(slash);
  if (origin.size() <= scheme + 3) throw Error(ErrorCode::ConfigInvalid, "endpoint '" + url + "' has no host");
}

}  // namespace

HttpProvider::HttpProvider(HttpEndpoint endpoint)
    : endpoint_(std::move(endpoint)), limiter_(endpoint_.requests_per_second) {
  split_endpoint(endpoint_.url, origin_, path_);
}

std::vector<SearchHit> HttpProvider::execute(std::string_view query, std::size_t limit) {
  if (query.find_first_not_of(" \t\r\n") == std::string_view::npos) throw Error(ErrorCode::EmptyQuery, "empty query");
  if (limit == 0) throw Error(ErrorCode::InvalidArgument, "result limit must be positive");

  std::string target = path_;
  target += path_.find('?') == std::string::npos ? '?' : '&';
  target += "q=" + url_encode(query) + "&count=" + std::to_string(limit);

  httplib::Headers headers;
  if (!endpoint_.api_key_header.empty()) headers.emplace(endpoint_.api_key_header, endpoint_.api_key);

  std::lock_guard serial(request_mu_);
  std::string last_error;
  for (int attempt = 0; attempt <= endpoint_.retries; ++attempt) {
    if (attempt > 0) std::this_thread::sleep_for(endpoint_.backoff * (1 << (attempt - 1)));
    limiter_.acquire();
    httplib::Client client(origin_);
    client.set_connection_timeout(endpoint_.timeout);
    client.set_read_timeout(endpoint_.timeout);
    auto res = client.Get(target, headers);
    if (!res) {
      last_error = "transport failure: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status >= 500) {
      last_error = "server error " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200) {
      throw Error(ErrorCode::ProviderUnavailable, "endpoint answered HTTP " + std::to_string(res->status));
    }
    return parse_search_response(res->body, limit);
  }
  throw Error(ErrorCode::ProviderUnavailable, last_error);
}

std::vector<SearchHit> http_execute(const HttpEndpoint& endpoint, std::string_view query, std::size_t limit) {
  HttpProvider provider(endpoint);
  return provider.execute(query, limit);
}

}  // namespace evoquery

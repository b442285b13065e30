#include <httplib.h>

#include "mmsurv/http_backend.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <semaphore>
#include <thread>

#include <json.hpp>

namespace mmsurv {

namespace {

const char* role_name(Role r) {
  switch (r) {
    case Role::System: return "system";
    case Role::User: return "user";
    case Role::Assistant: return "assistant";
  }
  return "user";
}

struct ParsedUrl {
  std::string base;  // scheme://host[:port]
  std::string path;
};

ParsedUrl parse_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos)
    throw Error(ErrorKind::InvalidConfig, "endpoint must include a scheme: " + url);
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

}  // namespace

struct HttpBackend::Impl {
  explicit Impl(int max_inflight) : inflight(max_inflight) {}
  std::counting_semaphore<64> inflight;
};

HttpBackend::HttpBackend(BackendConfig config)
    : config_(std::move(config)), impl_(std::make_unique<Impl>(config_.max_inflight)) {
  config_.validate();
}

HttpBackend::~HttpBackend() = default;

std::string HttpBackend::complete(const std::vector<ChatMessage>& messages,
                                  const CallContext& ctx) {
  impl_->inflight.acquire();
  struct Release {
    std::counting_semaphore<64>& s;
    ~Release() { s.release(); }
  } release{impl_->inflight};

  nlohmann::json body;
  body["model"] = config_.model;
  body["temperature"] = config_.temperature;
  auto& msgs = body["messages"] = nlohmann::json::array();
  for (const auto& m : messages) msgs.push_back({{"role", role_name(m.role)}, {"content", m.content}});
  const std::string payload = body.dump();

  const ParsedUrl url = parse_url(config_.endpoint);
  httplib::Headers headers = {{"Content-Type", "application/json"}};
  if (const char* key = std::getenv(config_.api_key_env.c_str()); key && *key)
    headers.emplace("Authorization", std::string("Bearer ") + key);

  const auto timeout_us = std::chrono::microseconds(
      static_cast<long long>(config_.timeout_s * 1e6));

  std::string last_error;
  for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
    if (attempt > 0) {
      const auto backoff =
          std::chrono::milliseconds(config_.backoff_base_ms * (1LL << (attempt - 1)));
      std::this_thread::sleep_for(backoff);
    }

    httplib::Client client(url.base);
    client.set_connection_timeout(timeout_us);
    client.set_read_timeout(timeout_us);
    client.set_write_timeout(timeout_us);

    const auto started = std::chrono::steady_clock::now();
    httplib::Result result = client.Post(url.path, headers, payload, "application/json");
    const auto latency_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                std::chrono::steady_clock::now() - started)
                                .count();
    const int status = result ? result->status : 0;
    std::fprintf(stderr, "[http] %s/%s attempt=%d status=%d latency=%lldms\n",
                 ctx.case_id.c_str(), to_string(ctx.level), attempt, status,
                 static_cast<long long>(latency_ms));

    if (!result) {
      last_error = "transport error: " + httplib::to_string(result.error());
      continue;
    }
    if (result->status >= 200 && result->status < 300) {
      try {
        auto j = nlohmann::json::parse(result->body);
        return j.at("choices").at(0).at("message").at("content").get<std::string>();
      } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::BackendRejected,
                    std::string("malformed completion response: ") + e.what());
      }
    }
    if (result->status == 429 || result->status >= 500) {
      last_error = "status " + std::to_string(result->status);
      continue;
    }
    throw Error(ErrorKind::BackendRejected,
                "request rejected with status " + std::to_string(result->status));
  }
  throw Error(ErrorKind::BackendUnavailable,
              "exhausted " + std::to_string(config_.max_retries) + " retries (" + last_error + ")");
}

Verdict HttpBackend::parse_oracle_verdict(const std::string& response) {
  size_t i = 0;
  while (i < response.size() && std::isspace(static_cast<unsigned char>(response[i]))) ++i;
  std::string head;
  for (; i < response.size() && head.size() < 8; ++i)
    head += static_cast<char>(std::toupper(static_cast<unsigned char>(response[i])));
  if (head.rfind("MISMATCH", 0) == 0) return Verdict::Mismatch;
  if (head.rfind("MATCH", 0) == 0) return Verdict::Match;
  return Verdict::Mismatch;
}

Verdict HttpBackend::oracle_match(const std::string& conclusion, const std::string& evidence,
                                  const std::optional<std::string>& reasoning,
                                  const CallContext& ctx) {
  if (conclusion.empty() || evidence.empty())
    throw Error(ErrorKind::InvalidConfig, "oracle_match requires non-empty conclusion/evidence");
  std::string prompt =
      "You are verifying a conclusion against reference evidence.\n"
      "Evidence: " + evidence + "\n"
      "Conclusion: " + conclusion + "\n";
  if (reasoning) prompt += "Reasoning: " + *reasoning + "\n";
  prompt +=
      "Reply with exactly one word: MATCH if the conclusion is consistent with the "
      "evidence, otherwise MISMATCH.";
  const std::string response = complete({{Role::User, prompt}}, ctx);
  return parse_oracle_verdict(response);
}

}  // namespace mmsurv

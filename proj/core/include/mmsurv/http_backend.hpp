#pragma once

#include <memory>

#include "mmsurv/backend.hpp"

namespace mmsurv {

// OpenAI-compatible chat-completions client. Retries transport errors, 5xx
// and 429 with exponential backoff; any other 4xx is rejected without retry.
// The API key is read from the configured environment variable.
class HttpBackend : public LlmBackend {
 public:
  explicit HttpBackend(BackendConfig config);
  ~HttpBackend() override;

  std::string complete(const std::vector<ChatMessage>& messages, const CallContext& ctx) override;
  Verdict oracle_match(const std::string& conclusion, const std::string& evidence,
                       const std::optional<std::string>& reasoning,
                       const CallContext& ctx) override;

  const BackendConfig& config() const { return config_; }

  // MATCH/MISMATCH token protocol; anything unparseable is a Mismatch.
  static Verdict parse_oracle_verdict(const std::string& response);

 private:
  BackendConfig config_;
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace mmsurv

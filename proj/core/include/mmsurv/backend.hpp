#pragma once

#include <deque>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "mmsurv/errors.hpp"
#include "mmsurv/level.hpp"

namespace mmsurv {

enum class Role { System, User, Assistant };

struct ChatMessage {
  Role role = Role::User;
  std::string content;
};

enum class Verdict { Match, Mismatch };

struct BackendConfig {
  std::string endpoint = "https://api.openai.com/v1/chat/completions";
  std::string model = "gpt-4o";
  std::string api_key_env = "OPENAI_API_KEY";  // key is read from the environment only
  double timeout_s = 30.0;
  int max_retries = 2;
  int backoff_base_ms = 250;
  double temperature = 0.0;
  int max_inflight = 4;

  void validate() const;
};

// Identifies which case/level a call belongs to; the scripted backend routes
// on it, the HTTP backend only logs it.
struct CallContext {
  std::string case_id;
  Level level = Level::Diagnosis;
};

class LlmBackend {
 public:
  virtual ~LlmBackend() = default;

  virtual std::string complete(const std::vector<ChatMessage>& messages,
                               const CallContext& ctx) = 0;

  virtual Verdict oracle_match(const std::string& conclusion, const std::string& evidence,
                               const std::optional<std::string>& reasoning,
                               const CallContext& ctx) = 0;
};

// Lowercase, whitespace-collapsed, trimmed.
std::string normalize_for_match(const std::string& s);

// Deterministic backend for tests and offline runs. Responses are consumed
// from per-(case, level) queues; consuming past a queue end throws, never
// recycles. Oracle verdicts come from an optional per-key queue, falling back
// to normalized string equality of conclusion and evidence.
class ScriptedBackend : public LlmBackend {
 public:
  void enqueue_response(const std::string& case_id, Level level, std::string response);
  void enqueue_verdict(const std::string& case_id, Level level, Verdict verdict);

  std::string complete(const std::vector<ChatMessage>& messages, const CallContext& ctx) override;
  Verdict oracle_match(const std::string& conclusion, const std::string& evidence,
                       const std::optional<std::string>& reasoning,
                       const CallContext& ctx) override;

  long long thinker_calls() const;
  long long oracle_calls() const;

 private:
  using Key = std::pair<std::string, Level>;
  mutable std::mutex mutex_;
  std::map<Key, std::deque<std::string>> responses_;
  std::map<Key, std::deque<Verdict>> verdicts_;
  long long thinker_calls_ = 0;
  long long oracle_calls_ = 0;
};

}  // namespace mmsurv

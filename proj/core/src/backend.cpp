#include "mmsurv/backend.hpp"

#include <cctype>
#include <stdexcept>

namespace mmsurv {

void BackendConfig::validate() const {
  if (max_retries < 0) throw Error(ErrorKind::InvalidConfig, "max_retries must be >= 0");
  if (!(timeout_s > 0.0)) throw Error(ErrorKind::InvalidConfig, "timeout must be positive");
  if (backoff_base_ms < 0) throw Error(ErrorKind::InvalidConfig, "backoff base must be >= 0");
  if (max_inflight < 1) throw Error(ErrorKind::InvalidConfig, "max_inflight must be >= 1");
}

std::string normalize_for_match(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (unsigned char c : s) {
    if (std::isspace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out += ' ';
      pending_space = false;
    }
    out += static_cast<char>(std::tolower(c));
  }
  return out;
}

void ScriptedBackend::enqueue_response(const std::string& case_id, Level level,
                                       std::string response) {
  std::lock_guard lock(mutex_);
  responses_[{case_id, level}].push_back(std::move(response));
}

void ScriptedBackend::enqueue_verdict(const std::string& case_id, Level level, Verdict verdict) {
  std::lock_guard lock(mutex_);
  verdicts_[{case_id, level}].push_back(verdict);
}

std::string ScriptedBackend::complete(const std::vector<ChatMessage>&, const CallContext& ctx) {
  std::lock_guard lock(mutex_);
  ++thinker_calls_;
  auto it = responses_.find({ctx.case_id, ctx.level});
  if (it == responses_.end() || it->second.empty())
    throw std::logic_error("scripted response queue exhausted for " + ctx.case_id + "/" +
                           to_string(ctx.level));
  std::string out = std::move(it->second.front());
  it->second.pop_front();
  return out;
}

Verdict ScriptedBackend::oracle_match(const std::string& conclusion, const std::string& evidence,
                                      const std::optional<std::string>&, const CallContext& ctx) {
  std::lock_guard lock(mutex_);
  ++oracle_calls_;
  auto it = verdicts_.find({ctx.case_id, ctx.level});
  if (it != verdicts_.end() && !it->second.empty()) {
    Verdict v = it->second.front();
    it->second.pop_front();
    return v;
  }
  return normalize_for_match(conclusion) == normalize_for_match(evidence) ? Verdict::Match
                                                                          : Verdict::Mismatch;
}

long long ScriptedBackend::thinker_calls() const {
  std::lock_guard lock(mutex_);
  return thinker_calls_;
}

long long ScriptedBackend::oracle_calls() const {
  std::lock_guard lock(mutex_);
  return oracle_calls_;
}

}  // namespace mmsurv

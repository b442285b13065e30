#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mmsurv/backend.hpp"
#include "mmsurv/cohort.hpp"
#include "mmsurv/prompts.hpp"

namespace mmsurv {

enum class StrategyPolicy { ReviewThenRethink, RoundRobin, AlwaysReview, AlwaysRethink };

const char* to_string(StrategyPolicy p);
std::optional<StrategyPolicy> strategy_policy_from_string(const std::string& s);

struct OrchestratorConfig {
  int max_iters = 2;  // refinement cap N
  StrategyPolicy policy = StrategyPolicy::ReviewThenRethink;
  int parallelism = 1;
  bool oracle_sees_reasoning = true;

  void validate() const;
};

struct RefinementStep {
  int iteration = 0;
  std::string reasoning;
  std::string conclusion;
  Verdict oracle_verdict = Verdict::Mismatch;
  std::optional<Strategy> strategy_applied;  // absent at iteration 0
};

enum class TraceStatus { Completed, Failed };

struct RefinementTrace {
  std::string case_id;
  Level level = Level::Diagnosis;
  std::string input;     // findings plus any upstream reasoning
  std::string evidence;  // ground truth for this level
  std::vector<RefinementStep> steps;
  bool correction_used = false;
  std::string final_reasoning;
  std::string final_conclusion;
  TraceStatus status = TraceStatus::Completed;
  std::string error;

  std::string formatted_reasoning() const;   // <reasoning>...</reasoning>
  std::string formatted_conclusion() const;  // <conclusion>...</conclusion>
  std::string formatted_target() const;      // reasoning block, newline, conclusion block
};

struct ParsedResponse {
  std::string reasoning;
  std::optional<std::string> conclusion;
};

// Extracts the <reasoning>/<conclusion> blocks. A missing conclusion block
// marks the response malformed; the full text then stands in as reasoning.
ParsedResponse parse_thinker_response(const std::string& text);

// Default policy: Review on the first refinement, Rethinking afterwards.
Strategy select_strategy(int step_index, StrategyPolicy policy);

// One evidence level of the self-refinement loop: initial response, up to
// max_iters strategy-prompted refinements while the oracle reports Mismatch,
// then an explicit correction with the evidence injected. Backend failures
// yield a trace with Failed status rather than throwing.
RefinementTrace run_self_refinement(const std::string& input, const std::string& evidence,
                                    Level level, const PromptSet& prompts, LlmBackend& backend,
                                    const OrchestratorConfig& cfg,
                                    const std::string& case_id = "case");

struct HierarchicalTraces {
  std::optional<RefinementTrace> diagnosis;
  std::optional<RefinementTrace> complications;
  std::optional<RefinementTrace> mace;

  const std::optional<RefinementTrace>& at(Level l) const;
  bool all_completed() const;
};

// Chains the three levels: each level's input is the previous input plus the
// previous formatted reasoning and conclusion. A failed level leaves the
// downstream levels absent. Completed levels populate record.reasoning_texts.
HierarchicalTraces run_hierarchical(PatientRecord& record, const PromptSet& prompts,
                                    LlmBackend& backend, const OrchestratorConfig& cfg);

// Evidence string fed to the oracle for one level of a record.
std::string evidence_for_level(const PatientRecord& record, Level level);

// Input text for the first level; volumes enter as a text placeholder.
std::string findings_input(const PatientRecord& record);

}  // namespace mmsurv

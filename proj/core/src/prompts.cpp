#include "mmsurv/prompts.hpp"

#include <fstream>

#include <json.hpp>

#include "mmsurv/errors.hpp"

namespace mmsurv {

namespace {

constexpr const char* kAnswerSlot = "{answer}";

constexpr const char* kReview =
    "I have carefully examined the reasoning and concluded that your conclusion is "
    "incorrect. Please go back and review the earlier steps in the reasoning process, "
    "and build a revised conclusion.";

constexpr const char* kRethinking =
    "I have carefully examined the reasoning and concluded that your conclusion is "
    "incorrect. Please construct a new reasoning process and build a new conclusion.";

constexpr const char* kCorrection =
    "The correct answer is {answer}. You need to correct the previous reasoning process "
    "and conclusion to ensure the final answer is right.";

constexpr const char* kAnswerFormat =
    " Answer with a <reasoning>...</reasoning> block followed by a "
    "<conclusion>...</conclusion> block.";

}  // namespace

PromptSet PromptSet::defaults() {
  PromptSet p;
  p.refine_prompts[Strategy::Review] = kReview;
  p.refine_prompts[Strategy::Rethinking] = kRethinking;
  p.correction_prompt = kCorrection;
  p.level_prompts[Level::Diagnosis] =
      std::string("Based on the radiological findings above, reason step by step about the "
                  "most likely radiological diagnosis.") + kAnswerFormat;
  p.level_prompts[Level::Complications] =
      std::string("Given the findings and the diagnostic reasoning above, determine which "
                  "cardiac complications are present among: microcirculation dysfunction, "
                  "intramyocardial hemorrhage, ventricular thrombus, ventricular aneurysm. "
                  "If none are present, state none.") + kAnswerFormat;
  p.level_prompts[Level::MaceFollowUp] =
      std::string("Given the findings and the reasoning above, assess whether a major "
                  "adverse cardiac event recurrence is expected within the follow-up "
                  "window.") + kAnswerFormat;
  p.diagnosis_prompt = p.level_prompts[Level::Diagnosis];
  return p;
}

void PromptSet::validate() const {
  for (Level l : kAllLevels) {
    auto it = level_prompts.find(l);
    if (it == level_prompts.end() || it->second.empty())
      throw Error(ErrorKind::InvalidConfig,
                  std::string("missing level prompt for ") + to_string(l));
  }
  for (Strategy s : {Strategy::Review, Strategy::Rethinking}) {
    auto it = refine_prompts.find(s);
    if (it == refine_prompts.end() || it->second.empty())
      throw Error(ErrorKind::InvalidConfig,
                  std::string("missing refine prompt for ") + to_string(s));
  }
  size_t first = correction_prompt.find(kAnswerSlot);
  if (first == std::string::npos ||
      correction_prompt.find(kAnswerSlot, first + 1) != std::string::npos)
    throw Error(ErrorKind::InvalidConfig,
                "correction prompt must contain exactly one {answer} slot");
}

std::string PromptSet::correction_with(const std::string& evidence) const {
  std::string out = correction_prompt;
  out.replace(out.find(kAnswerSlot), std::string(kAnswerSlot).size(), evidence);
  return out;
}

PromptSet PromptSet::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidConfig, "cannot open prompts file " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidConfig, std::string("bad prompts file: ") + e.what());
  }
  PromptSet p = defaults();
  if (j.contains("review")) p.refine_prompts[Strategy::Review] = j["review"].get<std::string>();
  if (j.contains("rethinking"))
    p.refine_prompts[Strategy::Rethinking] = j["rethinking"].get<std::string>();
  if (j.contains("correction")) p.correction_prompt = j["correction"].get<std::string>();
  if (j.contains("level_prompts")) {
    for (Level l : kAllLevels) {
      if (j["level_prompts"].contains(to_string(l)))
        p.level_prompts[l] = j["level_prompts"][to_string(l)].get<std::string>();
    }
  }
  p.diagnosis_prompt = p.level_prompts[Level::Diagnosis];
  p.validate();
  return p;
}

}  // namespace mmsurv

#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "mmsurv/level.hpp"

namespace mmsurv {

enum class Strategy { Review, Rethinking };

inline const char* to_string(Strategy s) {
  return s == Strategy::Review ? "review" : "rethinking";
}

// Prompt texts driving the refinement loop. The correction prompt carries
// exactly one "{answer}" substitution slot.
struct PromptSet {
  std::string diagnosis_prompt;  // alias of level_prompts[Diagnosis]
  std::map<Strategy, std::string> refine_prompts;
  std::string correction_prompt;
  std::map<Level, std::string> level_prompts;

  void validate() const;
  std::string correction_with(const std::string& evidence) const;

  static PromptSet defaults();
  // JSON override file; absent keys keep their defaults.
  static PromptSet load(const std::filesystem::path& path);
};

}  // namespace mmsurv

#pragma once

#include <array>
#include <optional>
#include <string>

namespace mmsurv {

// The three evidence levels, chained in this order.
enum class Level { Diagnosis, Complications, MaceFollowUp };

constexpr std::array<Level, 3> kAllLevels = {Level::Diagnosis, Level::Complications,
                                             Level::MaceFollowUp};

inline const char* to_string(Level l) {
  switch (l) {
    case Level::Diagnosis: return "diagnosis";
    case Level::Complications: return "complications";
    case Level::MaceFollowUp: return "mace";
  }
  return "?";
}

inline std::optional<Level> level_from_string(const std::string& s) {
  for (Level l : kAllLevels)
    if (s == to_string(l)) return l;
  return std::nullopt;
}

}  // namespace mmsurv

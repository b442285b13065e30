#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mmsurv/errors.hpp"

namespace mmsurv {

enum class Complication {
  MicrocirculationDysfunction,
  IntramyocardialHemorrhage,
  VentricularThrombus,
  VentricularAneurysm,
};

constexpr std::array<Complication, 4> kAllComplications = {
    Complication::MicrocirculationDysfunction,
    Complication::IntramyocardialHemorrhage,
    Complication::VentricularThrombus,
    Complication::VentricularAneurysm,
};

const char* to_string(Complication c);
std::optional<Complication> complication_from_string(const std::string& s);

// Follow-up assessment over a fixed observation window.
struct MaceFollowUp {
  bool recurrence = false;
  double window_months = 24.0;

  std::string to_evidence_string() const;
};

// Serializes a complication set as level-C evidence ("none" when empty).
std::string complications_evidence_string(const std::set<Complication>& cs);

struct ImageVolume {
  int slices = 0;  // N
  int height = 0;  // H
  int width = 0;   // W
  std::vector<double> voxels;  // N*H*W, slice-major

  double at(int s, int y, int x) const {
    return voxels[static_cast<size_t>(s) * height * width + static_cast<size_t>(y) * width + x];
  }

  // N >= 1, H/W >= 8, no NaN/Inf, values >= 0.
  void validate() const;
};

struct ReasoningTexts {
  std::optional<std::string> diagnosis;       // I^D
  std::optional<std::string> complications;   // I^C
  std::optional<std::string> mace;            // I^M
};

struct PatientRecord {
  std::string id;
  std::optional<std::string> image_path;  // relative path to a raw f64 LE tensor
  std::optional<ImageVolume> image;       // populated when the tensor is loaded
  std::optional<std::vector<double>> image_embedding;  // precomputed, 768-d
  std::string findings_text;              // I^F
  std::string evidence_diagnosis;         // E_d
  std::set<Complication> evidence_complications;  // E_c
  MaceFollowUp evidence_mace;             // E_m
  double survival_time = 0.0;             // months, > 0
  int censored = 1;                       // 0 = event, 1 = censored
  ReasoningTexts reasoning_texts;

  bool has_image() const { return image_path.has_value() || image.has_value(); }

  void validate() const;
};

using Cohort = std::vector<PatientRecord>;

// K-interval discretization of survival time. edges has K-1 entries.
struct TimeBins {
  std::vector<double> edges;

  int interval_count() const { return static_cast<int>(edges.size()) + 1; }

  // bin(t) = number of edges strictly below t.
  int bin(double t) const;
};

struct CohortSplit {
  std::vector<std::string> train;
  std::vector<std::string> val;
  std::vector<std::string> test;
  uint64_t seed = 0;
};

// Empirical quantile edges over uncensored times only, lower-nearest order
// statistic: edge_j = x_(ceil(j*n_u/K)), j = 1..K-1 over sorted uncensored
// times. Throws DegenerateCohort with fewer than K uncensored subjects,
// InvalidRecord on non-positive times.
TimeBins discretize_survival_times(const std::vector<double>& times,
                                   const std::vector<int>& censored, int k);

// 6:2:2 split with floor/floor/remainder sizes. Ids are sorted and then
// shuffled by a seeded PRNG, so the result depends only on the id set and
// seed. With stratify set, the floor rule is applied per event stratum.
CohortSplit split_cohort(const Cohort& cohort, uint64_t seed, bool stratify_by_event = false);

}  // namespace mmsurv

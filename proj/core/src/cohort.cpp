#include "mmsurv/cohort.hpp"

#include <algorithm>
#include <cmath>

#include "mmsurv/rng.hpp"

namespace mmsurv {

const char* to_string(Complication c) {
  switch (c) {
    case Complication::MicrocirculationDysfunction: return "MicrocirculationDysfunction";
    case Complication::IntramyocardialHemorrhage: return "IntramyocardialHemorrhage";
    case Complication::VentricularThrombus: return "VentricularThrombus";
    case Complication::VentricularAneurysm: return "VentricularAneurysm";
  }
  return "?";
}

std::optional<Complication> complication_from_string(const std::string& s) {
  for (Complication c : kAllComplications) {
    if (s == to_string(c)) return c;
  }
  return std::nullopt;
}

std::string MaceFollowUp::to_evidence_string() const {
  std::string months = std::to_string(window_months);
  // trim trailing zeros of the default %f formatting
  months.erase(months.find_last_not_of('0') + 1);
  if (!months.empty() && months.back() == '.') months.pop_back();
  return "recurrence within " + months + " months: " + (recurrence ? "yes" : "no");
}

std::string complications_evidence_string(const std::set<Complication>& cs) {
  if (cs.empty()) return "none";
  std::string out;
  for (Complication c : kAllComplications) {
    if (!cs.count(c)) continue;
    if (!out.empty()) out += ", ";
    switch (c) {
      case Complication::MicrocirculationDysfunction: out += "microcirculation dysfunction"; break;
      case Complication::IntramyocardialHemorrhage: out += "intramyocardial hemorrhage"; break;
      case Complication::VentricularThrombus: out += "ventricular thrombus"; break;
      case Complication::VentricularAneurysm: out += "ventricular aneurysm"; break;
    }
  }
  return out;
}

void ImageVolume::validate() const {
  if (slices < 1) throw Error(ErrorKind::InvalidRecord, "image volume needs at least one slice");
  if (height < 8 || width < 8)
    throw Error(ErrorKind::InvalidRecord, "image slices must be at least 8x8");
  if (voxels.size() != static_cast<size_t>(slices) * height * width)
    throw Error(ErrorKind::InvalidRecord, "voxel buffer size does not match dimensions");
  for (double v : voxels) {
    if (!std::isfinite(v)) throw Error(ErrorKind::InvalidRecord, "non-finite voxel value");
    if (v < 0.0) throw Error(ErrorKind::InvalidRecord, "negative voxel value");
  }
}

void PatientRecord::validate() const {
  if (id.empty()) throw Error(ErrorKind::InvalidRecord, "record without id");
  if (!(survival_time > 0.0))
    throw Error(ErrorKind::InvalidRecord, "survival_time must be positive (" + id + ")");
  if (censored != 0 && censored != 1)
    throw Error(ErrorKind::InvalidRecord, "censored flag must be 0 or 1 (" + id + ")");
  if (has_image() && image_embedding.has_value())
    throw Error(ErrorKind::InvalidRecord, "record carries both image and embedding (" + id + ")");
  if (image_embedding && image_embedding->size() != 768)
    throw Error(ErrorKind::InvalidRecord, "image_embedding must be 768-d (" + id + ")");
  if (image) image->validate();
}

int TimeBins::bin(double t) const {
  int b = 0;
  for (double e : edges) {
    if (e < t) ++b;
  }
  return b;
}

TimeBins discretize_survival_times(const std::vector<double>& times,
                                   const std::vector<int>& censored, int k) {
  if (k < 2) throw Error(ErrorKind::InvalidConfig, "interval count must be at least 2");
  if (times.size() != censored.size())
    throw Error(ErrorKind::InvalidRecord, "times/censored length mismatch");

  std::vector<double> uncensored;
  for (size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] > 0.0)) throw Error(ErrorKind::InvalidRecord, "non-positive survival time");
    if (censored[i] == 0) uncensored.push_back(times[i]);
  }
  if (static_cast<int>(uncensored.size()) < k)
    throw Error(ErrorKind::DegenerateCohort,
                "need at least " + std::to_string(k) + " uncensored subjects, have " +
                    std::to_string(uncensored.size()));

  std::sort(uncensored.begin(), uncensored.end());
  const size_t n = uncensored.size();
  TimeBins bins;
  bins.edges.reserve(k - 1);
  for (int j = 1; j < k; ++j) {
    // 1-indexed order statistic ceil(j*n/K)
    size_t rank = (static_cast<size_t>(j) * n + k - 1) / k;
    bins.edges.push_back(uncensored[rank - 1]);
  }
  return bins;
}

namespace {

void append_split(const std::vector<std::string>& ids, uint64_t seed, CohortSplit& out) {
  std::vector<std::string> shuffled = ids;
  std::sort(shuffled.begin(), shuffled.end());
  Rng rng(seed);
  rng.shuffle(shuffled);

  const size_t n = shuffled.size();
  const size_t n_train = static_cast<size_t>(0.6 * static_cast<double>(n));
  const size_t n_val = static_cast<size_t>(0.2 * static_cast<double>(n));
  out.train.insert(out.train.end(), shuffled.begin(), shuffled.begin() + n_train);
  out.val.insert(out.val.end(), shuffled.begin() + n_train, shuffled.begin() + n_train + n_val);
  out.test.insert(out.test.end(), shuffled.begin() + n_train + n_val, shuffled.end());
}

}  // namespace

CohortSplit split_cohort(const Cohort& cohort, uint64_t seed, bool stratify_by_event) {
  if (cohort.size() < 5)
    throw Error(ErrorKind::DegenerateCohort, "cohort too small to split 6:2:2");

  CohortSplit split;
  split.seed = seed;
  if (!stratify_by_event) {
    std::vector<std::string> ids;
    ids.reserve(cohort.size());
    for (const auto& r : cohort) ids.push_back(r.id);
    append_split(ids, seed, split);
  } else {
    std::vector<std::string> events, censored;
    for (const auto& r : cohort) {
      (r.censored == 0 ? events : censored).push_back(r.id);
    }
    append_split(events, seed, split);
    append_split(censored, seed + 1, split);
  }
  return split;
}

}  // namespace mmsurv

#pragma once

#include <filesystem>
#include <string>

#include "mmsurv/cohort.hpp"

namespace mmsurv {

// Cohort file: JSON Lines, one PatientRecord per line. Image volumes are
// referenced by relative path ("image" field) to a raw f64 little-endian
// tensor with a JSON sidecar {n,h,w}; embeddings are stored inline.

Cohort load_cohort(const std::filesystem::path& jsonl_path, bool load_volumes = false);
void save_cohort(const Cohort& cohort, const std::filesystem::path& jsonl_path);

std::string record_to_json_line(const PatientRecord& r);
PatientRecord record_from_json_line(const std::string& line);

ImageVolume load_volume(const std::filesystem::path& tensor_path);
void save_volume(const ImageVolume& vol, const std::filesystem::path& tensor_path);

}  // namespace mmsurv

#include "mmsurv/cohort_io.hpp"

#include <bit>
#include <fstream>

#include <json.hpp>

namespace mmsurv {

static_assert(std::endian::native == std::endian::little,
              "tensor files are little-endian; big-endian hosts are unsupported");

using ordered_json = nlohmann::ordered_json;

std::string record_to_json_line(const PatientRecord& r) {
  ordered_json j;
  j["id"] = r.id;
  if (r.image_path) j["image"] = *r.image_path;
  if (r.image_embedding) j["image_embedding"] = *r.image_embedding;
  j["findings_text"] = r.findings_text;
  j["evidence_diagnosis"] = r.evidence_diagnosis;
  ordered_json comps = ordered_json::array();
  for (Complication c : kAllComplications) {
    if (r.evidence_complications.count(c)) comps.push_back(to_string(c));
  }
  j["evidence_complications"] = comps;
  j["evidence_mace"] = {{"recurrence", r.evidence_mace.recurrence},
                        {"window_months", r.evidence_mace.window_months}};
  j["survival_time"] = r.survival_time;
  j["censored"] = r.censored;
  if (r.reasoning_texts.diagnosis || r.reasoning_texts.complications || r.reasoning_texts.mace) {
    ordered_json rt;
    if (r.reasoning_texts.diagnosis) rt["diagnosis"] = *r.reasoning_texts.diagnosis;
    if (r.reasoning_texts.complications) rt["complications"] = *r.reasoning_texts.complications;
    if (r.reasoning_texts.mace) rt["mace"] = *r.reasoning_texts.mace;
    j["reasoning_texts"] = rt;
  }
  return j.dump();
}

PatientRecord record_from_json_line(const std::string& line) {
  ordered_json j;
  try {
    j = ordered_json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidRecord, std::string("bad cohort line: ") + e.what());
  }
  PatientRecord r;
  try {
    r.id = j.at("id").get<std::string>();
    if (j.contains("image")) r.image_path = j["image"].get<std::string>();
    if (j.contains("image_embedding"))
      r.image_embedding = j["image_embedding"].get<std::vector<double>>();
    r.findings_text = j.at("findings_text").get<std::string>();
    r.evidence_diagnosis = j.value("evidence_diagnosis", std::string());
    if (j.contains("evidence_complications")) {
      for (const auto& name : j["evidence_complications"]) {
        auto c = complication_from_string(name.get<std::string>());
        if (!c)
          throw Error(ErrorKind::InvalidRecord,
                      "unknown complication '" + name.get<std::string>() + "' (" + r.id + ")");
        r.evidence_complications.insert(*c);
      }
    }
    if (j.contains("evidence_mace")) {
      r.evidence_mace.recurrence = j["evidence_mace"].value("recurrence", false);
      r.evidence_mace.window_months = j["evidence_mace"].value("window_months", 24.0);
    }
    r.survival_time = j.at("survival_time").get<double>();
    r.censored = j.at("censored").get<int>();
    if (j.contains("reasoning_texts")) {
      const auto& rt = j["reasoning_texts"];
      if (rt.contains("diagnosis")) r.reasoning_texts.diagnosis = rt["diagnosis"].get<std::string>();
      if (rt.contains("complications"))
        r.reasoning_texts.complications = rt["complications"].get<std::string>();
      if (rt.contains("mace")) r.reasoning_texts.mace = rt["mace"].get<std::string>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidRecord, std::string("bad cohort record: ") + e.what());
  }
  r.validate();
  return r;
}

Cohort load_cohort(const std::filesystem::path& jsonl_path, bool load_volumes) {
  std::ifstream in(jsonl_path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open cohort file " + jsonl_path.string());
  Cohort cohort;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    PatientRecord r = record_from_json_line(line);
    if (load_volumes && r.image_path) {
      r.image = load_volume(jsonl_path.parent_path() / *r.image_path);
      r.image->validate();
    }
    cohort.push_back(std::move(r));
  }
  return cohort;
}

void save_cohort(const Cohort& cohort, const std::filesystem::path& jsonl_path) {
  if (jsonl_path.has_parent_path()) std::filesystem::create_directories(jsonl_path.parent_path());
  std::ofstream out(jsonl_path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot write cohort file " + jsonl_path.string());
  for (const auto& r : cohort) out << record_to_json_line(r) << "\n";
}

ImageVolume load_volume(const std::filesystem::path& tensor_path) {
  std::ifstream meta(tensor_path.string() + ".json");
  if (!meta)
    throw Error(ErrorKind::IoError, "missing tensor sidecar " + tensor_path.string() + ".json");
  ordered_json j = ordered_json::parse(meta);
  ImageVolume vol;
  vol.slices = j.at("n").get<int>();
  vol.height = j.at("h").get<int>();
  vol.width = j.at("w").get<int>();

  std::ifstream in(tensor_path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open tensor file " + tensor_path.string());
  vol.voxels.resize(static_cast<size_t>(vol.slices) * vol.height * vol.width);
  in.read(reinterpret_cast<char*>(vol.voxels.data()),
          static_cast<std::streamsize>(vol.voxels.size() * sizeof(double)));
  if (in.gcount() != static_cast<std::streamsize>(vol.voxels.size() * sizeof(double)))
    throw Error(ErrorKind::IoError, "tensor file truncated: " + tensor_path.string());
  return vol;
}

void save_volume(const ImageVolume& vol, const std::filesystem::path& tensor_path) {
  if (tensor_path.has_parent_path())
    std::filesystem::create_directories(tensor_path.parent_path());
  std::ofstream out(tensor_path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot write tensor file " + tensor_path.string());
  out.write(reinterpret_cast<const char*>(vol.voxels.data()),
            static_cast<std::streamsize>(vol.voxels.size() * sizeof(double)));
  ordered_json j = {{"n", vol.slices}, {"h", vol.height}, {"w", vol.width}};
  std::ofstream meta(tensor_path.string() + ".json", std::ios::binary);
  meta << j.dump() << "\n";
}

}  // namespace mmsurv

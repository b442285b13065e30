#include "mmsurv/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mmsurv/rng.hpp"

namespace mmsurv {

namespace {

// N(0,1) quartile boundaries.
int severity_band(double r) {
  if (r < -0.6745) return 0;
  if (r < 0.0) return 1;
  if (r < 0.6745) return 2;
  return 3;
}

const char* kFindingsByBand[4] = {
    "small subendocardial late enhancement of the inferior wall with preserved systolic function",
    "limited transmural late enhancement of the inferior wall with mildly reduced systolic function",
    "extensive transmural late enhancement with regional hypokinesis and moderately reduced systolic function",
    "extensive anterior transmural infarction with microvascular obstruction and severely reduced systolic function",
};

const char* kDiagnosisByBand[4] = {
    "small inferior non-st-elevation myocardial infarction",
    "inferior myocardial infarction with limited scar burden",
    "transmural myocardial infarction with regional dysfunction",
    "extensive anterior st-elevation myocardial infarction",
};

}  // namespace

Cohort generate_synthetic_cohort(const SyntheticConfig& cfg) {
  if (cfg.n <= 0) throw Error(ErrorKind::InvalidConfig, "cohort size must be positive");
  if (cfg.event_count <= 0 || cfg.event_count > cfg.n)
    throw Error(ErrorKind::InvalidConfig, "event_count must be in (0, n]");
  if (cfg.signal_strength < 0.0)
    throw Error(ErrorKind::InvalidConfig, "signal_strength must be non-negative");

  Rng rng(cfg.seed);
  const double s = cfg.signal_strength;

  int width = 1;
  for (int m = cfg.n; m >= 10; m /= 10) ++width;

  Cohort cohort;
  cohort.reserve(cfg.n);
  std::vector<double> latent_times(cfg.n);
  std::vector<double> censor_scales(cfg.n);

  for (int i = 0; i < cfg.n; ++i) {
    const double r = rng.normal();

    PatientRecord rec;
    std::string num = std::to_string(i + 1);
    rec.id = "case" + std::string(width - num.size(), '0') + num;

    std::vector<double> emb(768);
    for (double& v : emb) v = cfg.embedding_noise * rng.normal();
    emb[0] += s * r;
    rec.image_embedding = std::move(emb);

    latent_times[i] =
        std::exp(std::log(cfg.time_scale_months) - cfg.time_signal_coef * s * r +
                 cfg.time_noise * rng.normal());
    censor_scales[i] = rng.uniform(0.25, 1.0);

    const int band = severity_band(r);
    const int lvef = std::max(12, 55 - 9 * band + static_cast<int>(std::lround(3.0 * rng.normal())));
    const int infarct_pct = std::max(1, 4 + 9 * band + static_cast<int>(std::lround(2.0 * rng.normal())));
    rec.findings_text = "Cardiac MRI: " + std::string(kFindingsByBand[band]) +
                        ". LVEF " + std::to_string(lvef) + "%. Infarct size " +
                        std::to_string(infarct_pct) + "% of LV mass.";
    rec.evidence_diagnosis = kDiagnosisByBand[band];

    // complication prevalence rises with the latent factor
    const double thresholds[4] = {0.2, 0.8, 1.2, 1.5};
    for (int c = 0; c < 4; ++c) {
      const double noisy = r + 0.3 * rng.normal();
      if (noisy > thresholds[c]) rec.evidence_complications.insert(kAllComplications[c]);
    }

    // Follow-up band derives from the latent factor, not from the realized
    // event flag, so stage-2 text can only carry label information through
    // the planted signal.
    rec.evidence_mace.recurrence = (r + 0.5 * rng.normal()) > 0.9;
    rec.evidence_mace.window_months = 24.0;

    cohort.push_back(std::move(rec));
  }

  std::vector<int> order(cfg.n);
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);
  std::vector<bool> is_event(cfg.n, false);
  for (int j = 0; j < cfg.event_count; ++j) is_event[order[j]] = true;

  for (int i = 0; i < cfg.n; ++i) {
    cohort[i].censored = is_event[i] ? 0 : 1;
    cohort[i].survival_time = is_event[i] ? latent_times[i] : latent_times[i] * censor_scales[i];
  }
  return cohort;
}

}  // namespace mmsurv

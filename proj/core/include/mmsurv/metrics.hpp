#pragma once

#include <string>
#include <vector>

#include "mmsurv/errors.hpp"

namespace mmsurv {

struct RiskedCohort {
  std::vector<double> risks;
  std::vector<double> times;
  std::vector<int> events;  // 1 = event, 0 = censored

  size_t size() const { return risks.size(); }
  void validate() const;
};

struct KmCurve {
  std::vector<double> event_times;  // distinct, sorted
  std::vector<double> survival;     // S at each event time
  std::vector<int> at_risk;
  std::vector<int> events;

  // step-function value at t (1 before the first event time)
  double eval(double t) const;
  // left limit: value just before t
  double eval_left(double t) const;
};

struct LogrankResult {
  double chi2 = 0.0;
  double p = 1.0;
};

// Harrell's estimator. Comparable pairs are (i,j) with time_i < time_j and
// event_i = 1; risk ties get half credit. Computed with a Fenwick tree over
// risk ranks, O(n log n). Throws UndefinedMetric with zero comparable pairs.
double concordance_index(const RiskedCohort& cohort);

// Product-limit estimator over distinct event times.
KmCurve km_estimator(const std::vector<double>& times, const std::vector<int>& events);

// Two-sample log-rank test; hypergeometric variance, chi-square(1) tail.
LogrankResult logrank_test(const std::vector<double>& times_a, const std::vector<int>& events_a,
                           const std::vector<double>& times_b, const std::vector<int>& events_b);

// Cumulative/dynamic time-dependent AUC at one horizon with
// inverse-probability-of-censoring weights. Cases are subjects with an event
// at or before the horizon (weight 1/G(t_i-)), controls those still at risk
// after it (weight 1/G(tau)), G the censoring-distribution KM.
// Returns NaN when the horizon has no case/control mass.
double survival_auc_at(const RiskedCohort& cohort, const KmCurve& censor_km, double horizon);

// Integral of survival_auc_at over eval_times, weighted by the marginal event
// distribution (KM mass between consecutive horizons). Empty eval_times
// defaults to the distinct uncensored event times. Throws UndefinedMetric
// when no horizon carries weight.
double survival_auc(const RiskedCohort& cohort, const KmCurve& censor_km,
                    std::vector<double> eval_times = {});

// Censoring-distribution KM: the same estimator with flipped event flags.
KmCurve censoring_km(const std::vector<double>& times, const std::vector<int>& events);

// Upper tail of the chi-square(1) distribution via the regularized
// incomplete gamma function Q(1/2, x/2).
double chi2_upper_tail_df1(double x);

// "%.2e"-style scientific notation used for reported p-values.
std::string format_p_value(double p);

}  // namespace mmsurv

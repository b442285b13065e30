#include "mmsurv/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

namespace mmsurv {

void RiskedCohort::validate() const {
  if (risks.size() != times.size() || risks.size() != events.size())
    throw Error(ErrorKind::InvalidRecord, "risked cohort vectors must have equal length");
  for (double r : risks)
    if (!std::isfinite(r)) throw Error(ErrorKind::InvalidRecord, "non-finite risk");
  for (double t : times)
    if (!(t > 0.0)) throw Error(ErrorKind::InvalidRecord, "non-positive time");
}

namespace {

// Fenwick tree over risk ranks; supports prefix counts.
class Fenwick {
 public:
  explicit Fenwick(size_t n) : tree_(n + 1, 0) {}

  void add(size_t rank) {
    for (size_t i = rank + 1; i < tree_.size(); i += i & (~i + 1)) ++tree_[i];
  }

  // count of inserted ranks <= rank
  long long prefix(size_t rank) const {
    long long s = 0;
    for (size_t i = rank + 1; i > 0; i -= i & (~i + 1)) s += tree_[i];
    return s;
  }

  long long total() const { return total_count_; }
  void note_insert() { ++total_count_; }

 private:
  std::vector<long long> tree_;
  long long total_count_ = 0;
};

}  // namespace

double concordance_index(const RiskedCohort& cohort) {
  cohort.validate();
  const size_t n = cohort.size();

  std::vector<double> sorted_risks = cohort.risks;
  std::sort(sorted_risks.begin(), sorted_risks.end());
  sorted_risks.erase(std::unique(sorted_risks.begin(), sorted_risks.end()), sorted_risks.end());
  auto rank_of = [&](double r) {
    return static_cast<size_t>(
        std::lower_bound(sorted_risks.begin(), sorted_risks.end(), r) - sorted_risks.begin());
  };

  std::vector<size_t> by_time(n);
  std::iota(by_time.begin(), by_time.end(), 0);
  std::sort(by_time.begin(), by_time.end(),
            [&](size_t a, size_t b) { return cohort.times[a] < cohort.times[b]; });

  Fenwick tree(sorted_risks.size());
  long long comparable = 0, concordant = 0, tied = 0;

  // sweep times descending; the tree holds risks of subjects with larger time
  size_t i = n;
  while (i > 0) {
    size_t group_end = i;
    const double t = cohort.times[by_time[i - 1]];
    while (i > 0 && cohort.times[by_time[i - 1]] == t) --i;
    for (size_t k = i; k < group_end; ++k) {
      const size_t subj = by_time[k];
      if (cohort.events[subj] != 1) continue;
      const size_t r = rank_of(cohort.risks[subj]);
      comparable += tree.total();
      const long long leq = tree.prefix(r);
      const long long eq = leq - (r > 0 ? tree.prefix(r - 1) : 0);
      concordant += leq - eq;  // strictly lower risk than the earlier subject
      tied += eq;
    }
    for (size_t k = i; k < group_end; ++k) {
      tree.add(rank_of(cohort.risks[by_time[k]]));
      tree.note_insert();
    }
  }

  if (comparable == 0)
    throw Error(ErrorKind::UndefinedMetric, "no comparable pairs for concordance index");
  return (static_cast<double>(concordant) + 0.5 * static_cast<double>(tied)) /
         static_cast<double>(comparable);
}

KmCurve km_estimator(const std::vector<double>& times, const std::vector<int>& events) {
  if (times.empty()) throw Error(ErrorKind::InvalidRecord, "empty sample for KM estimator");
  if (times.size() != events.size())
    throw Error(ErrorKind::InvalidRecord, "times/events length mismatch");

  std::vector<size_t> order(times.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return times[a] < times[b]; });

  KmCurve curve;
  double surv = 1.0;
  size_t i = 0;
  const size_t n = times.size();
  while (i < n) {
    const double t = times[order[i]];
    int d = 0, leaving = 0;
    size_t j = i;
    while (j < n && times[order[j]] == t) {
      if (events[order[j]] == 1) ++d;
      ++leaving;
      ++j;
    }
    const int at_risk = static_cast<int>(n - i);
    if (d > 0) {
      surv *= 1.0 - static_cast<double>(d) / static_cast<double>(at_risk);
      curve.event_times.push_back(t);
      curve.survival.push_back(surv);
      curve.at_risk.push_back(at_risk);
      curve.events.push_back(d);
    }
    i += leaving;
  }
  return curve;
}

double KmCurve::eval(double t) const {
  // last event time <= t
  auto it = std::upper_bound(event_times.begin(), event_times.end(), t);
  if (it == event_times.begin()) return 1.0;
  return survival[static_cast<size_t>(it - event_times.begin()) - 1];
}

double KmCurve::eval_left(double t) const {
  auto it = std::lower_bound(event_times.begin(), event_times.end(), t);
  if (it == event_times.begin()) return 1.0;
  return survival[static_cast<size_t>(it - event_times.begin()) - 1];
}

KmCurve censoring_km(const std::vector<double>& times, const std::vector<int>& events) {
  std::vector<int> flipped(events.size());
  for (size_t i = 0; i < events.size(); ++i) flipped[i] = events[i] == 1 ? 0 : 1;
  return km_estimator(times, flipped);
}

LogrankResult logrank_test(const std::vector<double>& times_a, const std::vector<int>& events_a,
                           const std::vector<double>& times_b, const std::vector<int>& events_b) {
  if (times_a.empty() || times_b.empty())
    throw Error(ErrorKind::UndefinedMetric, "log-rank test requires two non-empty groups");

  struct Obs {
    double t;
    int event;
    int group;
  };
  std::vector<Obs> all;
  all.reserve(times_a.size() + times_b.size());
  for (size_t i = 0; i < times_a.size(); ++i) all.push_back({times_a[i], events_a[i], 0});
  for (size_t i = 0; i < times_b.size(); ++i) all.push_back({times_b[i], events_b[i], 1});
  std::sort(all.begin(), all.end(), [](const Obs& x, const Obs& y) { return x.t < y.t; });

  long long total_events = 0;
  for (const Obs& o : all) total_events += o.event;
  if (total_events == 0)
    throw Error(ErrorKind::UndefinedMetric, "log-rank test requires at least one event");

  double n_a = static_cast<double>(times_a.size());
  double n_b = static_cast<double>(times_b.size());
  double observed_a = 0.0, expected_a = 0.0, variance = 0.0;

  size_t i = 0;
  while (i < all.size()) {
    const double t = all[i].t;
    double d = 0.0, d_a = 0.0, leaving_a = 0.0, leaving_b = 0.0;
    while (i < all.size() && all[i].t == t) {
      if (all[i].event == 1) {
        d += 1.0;
        if (all[i].group == 0) d_a += 1.0;
      }
      (all[i].group == 0 ? leaving_a : leaving_b) += 1.0;
      ++i;
    }
    const double n = n_a + n_b;
    if (d > 0.0 && n > 0.0) {
      observed_a += d_a;
      expected_a += d * n_a / n;
      if (n > 1.0)
        variance += d * (n_a / n) * (1.0 - n_a / n) * (n - d) / (n - 1.0);
    }
    n_a -= leaving_a;
    n_b -= leaving_b;
  }

  LogrankResult res;
  const double diff = observed_a - expected_a;
  res.chi2 = variance > 0.0 ? diff * diff / variance : 0.0;
  res.p = chi2_upper_tail_df1(res.chi2);
  return res;
}

namespace {

// Regularized incomplete gamma: P(a,x) by series, Q(a,x) by continued
// fraction (modified Lentz).
double gamma_p_series(double a, double x) {
  double sum = 1.0 / a;
  double term = sum;
  double ap = a;
  for (int i = 0; i < 500; ++i) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_contfrac(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double chi2_upper_tail_df1(double x) {
  if (!(x > 0.0)) return 1.0;
  const double a = 0.5;
  const double z = x / 2.0;
  if (z < a + 1.0) return 1.0 - gamma_p_series(a, z);
  return gamma_q_contfrac(a, z);
}

double survival_auc_at(const RiskedCohort& cohort, const KmCurve& censor_km, double horizon) {
  const double g_tau = censor_km.eval(horizon);
  if (!(g_tau > 0.0)) return std::numeric_limits<double>::quiet_NaN();

  struct Weighted {
    double risk;
    double weight;
  };
  std::vector<Weighted> cases;
  std::vector<double> control_risks;
  for (size_t i = 0; i < cohort.size(); ++i) {
    if (cohort.events[i] == 1 && cohort.times[i] <= horizon) {
      const double g = censor_km.eval_left(cohort.times[i]);
      if (g > 0.0) cases.push_back({cohort.risks[i], 1.0 / g});
    } else if (cohort.times[i] > horizon) {
      control_risks.push_back(cohort.risks[i]);
    }
  }
  if (cases.empty() || control_risks.empty()) return std::numeric_limits<double>::quiet_NaN();

  // controls share the weight 1/G(tau); rank cases against sorted controls
  std::sort(control_risks.begin(), control_risks.end());
  const double control_weight = 1.0 / g_tau;
  double num = 0.0, case_mass = 0.0;
  for (const Weighted& c : cases) {
    const auto lo = std::lower_bound(control_risks.begin(), control_risks.end(), c.risk);
    const auto hi = std::upper_bound(control_risks.begin(), control_risks.end(), c.risk);
    const double below = static_cast<double>(lo - control_risks.begin());
    const double equal = static_cast<double>(hi - lo);
    num += c.weight * control_weight * (below + 0.5 * equal);
    case_mass += c.weight;
  }
  const double control_mass = control_weight * static_cast<double>(control_risks.size());
  return num / (case_mass * control_mass);
}

double survival_auc(const RiskedCohort& cohort, const KmCurve& censor_km,
                    std::vector<double> eval_times) {
  cohort.validate();
  if (eval_times.empty()) {
    for (size_t i = 0; i < cohort.size(); ++i)
      if (cohort.events[i] == 1) eval_times.push_back(cohort.times[i]);
    std::sort(eval_times.begin(), eval_times.end());
    eval_times.erase(std::unique(eval_times.begin(), eval_times.end()), eval_times.end());
  }
  if (eval_times.empty())
    throw Error(ErrorKind::UndefinedMetric, "no event times to evaluate survival AUC");

  const KmCurve event_km = km_estimator(cohort.times, cohort.events);

  double weighted = 0.0, mass = 0.0;
  double prev_surv = 1.0;
  for (double tau : eval_times) {
    const double surv = event_km.eval(tau);
    const double w = prev_surv - surv;  // event mass since the previous horizon
    prev_surv = surv;
    if (w <= 0.0) continue;
    const double auc = survival_auc_at(cohort, censor_km, tau);
    if (std::isnan(auc)) continue;
    weighted += w * auc;
    mass += w;
  }
  if (mass <= 0.0)
    throw Error(ErrorKind::UndefinedMetric, "zero weight mass for survival AUC");
  return weighted / mass;
}

std::string format_p_value(double p) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2e", p);
  return buf;
}

}  // namespace mmsurv

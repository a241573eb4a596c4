#include "kge/stats.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace kge {
namespace {

// Lentz continued fraction for the incomplete beta, cf. the classic
// betacf formulation.
double betacf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 1e-15;
  constexpr double kFpMin = 1e-300;

  double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kFpMin) d = kFpMin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::abs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::abs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
  if (a <= 0.0 || b <= 0.0) throw std::invalid_argument("incomplete_beta: a, b must be positive");
  if (x < 0.0 || x > 1.0) throw std::invalid_argument("incomplete_beta: x out of [0,1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                    a * std::log(x) + b * std::log1p(-x);
  double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * betacf(a, b, x) / a;
  return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

double student_t_two_sided_p(double t, double dof) {
  if (dof <= 0.0) throw std::invalid_argument("dof must be positive");
  double x = dof / (dof + t * t);
  return incomplete_beta(dof / 2.0, 0.5, x);
}

namespace {

std::pair<double, double> mean_var(const std::vector<double>& v) {
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double var = 0.0;
  for (double x : v) var += (x - mean) * (x - mean);
  var /= static_cast<double>(v.size() - 1);
  return {mean, var};
}

}  // namespace

TTestResult welch_ttest(const std::vector<double>& a, const std::vector<double>& b,
                        double alpha) {
  if (a.size() < 2 || b.size() < 2)
    throw std::invalid_argument("welch_ttest: each sample needs >= 2 values");
  auto [ma, va] = mean_var(a);
  auto [mb, vb] = mean_var(b);
  if (va == 0.0 && vb == 0.0)
    throw std::invalid_argument("welch_ttest: both samples degenerate (zero variance)");

  double na = static_cast<double>(a.size());
  double nb = static_cast<double>(b.size());
  double sa = va / na, sb = vb / nb;
  double se = std::sqrt(sa + sb);

  TTestResult r;
  r.t_statistic = (ma - mb) / se;
  r.dof = (sa + sb) * (sa + sb) /
          (sa * sa / (na - 1.0) + sb * sb / (nb - 1.0));
  r.p = student_t_two_sided_p(r.t_statistic, r.dof);
  r.h = (r.p < alpha) ? 1 : 0;
  return r;
}

Aggregate aggregate(const std::vector<double>& values) {
  if (values.empty()) throw std::invalid_argument("aggregate of empty sample");
  Aggregate a;
  a.n = values.size();
  for (double v : values) a.mean += v;
  a.mean /= static_cast<double>(a.n);
  if (a.n < 2) {
    a.degenerate = true;
    return a;
  }
  double var = 0.0;
  for (double v : values) var += (v - a.mean) * (v - a.mean);
  a.stddev = std::sqrt(var / static_cast<double>(a.n - 1));
  return a;
}

MetricAggregates aggregate_runs(const RunSet& runs) {
  if (runs.samples.empty()) throw std::invalid_argument("empty run set");
  auto collect = [&](double RunMetrics::* field) {
    std::vector<double> v;
    v.reserve(runs.samples.size());
    for (const RunMetrics& m : runs.samples) v.push_back(m.*field);
    return aggregate(v);
  };
  MetricAggregates out;
  out.by_metric["time"] = collect(&RunMetrics::seconds_per_epoch);
  out.by_metric["mrr"] = collect(&RunMetrics::mrr);
  out.by_metric["hits1"] = collect(&RunMetrics::hits1);
  out.by_metric["hits3"] = collect(&RunMetrics::hits3);
  out.by_metric["hits10"] = collect(&RunMetrics::hits10);
  return out;
}

std::string format_mean_std(const Aggregate& a) {
  std::ostringstream os;
  os.precision(3);
  os << std::fixed << a.mean;
  std::ostringstream st;
  st.precision(0);
  st << std::scientific << a.stddev;
  os << "±" << st.str();
  return os.str();
}

namespace {

const char* kMetricColumns[] = {"time", "mrr", "hits1", "hits3", "hits10"};
const char* kColumnTitles[] = {"Time", "MRR", "H@1", "H@3", "H@10"};

// Best mean: lowest for time, highest otherwise.
std::size_t best_index(const std::vector<MetricAggregates>& aggs,
                       const std::string& metric) {
  bool lower_better = (metric == "time");
  std::size_t best = 0;
  for (std::size_t i = 1; i < aggs.size(); ++i) {
    double m = aggs[i].by_metric.at(metric).mean;
    double b = aggs[best].by_metric.at(metric).mean;
    if (lower_better ? m < b : m > b) best = i;
  }
  return best;
}

}  // namespace

std::string render_report_text(const std::vector<RunSet>& runsets,
                               const std::vector<PairTest>& tests) {
  std::vector<MetricAggregates> aggs;
  aggs.reserve(runsets.size());
  for (const RunSet& rs : runsets) aggs.push_back(aggregate_runs(rs));

  std::map<std::string, std::size_t> best;
  for (const char* m : kMetricColumns) best[m] = best_index(aggs, m);

  std::ostringstream os;
  os << "model";
  for (const char* t : kColumnTitles) os << '\t' << t;
  os << '\n';
  for (std::size_t i = 0; i < runsets.size(); ++i) {
    os << runsets[i].label;
    for (const char* m : kMetricColumns) {
      os << '\t' << format_mean_std(aggs[i].by_metric.at(m));
      if (best[m] == i) os << '*';
    }
    os << '\n';
  }

  os << "\nt-tests (h, p)\n";
  if (tests.empty()) {
    os << "-\n";
  } else {
    for (const PairTest& t : tests) {
      std::ostringstream p;
      p.precision(4);
      p << std::scientific << t.result.p;
      os << t.label_a << " vs " << t.label_b << " [" << t.metric << "]\t("
         << t.result.h << ", " << p.str() << ")\n";
    }
  }
  return os.str();
}

std::string render_report_json(const std::vector<RunSet>& runsets,
                               const std::vector<PairTest>& tests) {
  nlohmann::json doc;
  doc["format_version"] = 1;
  doc["models"] = nlohmann::json::array();
  for (const RunSet& rs : runsets) {
    MetricAggregates agg = aggregate_runs(rs);
    nlohmann::json jm;
    jm["label"] = rs.label;
    jm["n_runs"] = rs.samples.size();
    for (const auto& [name, a] : agg.by_metric) {
      jm["metrics"][name] = {{"mean", a.mean},
                             {"std", a.stddev},
                             {"degenerate", a.degenerate}};
    }
    doc["models"].push_back(jm);
  }
  doc["tests"] = nlohmann::json::array();
  for (const PairTest& t : tests) {
    doc["tests"].push_back({{"a", t.label_a},
                            {"b", t.label_b},
                            {"metric", t.metric},
                            {"h", t.result.h},
                            {"p", t.result.p},
                            {"t", t.result.t_statistic},
                            {"dof", t.result.dof}});
  }
  return doc.dump(2);
}

}  // namespace kge

#pragma once

#include <map>
#include <string>
#include <vector>

namespace kge {

struct RunMetrics {
  double mrr = 0.0;
  double hits1 = 0.0;
  double hits3 = 0.0;
  double hits10 = 0.0;
  double seconds_per_epoch = 0.0;
};

struct RunSet {
  std::string label;
  std::vector<RunMetrics> samples;
};

struct TTestResult {
  int h = 0;            // 1 iff p < alpha
  double p = 1.0;
  double t_statistic = 0.0;
  double dof = 0.0;     // Welch-Satterthwaite
};

// Regularized incomplete beta I_x(a, b), continued-fraction evaluation,
// absolute accuracy ~1e-12.
double incomplete_beta(double a, double b, double x);

// Two-sided Student-t tail probability P(|T_dof| >= |t|).
double student_t_two_sided_p(double t, double dof);

// Welch two-sample t-test with unequal variances. Each sample needs >= 2
// values and at least one nonzero variance.
TTestResult welch_ttest(const std::vector<double>& a, const std::vector<double>& b,
                        double alpha = 0.05);

struct Aggregate {
  double mean = 0.0;
  double stddev = 0.0;  // sample std (n-1); 0 with degenerate flag for n = 1
  bool degenerate = false;
  std::size_t n = 0;
};

Aggregate aggregate(const std::vector<double>& values);

struct MetricAggregates {
  std::map<std::string, Aggregate> by_metric;  // mrr, hits1, hits3, hits10, time
};

MetricAggregates aggregate_runs(const RunSet& runs);

struct PairTest {
  std::string label_a, label_b;
  std::string metric;  // "mrr" or "time"
  TTestResult result;
};

// Plain-text table: one row per run set, mean +/- std per metric, best mean
// per column marked with '*', then the pairwise (h, p) matrix.
std::string render_report_text(const std::vector<RunSet>& runsets,
                               const std::vector<PairTest>& tests);

// Machine-readable JSON document of the same content (versioned).
std::string render_report_json(const std::vector<RunSet>& runsets,
                               const std::vector<PairTest>& tests);

// "0.366±4e-04" style cell.
std::string format_mean_std(const Aggregate& a);

}  // namespace kge

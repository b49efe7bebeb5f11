#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace invbench::stats {

/// Design matrix is not of full column rank.
class RankDeficientError : public std::runtime_error {
 public:
  RankDeficientError(std::vector<std::string> columns, const std::string& what)
      : std::runtime_error(what), columns_(std::move(columns)) {}
  const std::vector<std::string>& columns() const noexcept { return columns_; }

 private:
  std::vector<std::string> columns_;
};

struct OlsInput {
  std::vector<double> y;
  std::vector<std::vector<double>> x;  // n rows of k regressors
  std::vector<std::string> names;      // k column names
  std::vector<std::string> clusters;   // n cluster labels
};

struct Coefficient {
  std::string name;
  double estimate = 0.0;
  double se = 0.0;
  double t = 0.0;
  double p_two_sided = 1.0;
  double p_greater = 1.0;  // H1: coefficient > 0
};

struct OlsResult {
  std::vector<Coefficient> coefficients;
  std::vector<std::vector<double>> covariance;  // CR1 cluster-robust
  std::vector<double> residuals;
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t clusters = 0;
  double df = 0.0;  // clusters - 1, used for t reference distributions

  const Coefficient& at(const std::string& name) const;
  /// Linear combination sum_j w_j * beta_j, by column name.
  Coefficient contrast(const std::map<std::string, double>& weights, const std::string& name = "contrast") const;
};

/// Least squares with the CR1 sandwich
///   V = G/(G-1) * (n-1)/(n-k) * (X'X)^-1 [sum_g X_g' u_g u_g' X_g] (X'X)^-1
/// and t(G-1) p-values. Throws RankDeficientError naming dependent columns,
/// ValidationError for shape problems or fewer than two clusters.
OlsResult ols_cluster_robust(const OlsInput& input);

/// Row of a subject-by-instance experiment.
struct PanelRow {
  double outcome = 0.0;
  std::string subject;
  std::string instance;
  std::string mode;     // "A", "B", "C"
};

/// Y = alpha_subject + beta_instance + tau_mode + e, clustered by subject.
/// Columns: "(Intercept)", "subject[..]" (first subject omitted),
/// "instance[..]" (baseline omitted), "mode[..]" (baseline omitted).
OlsResult fit_mode_effects(const std::vector<PanelRow>& rows, const std::string& baseline_instance,
                           const std::string& baseline_mode = "A");

struct IndicatorRow {
  double outcome = 0.0;
  std::string instance;
  bool treated = false;   // human-mode observation
  std::string cluster;    // subject for human rows, run for automated rows
};

/// Y = g0 + instance dummies + delta * 1[treated] + u, clustered by `cluster`.
/// Columns: "(Intercept)", "instance[..]", "treated".
OlsResult fit_indicator_model(const std::vector<IndicatorRow>& rows, const std::string& baseline_instance);

}  // namespace invbench::stats

#include "invbench/stats/ols.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <Eigen/Dense>
#include <boost/math/distributions/students_t.hpp>

#include "invbench/common/error.hpp"

namespace invbench::stats {
namespace {

void fill_p_values(Coefficient& c, double df) {
  c.t = c.se > 0.0 ? c.estimate / c.se : (c.estimate == 0.0 ? 0.0 : std::copysign(INFINITY, c.estimate));
  if (!std::isfinite(c.t)) {
    c.p_two_sided = 0.0;
    c.p_greater = c.t > 0 ? 0.0 : 1.0;
    return;
  }
  const boost::math::students_t dist(df);
  c.p_two_sided = 2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(c.t)));
  c.p_greater = boost::math::cdf(boost::math::complement(dist, c.t));
}

std::vector<std::string> sorted_levels(const std::vector<std::string>& values) {
  std::set<std::string> s(values.begin(), values.end());
  return {s.begin(), s.end()};
}

}  // namespace

const Coefficient& OlsResult::at(const std::string& name) const {
  for (const auto& c : coefficients)
    if (c.name == name) return c;
  throw ValidationError("coefficient", "no column named '" + name + "'");
}

Coefficient OlsResult::contrast(const std::map<std::string, double>& weights, const std::string& name) const {
  std::vector<double> w(k, 0.0);
  for (const auto& [col, weight] : weights) {
    std::size_t j = 0;
    while (j < k && coefficients[j].name != col) ++j;
    if (j == k) throw ValidationError("contrast", "no column named '" + col + "'");
    w[j] = weight;
  }
  Coefficient c;
  c.name = name;
  double var = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    c.estimate += w[i] * coefficients[i].estimate;
    for (std::size_t j = 0; j < k; ++j) var += w[i] * covariance[i][j] * w[j];
  }
  c.se = std::sqrt(std::max(var, 0.0));
  fill_p_values(c, df);
  return c;
}

OlsResult ols_cluster_robust(const OlsInput& in) {
  const std::size_t n = in.y.size();
  const std::size_t k = in.names.size();
  if (in.x.size() != n) throw ValidationError("x", "row count does not match y");
  if (in.clusters.size() != n) throw ValidationError("clusters", "length does not match y");
  if (n <= k) throw ValidationError("y", "need more observations than regressors");

  Eigen::MatrixXd x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k));
  Eigen::VectorXd y(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (in.x[i].size() != k) throw ValidationError("x", "row " + std::to_string(i) + " has the wrong width");
    y(static_cast<Eigen::Index>(i)) = in.y[i];
    for (std::size_t j = 0; j < k; ++j) x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = in.x[i][j];
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
  qr.setThreshold(1e-10);
  if (static_cast<std::size_t>(qr.rank()) < k) {
    std::vector<std::string> dependent;
    const auto perm = qr.colsPermutation().indices();
    for (Eigen::Index j = qr.rank(); j < static_cast<Eigen::Index>(k); ++j)
      dependent.push_back(in.names[static_cast<std::size_t>(perm(j))]);
    std::string list;
    for (const auto& d : dependent) list += (list.empty() ? "" : ", ") + d;
    throw RankDeficientError(dependent, "design matrix is rank deficient; collinear columns: " + list);
  }
  const Eigen::VectorXd beta = qr.solve(y);
  const Eigen::VectorXd u = y - x * beta;
  const Eigen::MatrixXd xtx_inv = (x.transpose() * x).inverse();

  std::map<std::string, Eigen::VectorXd> scores;
  for (std::size_t i = 0; i < n; ++i) {
    auto [it, fresh] = scores.try_emplace(in.clusters[i], Eigen::VectorXd::Zero(static_cast<Eigen::Index>(k)));
    it->second += x.row(static_cast<Eigen::Index>(i)).transpose() * u(static_cast<Eigen::Index>(i));
  }
  const std::size_t g = scores.size();
  if (g < 2) throw ValidationError("clusters", "cluster-robust errors need at least two clusters");
  Eigen::MatrixXd meat = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
  for (const auto& [label, s] : scores) meat += s * s.transpose();
  const double scale = static_cast<double>(g) / static_cast<double>(g - 1) * static_cast<double>(n - 1) /
                       static_cast<double>(n - k);
  const Eigen::MatrixXd v = scale * xtx_inv * meat * xtx_inv;

  OlsResult out;
  out.n = n;
  out.k = k;
  out.clusters = g;
  out.df = static_cast<double>(g - 1);
  out.covariance.assign(k, std::vector<double>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      out.covariance[i][j] = v(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  for (std::size_t j = 0; j < k; ++j) {
    Coefficient c;
    c.name = in.names[j];
    c.estimate = beta(static_cast<Eigen::Index>(j));
    c.se = std::sqrt(std::max(out.covariance[j][j], 0.0));
    fill_p_values(c, out.df);
    out.coefficients.push_back(std::move(c));
  }
  out.residuals.assign(u.data(), u.data() + u.size());
  return out;
}

OlsResult fit_mode_effects(const std::vector<PanelRow>& rows, const std::string& baseline_instance,
                           const std::string& baseline_mode) {
  std::vector<std::string> subj, inst, mode;
  for (const auto& r : rows) {
    subj.push_back(r.subject);
    inst.push_back(r.instance);
    mode.push_back(r.mode);
  }
  const auto subjects = sorted_levels(subj), instances = sorted_levels(inst), modes = sorted_levels(mode);
  if (std::find(instances.begin(), instances.end(), baseline_instance) == instances.end())
    throw ValidationError("baseline_instance", "'" + baseline_instance + "' does not occur in the data");
  if (std::find(modes.begin(), modes.end(), baseline_mode) == modes.end())
    throw ValidationError("baseline_mode", "'" + baseline_mode + "' does not occur in the data");

  OlsInput in;
  in.names.push_back("(Intercept)");
  for (std::size_t i = 1; i < subjects.size(); ++i) in.names.push_back("subject[" + subjects[i] + "]");
  for (const auto& l : instances)
    if (l != baseline_instance) in.names.push_back("instance[" + l + "]");
  for (const auto& l : modes)
    if (l != baseline_mode) in.names.push_back("mode[" + l + "]");

  for (const auto& r : rows) {
    std::vector<double> row{1.0};
    for (std::size_t i = 1; i < subjects.size(); ++i) row.push_back(r.subject == subjects[i] ? 1.0 : 0.0);
    for (const auto& l : instances)
      if (l != baseline_instance) row.push_back(r.instance == l ? 1.0 : 0.0);
    for (const auto& l : modes)
      if (l != baseline_mode) row.push_back(r.mode == l ? 1.0 : 0.0);
    in.x.push_back(std::move(row));
    in.y.push_back(r.outcome);
    in.clusters.push_back(r.subject);
  }
  return ols_cluster_robust(in);
}

OlsResult fit_indicator_model(const std::vector<IndicatorRow>& rows, const std::string& baseline_instance) {
  std::vector<std::string> inst;
  for (const auto& r : rows) inst.push_back(r.instance);
  const auto instances = sorted_levels(inst);
  if (std::find(instances.begin(), instances.end(), baseline_instance) == instances.end())
    throw ValidationError("baseline_instance", "'" + baseline_instance + "' does not occur in the data");
  OlsInput in;
  in.names.push_back("(Intercept)");
  for (const auto& l : instances)
    if (l != baseline_instance) in.names.push_back("instance[" + l + "]");
  in.names.push_back("treated");
  for (const auto& r : rows) {
    std::vector<double> row{1.0};
    for (const auto& l : instances)
      if (l != baseline_instance) row.push_back(r.instance == l ? 1.0 : 0.0);
    row.push_back(r.treated ? 1.0 : 0.0);
    in.x.push_back(std::move(row));
    in.y.push_back(r.outcome);
    in.clusters.push_back(r.cluster);
  }
  return ols_cluster_robust(in);
}

}  // namespace invbench::stats

#include <gtest/gtest.h>

#include <boost/math/distributions/students_t.hpp>
#include <cmath>

#include "invbench/common/error.hpp"
#include "invbench/common/rng.hpp"
#include "invbench/stats/ols.hpp"

using namespace invbench;
using namespace invbench::stats;

TEST(Ols, RecoversNoiselessCoefficients) {
  Rng rng(1);
  OlsInput in;
  in.names = {"(Intercept)", "x1", "x2"};
  for (int i = 0; i < 60; ++i) {
    const double x1 = rng.normal(0, 1), x2 = rng.uniform(-2, 2);
    in.x.push_back({1.0, x1, x2});
    in.y.push_back(0.5 - 1.25 * x1 + 3.0 * x2);
    in.clusters.push_back("g" + std::to_string(i % 7));
  }
  const auto r = ols_cluster_robust(in);
  EXPECT_NEAR(r.at("(Intercept)").estimate, 0.5, 1e-10);
  EXPECT_NEAR(r.at("x1").estimate, -1.25, 1e-10);
  EXPECT_NEAR(r.at("x2").estimate, 3.0, 1e-10);
  EXPECT_EQ(r.clusters, 7u);
  EXPECT_EQ(r.df, 6.0);
  EXPECT_NEAR(r.at("x1").se, 0.0, 1e-9);
}

// Simple regression with three clusters; the sandwich is worked out with
// explicit 2x2 algebra.
TEST(Ols, ThreeClusterSandwichByHand) {
  const std::vector<double> x = {0, 1, 2, 3, 4, 5, 6, 7};
  const std::vector<double> y = {1.0, 2.5, 2.0, 4.5, 4.0, 6.5, 5.5, 8.0};
  const std::vector<std::string> g = {"a", "a", "b", "b", "b", "c", "c", "c"};
  OlsInput in;
  in.names = {"(Intercept)", "x"};
  in.y = y;
  in.clusters = g;
  for (double v : x) in.x.push_back({1.0, v});
  const auto r = ols_cluster_robust(in);

  const double n = 8, k = 2, G = 3;
  double sx = 0, sxx = 0, sy = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sxx += x[i] * x[i];
    sy += y[i];
    sxy += x[i] * y[i];
  }
  const double det = n * sxx - sx * sx;
  const double b1 = (n * sxy - sx * sy) / det, b0 = (sy - b1 * sx) / n;
  // (X'X)^-1
  const double i00 = sxx / det, i01 = -sx / det, i11 = n / det;
  double m00 = 0, m01 = 0, m11 = 0;
  for (const char* c : {"a", "b", "c"}) {
    double s0 = 0, s1 = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (g[i] == c) {
        const double u = y[i] - b0 - b1 * x[i];
        s0 += u;
        s1 += x[i] * u;
      }
    m00 += s0 * s0;
    m01 += s0 * s1;
    m11 += s1 * s1;
  }
  const double scale = G / (G - 1) * (n - 1) / (n - k);
  // V = A M A with A symmetric
  const double a0m0 = i00 * m00 + i01 * m01, a0m1 = i00 * m01 + i01 * m11;
  const double a1m0 = i01 * m00 + i11 * m01, a1m1 = i01 * m01 + i11 * m11;
  const double v00 = scale * (a0m0 * i00 + a0m1 * i01);
  const double v11 = scale * (a1m0 * i01 + a1m1 * i11);
  const double v01 = scale * (a0m0 * i01 + a0m1 * i11);

  EXPECT_NEAR(r.at("(Intercept)").estimate, b0, 1e-12);
  EXPECT_NEAR(r.at("x").estimate, b1, 1e-12);
  EXPECT_NEAR(r.covariance[0][0], v00, 1e-12);
  EXPECT_NEAR(r.covariance[1][1], v11, 1e-12);
  EXPECT_NEAR(r.covariance[0][1], v01, 1e-12);
  EXPECT_NEAR(r.at("x").se, std::sqrt(v11), 1e-12);

  const double t = b1 / std::sqrt(v11);
  boost::math::students_t dist(G - 1);
  EXPECT_NEAR(r.at("x").t, t, 1e-10);
  EXPECT_NEAR(r.at("x").p_two_sided, 2 * boost::math::cdf(boost::math::complement(dist, std::fabs(t))), 1e-10);
  EXPECT_NEAR(r.at("x").p_greater, boost::math::cdf(boost::math::complement(dist, t)), 1e-10);

  const auto c = r.contrast({{"x", 2.0}, {"(Intercept)", -1.0}});
  EXPECT_NEAR(c.estimate, 2 * b1 - b0, 1e-12);
  EXPECT_NEAR(c.se, std::sqrt(4 * v11 + v00 - 4 * v01), 1e-12);
}

TEST(Ols, RankDeficiencyNamesColumns) {
  OlsInput in;
  in.names = {"(Intercept)", "x", "twice_x"};
  for (int i = 0; i < 10; ++i) {
    in.x.push_back({1.0, double(i), 2.0 * i});
    in.y.push_back(i * 0.3);
    in.clusters.push_back(std::to_string(i % 3));
  }
  try {
    ols_cluster_robust(in);
    FAIL();
  } catch (const RankDeficientError& e) {
    ASSERT_FALSE(e.columns().empty());
    const auto& c = e.columns();
    EXPECT_TRUE(std::find(c.begin(), c.end(), "twice_x") != c.end() || std::find(c.begin(), c.end(), "x") != c.end());
  }
}

TEST(Ols, ShapeErrors) {
  OlsInput in;
  in.names = {"(Intercept)"};
  in.x = {{1.0}, {1.0}};
  in.y = {1.0, 2.0};
  in.clusters = {"a", "a"};
  EXPECT_THROW(ols_cluster_robust(in), ValidationError);  // one cluster
  in.clusters = {"a"};
  EXPECT_THROW(ols_cluster_robust(in), ValidationError);
}

TEST(Ols, ModeEffectsColumns) {
  std::vector<PanelRow> rows;
  Rng rng(5);
  const char* modes[3] = {"A", "B", "C"};
  for (int s = 0; s < 12; ++s)
    for (int z = 0; z < 3; ++z) {
      const std::string m = modes[(s + z) % 3];
      rows.push_back({0.5 + 0.1 * z + (m == "B" ? 0.05 : m == "C" ? 0.02 : 0.0) + 0.01 * s, "s" + std::to_string(s),
                      "z" + std::to_string(z), m});
    }
  const auto r = fit_mode_effects(rows, "z0");
  EXPECT_NEAR(r.at("mode[B]").estimate, 0.05, 1e-10);
  EXPECT_NEAR(r.at("mode[C]").estimate, 0.02, 1e-10);
  EXPECT_NEAR(r.at("instance[z2]").estimate, 0.2, 1e-10);
  EXPECT_EQ(r.clusters, 12u);
  EXPECT_THROW(r.at("mode[A]"), std::exception);
}

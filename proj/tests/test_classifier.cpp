#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <sstream>

#include "wos/classifier.hpp"
#include "wos/error.hpp"

using namespace wos;

TEST(Logistic, StableAndSymmetric) {
  EXPECT_NEAR(logistic(1.5), 0.8175744761936437, 1e-15);
  EXPECT_NEAR(logistic(-2.3), 0.09112296101485616, 1e-15);
  EXPECT_EQ(logistic(0.0), 0.5);
  EXPECT_EQ(logistic(-1000.0), 0.0);
  EXPECT_EQ(logistic(1000.0), 1.0);
  for (double z : {-30.0, -3.0, -0.1, 0.7, 12.0}) EXPECT_NEAR(logistic(z) + logistic(-z), 1.0, 1e-15);
}

TEST(AdvisorModel, DefaultsScoreWorkedExamples) {
  AdvisorModel m;
  EXPECT_NEAR(m.score(AdvisorFeatures(0.4, 2.0 / 3.0, 0.2, 1.0)), 0.8176, 1e-4);
  EXPECT_NEAR(m.score(AdvisorFeatures(0.0, 0.0, 0.2, 0.0)), 0.0911, 1e-4);
  EXPECT_NEAR(m.linear(AdvisorFeatures(0.4, 2.0 / 3.0, 0.2, 1.0)), 1.5, 1e-15);
}

namespace {

// Two features; label is 1 iff x0 + x1 > 1, with a margin around the boundary.
void separable(Eigen::MatrixXd& x, Eigen::VectorXd& y) {
  std::vector<std::array<double, 2>> pts;
  for (int i = 0; i <= 10; ++i)
    for (int j = 0; j <= 10; ++j) {
      const double a = i / 10.0, b = j / 10.0;
      if (std::abs(a + b - 1.0) < 0.25) continue;
      pts.push_back({a, b});
    }
  x.resize(static_cast<Eigen::Index>(pts.size()), 2);
  y.resize(static_cast<Eigen::Index>(pts.size()));
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const auto r = static_cast<Eigen::Index>(k);
    x(r, 0) = pts[k][0];
    x(r, 1) = pts[k][1];
    y(r) = pts[k][0] + pts[k][1] > 1.0 ? 1.0 : 0.0;
  }
}

double accuracy(const LogisticFit& fit, const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
  int ok = 0;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const double p = logistic(x.row(i).dot(fit.weights) + fit.bias);
    ok += (p >= 0.5) == (y(i) == 1.0) ? 1 : 0;
  }
  return static_cast<double>(ok) / static_cast<double>(x.rows());
}

}  // namespace

TEST(FitLogistic, SeparableToySetFitsPerfectly) {
  Eigen::MatrixXd x;
  Eigen::VectorXd y;
  separable(x, y);
  auto fit = fit_logistic(x, y);
  EXPECT_EQ(accuracy(fit, x, y), 1.0);
  EXPECT_GT(fit.weights(0), 0);
  EXPECT_GT(fit.weights(1), 0);
  EXPECT_LT(fit.bias, 0);
}

TEST(FitLogistic, MiniBatchAlsoSeparates) {
  Eigen::MatrixXd x;
  Eigen::VectorXd y;
  separable(x, y);
  LogisticFitOptions opt;
  opt.batch_size = 8;
  opt.iterations = 200;
  EXPECT_EQ(accuracy(fit_logistic(x, y, opt), x, y), 1.0);
}

TEST(FitLogistic, InvertedLabelsNegateParameters) {
  Eigen::MatrixXd x;
  Eigen::VectorXd y;
  separable(x, y);
  const auto fit = fit_logistic(x, y);
  const auto inv = fit_logistic(x, Eigen::VectorXd::Ones(y.size()) - y);
  for (Eigen::Index k = 0; k < fit.weights.size(); ++k) {
    EXPECT_NEAR(inv.weights(k), -fit.weights(k), 1e-9);
    EXPECT_NE(std::signbit(inv.weights(k)), std::signbit(fit.weights(k)));
  }
  EXPECT_NEAR(inv.bias, -fit.bias, 1e-9);
}

TEST(FitLogistic, DeterministicForFixedOptions) {
  Eigen::MatrixXd x;
  Eigen::VectorXd y;
  separable(x, y);
  LogisticFitOptions opt;
  opt.batch_size = 5;
  opt.seed = 11;
  const auto a = fit_logistic(x, y, opt);
  const auto b = fit_logistic(x, y, opt);
  EXPECT_EQ(a.weights, b.weights);
  EXPECT_EQ(a.bias, b.bias);
  opt.seed = 12;
  const auto c = fit_logistic(x, y, opt);
  EXPECT_NE(a.weights, c.weights);
}

TEST(FitLogistic, RefusesDegenerateInput) {
  Eigen::MatrixXd x(2, 2);
  x << 0.3, 0.7, 0.3, 0.7;
  Eigen::VectorXd y(2);
  y << 1, 0;
  EXPECT_THROW(fit_logistic(x, y), InvalidArgumentError);
  Eigen::MatrixXd x2(2, 2);
  x2 << 0.1, 0.2, 0.3, 0.4;
  Eigen::VectorXd ones = Eigen::VectorXd::Ones(2);
  EXPECT_THROW(fit_logistic(x2, ones), InvalidArgumentError);
  EXPECT_THROW(fit_logistic(x2, Eigen::VectorXd::Zero(2)), InvalidArgumentError);
  EXPECT_THROW(fit_logistic(x2, Eigen::VectorXd::Zero(3)), InvalidArgumentError);
}

TEST(FitAdvisorWeights, RecoversUsefulModel) {
  std::vector<LabeledFeatures> samples;
  for (int i = 0; i < 40; ++i) {
    const double t = i / 40.0;
    samples.push_back({AdvisorFeatures(0.3 + 0.2 * t, 0.6 + 0.3 * t, 0.3, 1.0), 1});
    samples.push_back({AdvisorFeatures(0.05 * t, 0.1 + 0.2 * t, 0.1 + 0.1 * t, t > 0.5 ? 1.0 : 0.0), 0});
  }
  LogisticFitOptions opt;
  opt.iterations = 3000;
  opt.learning_rate = 1.0;
  AdvisorModel m = fit_advisor_weights(samples, opt);
  for (const auto& s : samples) EXPECT_EQ(m.score(s.features) >= 0.5, s.label == 1);
}

TEST(LabeledPairs, ParseAndWrite) {
  std::istringstream in("# header\na\tb\t1\nbad line\nc\td\t0\ne\tf\t2\n");
  std::vector<Diagnostic> diags;
  auto pairs = parse_labeled_pairs(in, &diags);
  EXPECT_EQ(pairs, (std::vector<LabeledPair>{{"a", "b", 1}, {"c", "d", 0}}));
  ASSERT_EQ(diags.size(), 2u);
  EXPECT_EQ(diags[0].line, 3u);
  EXPECT_EQ(diags[1].line, 5u);
  std::ostringstream out;
  write_labeled_pairs(out, pairs);
  EXPECT_EQ(out.str(), "a\tb\t1\nc\td\t0\n");
}

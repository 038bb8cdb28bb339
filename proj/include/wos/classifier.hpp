#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wos/corpus.hpp"

namespace wos {

/// Numerically stable logistic function.
double logistic(double z);

/// Advisor features, in order: academic-age gap, early-career joint share,
/// joint-year span, advisor-published-first flag. Each lies in [0, 1].
using AdvisorFeatures = Eigen::Vector4d;

/// Linear-logistic advisor scorer: score = logistic(weights . f + bias).
struct AdvisorModel {
  Eigen::Vector4d weights{2.0, 3.0, 1.0, 1.0};
  double bias = -2.5;

  double linear(const AdvisorFeatures& f) const { return weights.dot(f) + bias; }
  double score(const AdvisorFeatures& f) const { return logistic(linear(f)); }
};

struct LogisticFitOptions {
  std::uint64_t seed = 42;
  double learning_rate = 0.1;
  int iterations = 500;
  /// 0 = full batch. Otherwise each iteration is one pass over a seeded
  /// shuffle in chunks of this size.
  std::size_t batch_size = 0;
};

struct LogisticFit {
  Eigen::VectorXd weights;
  double bias = 0.0;
};

/// Gradient descent on mean log-loss from zero-initialized parameters.
/// Rows of `x` are samples; `y` holds 0/1 labels. Throws
/// InvalidArgumentError when labels are all equal or every row is identical.
LogisticFit fit_logistic(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                         const LogisticFitOptions& options = {});

struct LabeledFeatures {
  AdvisorFeatures features;
  int label = 0;
};

AdvisorModel fit_advisor_weights(const std::vector<LabeledFeatures>& samples,
                                 const LogisticFitOptions& options = {});

/// Row of the labeled advisor pairs file: `advisor_id<TAB>advisee_id<TAB>label`.
struct LabeledPair {
  std::string advisor;
  std::string advisee;
  int label = 0;

  bool operator==(const LabeledPair&) const = default;
};

std::vector<LabeledPair> parse_labeled_pairs(std::istream& in,
                                             std::vector<Diagnostic>* diagnostics = nullptr);
void write_labeled_pairs(std::ostream& out, const std::vector<LabeledPair>& pairs);

}  // namespace wos

#include "wos/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "wos/error.hpp"

namespace wos {

double logistic(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

LogisticFit fit_logistic(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                         const LogisticFitOptions& options) {
  const Eigen::Index n = x.rows();
  if (n == 0 || y.size() != n) throw InvalidArgumentError("need one label per sample");
  const double positives = y.sum();
  if (positives <= 0 || positives >= static_cast<double>(n))
    throw InvalidArgumentError("degenerate training set: labels are all " +
                               std::string(positives <= 0 ? "0" : "1"));
  if (((x.rowwise() - x.row(0)).array().abs() == 0).all())
    throw InvalidArgumentError("degenerate training set: all feature vectors are identical");
  if (!(options.learning_rate > 0) || options.iterations < 0)
    throw InvalidArgumentError("learning rate must be positive and iterations non-negative");

  LogisticFit fit{Eigen::VectorXd::Zero(x.cols()), 0.0};
  auto step = [&](const Eigen::MatrixXd& xb, const Eigen::VectorXd& yb) {
    Eigen::VectorXd z = (xb * fit.weights).array() + fit.bias;
    Eigen::VectorXd err = z.unaryExpr([](double v) { return logistic(v); }) - yb;
    const double m = static_cast<double>(xb.rows());
    fit.weights -= options.learning_rate * (xb.transpose() * err) / m;
    fit.bias -= options.learning_rate * err.sum() / m;
  };

  if (options.batch_size == 0 || options.batch_size >= static_cast<std::size_t>(n)) {
    for (int it = 0; it < options.iterations; ++it) step(x, y);
    return fit;
  }

  std::mt19937_64 rng(options.seed);
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  const auto batch = static_cast<Eigen::Index>(options.batch_size);
  for (int it = 0; it < options.iterations; ++it) {
    std::shuffle(order.begin(), order.end(), rng);
    for (Eigen::Index start = 0; start < n; start += batch) {
      const Eigen::Index len = std::min(batch, n - start);
      std::vector<Eigen::Index> idx(order.begin() + start, order.begin() + start + len);
      step(x(idx, Eigen::all), y(idx));
    }
  }
  return fit;
}

AdvisorModel fit_advisor_weights(const std::vector<LabeledFeatures>& samples,
                                 const LogisticFitOptions& options) {
  Eigen::MatrixXd x(static_cast<Eigen::Index>(samples.size()), 4);
  Eigen::VectorXd y(static_cast<Eigen::Index>(samples.size()));
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    x.row(row) = samples[i].features.transpose();
    y(row) = samples[i].label;
  }
  LogisticFit fit = fit_logistic(x, y, options);
  return AdvisorModel{fit.weights, fit.bias};
}

std::vector<LabeledPair> parse_labeled_pairs(std::istream& in, std::vector<Diagnostic>* diagnostics) {
  std::vector<LabeledPair> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cols;
    std::istringstream ss(line);
    for (std::string col; std::getline(ss, col, '\t');) cols.push_back(col);
    if (cols.size() != 3 || cols[0].empty() || cols[1].empty() || (cols[2] != "0" && cols[2] != "1")) {
      if (diagnostics)
        diagnostics->push_back({line_no, "expected advisor_id<TAB>advisee_id<TAB>0|1"});
      continue;
    }
    out.push_back({cols[0], cols[1], cols[2] == "1" ? 1 : 0});
  }
  return out;
}

void write_labeled_pairs(std::ostream& out, const std::vector<LabeledPair>& pairs) {
  for (const auto& p : pairs) out << p.advisor << '\t' << p.advisee << '\t' << p.label << '\n';
}

}  // namespace wos

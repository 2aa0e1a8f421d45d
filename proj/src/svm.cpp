#include "rd/svm.hpp"

#include <cmath>
#include <random>

namespace rd {

namespace {

double rbf(const Eigen::Ref<const RowVectorXd>& a,
           const Eigen::Ref<const RowVectorXd>& b, double gamma) {
  return std::exp(-gamma * (a - b).squaredNorm());
}

}  // namespace

double SvmModel::decision_function(
    const Eigen::Ref<const RowVectorXd>& row) const {
  double sum = bias;
  for (Eigen::Index i = 0; i < support_vectors.rows(); ++i)
    sum += dual_coefficients[i] * rbf(support_vectors.row(i), row, gamma);
  return sum;
}

SvmModel train_svm_rbf(const Dataset& data, const SvmOptions& opts) {
  const int m = static_cast<int>(data.x.rows());
  if (m < 2 || data.y.minCoeff() == data.y.maxCoeff())
    throw SchemaError("train_svm_rbf: need both classes present");
  for (Eigen::Index k = 0; k < data.x.cols(); ++k) {
    double mean = data.x.col(k).mean();
    double sd = std::sqrt((data.x.col(k).array() - mean).square().sum() / m);
    if (sd > 10.0)
      throw SchemaError("train_svm_rbf: column " + std::to_string(k) +
                        " looks unnormalized (std " + std::to_string(sd) + ")");
  }

  VectorXd y(m);
  for (int i = 0; i < m; ++i) y[i] = data.y[i] == 1 ? 1.0 : -1.0;

  // Precomputed kernel: row counts here are small (events, not tweets).
  MatrixXd kernel(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j)
      kernel(i, j) = kernel(j, i) = rbf(data.x.row(i), data.x.row(j), opts.gamma);

  VectorXd alpha = VectorXd::Zero(m);
  double b = 0;
  auto decision = [&](int i) {
    double sum = b;
    for (int j = 0; j < m; ++j)
      if (alpha[j] > 0) sum += alpha[j] * y[j] * kernel(j, i);
    return sum;
  };

  std::int64_t iterations = 0;
  int passes_without_change = 0;
  const double tol = opts.kkt_tol;
  while (passes_without_change < opts.max_passes_without_change) {
    int changed = 0;
    for (int i = 0; i < m; ++i) {
      if (++iterations > opts.max_iterations) {
        int violations = 0;
        double worst = 0;
        for (int v = 0; v < m; ++v) {
          double ev = decision(v) - y[v];
          double r = ev * y[v];
          bool viol = (r < -tol && alpha[v] < opts.c) || (r > tol && alpha[v] > 0);
          if (viol) {
            ++violations;
            worst = std::max(worst, std::abs(r));
          }
        }
        throw NumericError("train_svm_rbf: iteration cap hit with " +
                           std::to_string(violations) +
                           " KKT violations (worst " + std::to_string(worst) +
                           ")");
      }
      double ei = decision(i) - y[i];
      double ri = ei * y[i];
      if (!((ri < -tol && alpha[i] < opts.c) || (ri > tol && alpha[i] > 0)))
        continue;
      // second-choice heuristic: maximize |E_i - E_j|, ties by lowest index
      int j = -1;
      double best_gap = -1;
      for (int cand = 0; cand < m; ++cand) {
        if (cand == i) continue;
        double gap = std::abs(ei - (decision(cand) - y[cand]));
        if (gap > best_gap) {
          best_gap = gap;
          j = cand;
        }
      }
      double ej = decision(j) - y[j];
      double ai_old = alpha[i], aj_old = alpha[j];
      double lo, hi;
      if (y[i] != y[j]) {
        lo = std::max(0.0, aj_old - ai_old);
        hi = std::min(opts.c, opts.c + aj_old - ai_old);
      } else {
        lo = std::max(0.0, ai_old + aj_old - opts.c);
        hi = std::min(opts.c, ai_old + aj_old);
      }
      if (lo >= hi) continue;
      double eta = 2 * kernel(i, j) - kernel(i, i) - kernel(j, j);
      if (eta >= 0) continue;
      double aj = aj_old - y[j] * (ei - ej) / eta;
      aj = std::min(std::max(aj, lo), hi);
      if (std::abs(aj - aj_old) < 1e-7) continue;
      double ai = ai_old + y[i] * y[j] * (aj_old - aj);
      alpha[i] = ai;
      alpha[j] = aj;
      double b1 = b - ei - y[i] * (ai - ai_old) * kernel(i, i) -
                  y[j] * (aj - aj_old) * kernel(i, j);
      double b2 = b - ej - y[i] * (ai - ai_old) * kernel(i, j) -
                  y[j] * (aj - aj_old) * kernel(j, j);
      if (ai > 0 && ai < opts.c)
        b = b1;
      else if (aj > 0 && aj < opts.c)
        b = b2;
      else
        b = (b1 + b2) / 2;
      ++changed;
    }
    passes_without_change = changed == 0 ? passes_without_change + 1 : 0;
  }

  SvmModel model;
  model.gamma = opts.gamma;
  model.c = opts.c;
  model.bias = b;
  std::vector<int> sv;
  for (int i = 0; i < m; ++i)
    if (alpha[i] > 0) sv.push_back(i);
  model.support_vectors.resize(static_cast<Eigen::Index>(sv.size()),
                               data.x.cols());
  model.dual_coefficients.resize(static_cast<Eigen::Index>(sv.size()));
  model.alphas.resize(static_cast<Eigen::Index>(sv.size()));
  for (size_t s = 0; s < sv.size(); ++s) {
    model.support_vectors.row(static_cast<Eigen::Index>(s)) = data.x.row(sv[s]);
    model.dual_coefficients[static_cast<Eigen::Index>(s)] =
        alpha[sv[s]] * y[sv[s]];
    model.alphas[static_cast<Eigen::Index>(s)] = alpha[sv[s]];
  }
  return model;
}

}  // namespace rd

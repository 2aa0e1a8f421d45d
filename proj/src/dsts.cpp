#include "rd/dsts.hpp"

#include <cmath>

namespace rd {

MatrixXd zscore_normalize(const MatrixXd& frames) {
  const Eigen::Index n = frames.rows(), d = frames.cols();
  if (n < 1) throw SchemaError("zscore_normalize: need at least one frame");
  for (Eigen::Index t = 0; t < n; ++t)
    for (Eigen::Index k = 0; k < d; ++k)
      if (!std::isfinite(frames(t, k)))
        throw NumericError("zscore_normalize: non-finite input at (t=" +
                           std::to_string(t) + ", k=" + std::to_string(k) + ")");
  MatrixXd out(n, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    double mean = frames.col(k).mean();
    double var = (frames.col(k).array() - mean).square().sum() / n;
    double sd = std::sqrt(var);
    if (sd == 0) {
      out.col(k).setZero();
    } else {
      out.col(k) = (frames.col(k).array() - mean) / sd;
    }
  }
  return out;
}

MatrixXd slope_block(const MatrixXd& frames, double interval_hours) {
  if (frames.rows() < 2)
    throw SchemaError("slope_block: need at least two frames");
  return (frames.bottomRows(frames.rows() - 1) -
          frames.topRows(frames.rows() - 1)) /
         interval_hours;
}

DstsVector build_dsts_vector(const MatrixXd& frames, double interval_hours,
                             bool normalize) {
  const Eigen::Index n = frames.rows(), d = frames.cols();
  if (n < 1) throw SchemaError("build_dsts_vector: need at least one frame");
  MatrixXd emitted = normalize ? zscore_normalize(frames) : frames;
  // A single frame has no slope block; the vector is just that frame.
  MatrixXd slopes =
      n >= 2 ? slope_block(emitted, interval_hours) : MatrixXd(0, d);
  DstsVector v;
  v.n_intervals = static_cast<int>(n);
  v.n_features = static_cast<int>(d);
  v.values.resize(d * (2 * n - 1));
  Eigen::Index pos = 0;
  for (Eigen::Index t = 0; t < n; ++t)
    for (Eigen::Index k = 0; k < d; ++k) v.values[pos++] = emitted(t, k);
  for (Eigen::Index t = 0; t + 1 < n; ++t)
    for (Eigen::Index k = 0; k < d; ++k) v.values[pos++] = slopes(t, k);
  return v;
}

std::vector<std::string> dsts_column_names(
    const std::vector<std::string>& feature_names, int n_intervals) {
  std::vector<std::string> names;
  names.reserve(feature_names.size() * (2 * n_intervals - 1));
  for (int t = 0; t < n_intervals; ++t)
    for (const auto& f : feature_names)
      names.push_back(f + "@t" + std::to_string(t));
  for (int t = 0; t + 1 < n_intervals; ++t)
    for (const auto& f : feature_names)
      names.push_back("d" + f + "@t" + std::to_string(t));
  return names;
}

}  // namespace rd

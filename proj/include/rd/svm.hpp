#pragma once

#include <cstdint>
#include <vector>

#include "rd/forest.hpp"  // Dataset
#include "rd/types.hpp"

namespace rd {

struct SvmOptions {
  double c = 3.0;
  double gamma = 0.2;
  double kkt_tol = 1e-3;
  int max_passes_without_change = 5;
  std::int64_t max_iterations = 2000000;
  std::uint64_t seed = 1;
};

struct SvmModel {
  MatrixXd support_vectors;      // rows
  VectorXd dual_coefficients;    // alpha_i * y_i, y in {-1,+1}
  VectorXd alphas;               // alpha_i in [0, C]
  double bias = 0;
  double gamma = 0.2;
  double c = 3.0;

  double decision_function(const Eigen::Ref<const RowVectorXd>& row) const;
  int predict(const Eigen::Ref<const RowVectorXd>& row) const {
    return decision_function(row) > 0 ? 1 : 0;
  }
};

// SMO dual optimization with an RBF kernel. Rejects obviously unnormalized
// data (any column std > 10) and single-class data with SchemaError; throws
// NumericError with KKT-violation stats when the iteration cap is hit.
SvmModel train_svm_rbf(const Dataset& data, const SvmOptions& opts = {});

}  // namespace rd

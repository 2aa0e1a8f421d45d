#pragma once

#include <string>
#include <vector>

#include "rd/types.hpp"

namespace rd {

// Per-feature Z-score over the event's own intervals (population std).
// Constant columns map to zeros. Throws NumericError naming (t,k) on
// non-finite input.
MatrixXd zscore_normalize(const MatrixXd& frames);

// Elementwise forward difference divided by the interval length in hours.
// frames is N x D with N >= 2; result is (N-1) x D.
MatrixXd slope_block(const MatrixXd& frames, double interval_hours);

struct DstsVector {
  VectorXd values;  // length D*(2N-1): all frames, then all slopes
  std::string event_id;
  int n_intervals = 0;
  int n_features = 0;
  int prefix_hours = 0;
};

// Z-score (unless normalize=false, the tree-model path), slopes on the
// emitted frames, then concatenation in layout [frames | slopes].
DstsVector build_dsts_vector(const MatrixXd& frames, double interval_hours,
                             bool normalize);

// Column names <feature>@t<i> then d<feature>@t<i> for the declared layout.
std::vector<std::string> dsts_column_names(
    const std::vector<std::string>& feature_names, int n_intervals);

}  // namespace rd

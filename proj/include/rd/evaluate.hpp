#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "rd/forest.hpp"
#include "rd/svm.hpp"

namespace rd {

enum class ModelKind { kRandomForest, kSvm };

inline std::string model_kind_name(ModelKind k) {
  return k == ModelKind::kRandomForest ? "rf" : "svm";
}

struct ClassifierOptions {
  ForestOptions forest;
  SvmOptions svm;
};

struct ConfusionMatrix {
  std::int64_t tp = 0, tn = 0, fp = 0, fn = 0;
  double accuracy() const {
    std::int64_t total = tp + tn + fp + fn;
    return total > 0 ? double(tp + tn) / total : 0.0;
  }
};

struct FoldMetrics {
  int fold = 0;
  ConfusionMatrix confusion;
};

struct CvReport {
  std::vector<FoldMetrics> folds;
  double mean_accuracy = 0;
  double std_accuracy = 0;
  double pooled_accuracy = 0;  // over pooled test predictions
};

// Stratified shuffle of rows into n_folds near-balanced folds.
// Returns fold index per row.
std::vector<int> stratified_folds(const VectorXi& labels, int n_folds,
                                  std::uint64_t seed);

// Per-fold retraining; rows are events, so event data never crosses folds.
// Throws SchemaError when a class has fewer rows than n_folds.
CvReport cross_validate(const Dataset& data, ModelKind kind,
                        const ClassifierOptions& opts, std::uint64_t seed,
                        int n_folds = 10);

using PredictFn = std::function<int(const Eigen::Ref<const RowVectorXd>&)>;

struct ImportanceEntry {
  std::string name;
  double importance = 0;  // mean held-out accuracy drop
};

// Shuffles all columns of each named group together, n_repeats times.
// Result sorted by importance descending, ties by name.
std::vector<ImportanceEntry> permutation_importance(
    const PredictFn& predict, const Dataset& held_out,
    const std::map<std::string, std::vector<int>>& groups, int n_repeats,
    std::uint64_t seed);

struct TimedCell {
  std::string model;
  std::string feature_group;
  int hour = 0;
  CvReport report;
};

// Per-hour, per-model, per-feature-group cross-validation over prefix-hour
// datasets. group_columns maps group name -> column subset of the hour's
// dataset (resolved per hour by the caller-provided resolver).
using GroupResolver = std::function<std::map<std::string, std::vector<int>>(
    const Dataset& hour_data)>;

std::vector<TimedCell> accuracy_over_time(
    const std::map<int, Dataset>& per_hour,
    const std::vector<ModelKind>& model_kinds,
    const std::vector<std::string>& feature_groups,
    const GroupResolver& resolver, const ClassifierOptions& opts,
    std::uint64_t seed);

}  // namespace rd

#include "rd/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <random>

namespace rd {

std::vector<int> stratified_folds(const VectorXi& labels, int n_folds,
                                  std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<int> fold(labels.size(), -1);
  for (int cls : {0, 1}) {
    std::vector<int> idx;
    for (Eigen::Index i = 0; i < labels.size(); ++i)
      if (labels[i] == cls) idx.push_back(static_cast<int>(i));
    std::shuffle(idx.begin(), idx.end(), rng);
    for (size_t j = 0; j < idx.size(); ++j)
      fold[idx[j]] = static_cast<int>(j % n_folds);
  }
  return fold;
}

namespace {

Dataset subset(const Dataset& data, const std::vector<int>& rows) {
  Dataset out;
  out.feature_names = data.feature_names;
  out.x.resize(static_cast<Eigen::Index>(rows.size()), data.x.cols());
  out.y.resize(static_cast<Eigen::Index>(rows.size()));
  for (size_t i = 0; i < rows.size(); ++i) {
    out.x.row(static_cast<Eigen::Index>(i)) = data.x.row(rows[i]);
    out.y[static_cast<Eigen::Index>(i)] = data.y[rows[i]];
    if (!data.event_ids.empty()) out.event_ids.push_back(data.event_ids[rows[i]]);
  }
  return out;
}

PredictFn train_model(const Dataset& train, ModelKind kind,
                      const ClassifierOptions& opts, std::uint64_t seed) {
  if (kind == ModelKind::kRandomForest) {
    ForestOptions fo = opts.forest;
    fo.seed = seed;
    auto model = std::make_shared<ForestModel>(train_random_forest(train, fo));
    return [model](const Eigen::Ref<const RowVectorXd>& row) {
      return model->predict(row);
    };
  }
  SvmOptions so = opts.svm;
  so.seed = seed;
  auto model = std::make_shared<SvmModel>(train_svm_rbf(train, so));
  return [model](const Eigen::Ref<const RowVectorXd>& row) {
    return model->predict(row);
  };
}

}  // namespace

CvReport cross_validate(const Dataset& data, ModelKind kind,
                        const ClassifierOptions& opts, std::uint64_t seed,
                        int n_folds) {
  for (int cls : {0, 1}) {
    int count = 0;
    for (Eigen::Index i = 0; i < data.y.size(); ++i)
      if (data.y[i] == cls) ++count;
    if (count < n_folds)
      throw SchemaError("cross_validate: class " + std::to_string(cls) +
                        " has fewer events than folds");
  }
  std::vector<int> fold = stratified_folds(data.y, n_folds, seed);
  CvReport report;
  std::int64_t pooled_correct = 0;
  std::vector<double> accs;
  for (int f = 0; f < n_folds; ++f) {
    std::vector<int> train_rows, test_rows;
    for (Eigen::Index i = 0; i < data.y.size(); ++i)
      (fold[i] == f ? test_rows : train_rows).push_back(static_cast<int>(i));
    Dataset train = subset(data, train_rows);
    Dataset test = subset(data, test_rows);
    PredictFn predict = train_model(train, kind, opts, seed + f);
    FoldMetrics fm;
    fm.fold = f;
    for (Eigen::Index i = 0; i < test.y.size(); ++i) {
      int pred = predict(test.x.row(i));
      if (test.y[i] == 1) {
        pred == 1 ? ++fm.confusion.tp : ++fm.confusion.fn;
      } else {
        pred == 0 ? ++fm.confusion.tn : ++fm.confusion.fp;
      }
    }
    pooled_correct += fm.confusion.tp + fm.confusion.tn;
    accs.push_back(fm.confusion.accuracy());
    report.folds.push_back(fm);
  }
  report.mean_accuracy =
      std::accumulate(accs.begin(), accs.end(), 0.0) / accs.size();
  double var = 0;
  for (double a : accs) var += (a - report.mean_accuracy) * (a - report.mean_accuracy);
  report.std_accuracy = std::sqrt(var / accs.size());
  report.pooled_accuracy =
      static_cast<double>(pooled_correct) / static_cast<double>(data.y.size());
  return report;
}

std::vector<ImportanceEntry> permutation_importance(
    const PredictFn& predict, const Dataset& held_out,
    const std::map<std::string, std::vector<int>>& groups, int n_repeats,
    std::uint64_t seed) {
  const Eigen::Index m = held_out.x.rows();
  auto accuracy_of = [&](const MatrixXd& x) {
    std::int64_t correct = 0;
    for (Eigen::Index i = 0; i < m; ++i)
      if (predict(x.row(i)) == held_out.y[i]) ++correct;
    return static_cast<double>(correct) / static_cast<double>(m);
  };
  const double baseline = accuracy_of(held_out.x);
  std::vector<ImportanceEntry> out;
  for (const auto& [name, cols] : groups) {
    std::mt19937_64 rng(seed ^ std::hash<std::string>{}(name));
    double drop_sum = 0;
    for (int r = 0; r < n_repeats; ++r) {
      std::vector<int> perm(m);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      MatrixXd shuffled = held_out.x;  // all group columns share one permutation
      for (int c : cols)
        for (Eigen::Index i = 0; i < m; ++i)
          shuffled(i, c) = held_out.x(perm[i], c);
      drop_sum += baseline - accuracy_of(shuffled);
    }
    out.push_back(ImportanceEntry{name, drop_sum / n_repeats});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.importance != b.importance) return a.importance > b.importance;
    return a.name < b.name;
  });
  return out;
}

std::vector<TimedCell> accuracy_over_time(
    const std::map<int, Dataset>& per_hour,
    const std::vector<ModelKind>& model_kinds,
    const std::vector<std::string>& feature_groups,
    const GroupResolver& resolver, const ClassifierOptions& opts,
    std::uint64_t seed) {
  std::vector<TimedCell> cells;
  for (const auto& [hour, data] : per_hour) {
    auto groups = resolver(data);
    for (ModelKind kind : model_kinds) {
      for (const auto& group : feature_groups) {
        Dataset view;
        if (group == "All") {
          view = data;
        } else {
          auto it = groups.find(group);
          if (it == groups.end())
            throw ConfigError("accuracy_over_time: unknown feature group '" +
                              group + "'");
          const auto& cols = it->second;
          view.y = data.y;
          view.event_ids = data.event_ids;
          view.x.resize(data.x.rows(), static_cast<Eigen::Index>(cols.size()));
          for (size_t c = 0; c < cols.size(); ++c) {
            view.x.col(static_cast<Eigen::Index>(c)) = data.x.col(cols[c]);
            view.feature_names.push_back(data.feature_names[cols[c]]);
          }
        }
        TimedCell cell;
        cell.model = model_kind_name(kind);
        cell.feature_group = group;
        cell.hour = hour;
        cell.report = cross_validate(view, kind, opts, seed);
        cells.push_back(std::move(cell));
      }
    }
  }
  return cells;
}

}  // namespace rd

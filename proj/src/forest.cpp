#include "rd/forest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace rd {

namespace {

struct TreeBuilder {
  const MatrixXd& x;
  const VectorXi& y;
  int features_per_node;
  int min_leaf;
  std::mt19937_64 rng;
  std::vector<TreeNode> nodes;

  int majority(const std::vector<int>& idx) const {
    int pos = 0;
    for (int i : idx) pos += y[i];
    int neg = static_cast<int>(idx.size()) - pos;
    if (pos == neg) return y[idx.front()];  // deterministic tie-break
    return pos > neg ? 1 : 0;
  }

  int build(std::vector<int>& idx) {
    int node_id = static_cast<int>(nodes.size());
    nodes.emplace_back();
    int pos = 0;
    for (int i : idx) pos += y[i];
    int n = static_cast<int>(idx.size());
    if (pos == 0 || pos == n || n <= min_leaf) {
      nodes[node_id].label = majority(idx);
      return node_id;
    }

    // sample candidate features without replacement
    const int p = static_cast<int>(x.cols());
    std::vector<int> candidates(p);
    std::iota(candidates.begin(), candidates.end(), 0);
    for (int j = 0; j < features_per_node && j < p; ++j) {
      std::uniform_int_distribution<int> pick(j, p - 1);
      std::swap(candidates[j], candidates[pick(rng)]);
    }

    double best_gini = std::numeric_limits<double>::infinity();
    int best_feature = -1;
    double best_threshold = 0;
    std::vector<std::pair<double, int>> vals(n);
    for (int j = 0; j < features_per_node && j < p; ++j) {
      int f = candidates[j];
      for (int i = 0; i < n; ++i) vals[i] = {x(idx[i], f), y[idx[i]]};
      std::sort(vals.begin(), vals.end());
      int left_n = 0, left_pos = 0;
      for (int i = 0; i + 1 < n; ++i) {
        ++left_n;
        left_pos += vals[i].second;
        if (vals[i].first == vals[i + 1].first) continue;
        int right_n = n - left_n;
        int right_pos = pos - left_pos;
        double gl = 1.0 - (double(left_pos) / left_n) * (double(left_pos) / left_n) -
                    (double(left_n - left_pos) / left_n) *
                        (double(left_n - left_pos) / left_n);
        double gr = 1.0 -
                    (double(right_pos) / right_n) * (double(right_pos) / right_n) -
                    (double(right_n - right_pos) / right_n) *
                        (double(right_n - right_pos) / right_n);
        double weighted = (left_n * gl + right_n * gr) / n;
        if (weighted < best_gini) {
          best_gini = weighted;
          best_feature = f;
          best_threshold = (vals[i].first + vals[i + 1].first) / 2;
        }
      }
    }
    if (best_feature < 0) {
      nodes[node_id].label = majority(idx);
      return node_id;
    }
    std::vector<int> left_idx, right_idx;
    for (int i : idx) {
      (x(i, best_feature) <= best_threshold ? left_idx : right_idx).push_back(i);
    }
    if (left_idx.empty() || right_idx.empty()) {
      nodes[node_id].label = majority(idx);
      return node_id;
    }
    nodes[node_id].feature = best_feature;
    nodes[node_id].threshold = best_threshold;
    int l = build(left_idx);
    int r = build(right_idx);
    nodes[node_id].left = l;
    nodes[node_id].right = r;
    return node_id;
  }
};

}  // namespace

int DecisionTree::predict(const Eigen::Ref<const RowVectorXd>& row) const {
  int n = 0;
  while (nodes[n].feature >= 0)
    n = row[nodes[n].feature] <= nodes[n].threshold ? nodes[n].left
                                                    : nodes[n].right;
  return nodes[n].label;
}

double ForestModel::predict_prob(const Eigen::Ref<const RowVectorXd>& row) const {
  int votes = 0;
  for (const auto& tree : trees) votes += tree.predict(row);
  return static_cast<double>(votes) / static_cast<double>(trees.size());
}

ForestModel train_random_forest(const Dataset& data, const ForestOptions& opts) {
  const int m = static_cast<int>(data.x.rows());
  const int p = static_cast<int>(data.x.cols());
  if (m < 2 || data.y.minCoeff() == data.y.maxCoeff())
    throw SchemaError("train_random_forest: need both classes present");
  int fpn = opts.features_per_node > 0
                ? opts.features_per_node
                : std::max(1, static_cast<int>(std::sqrt(double(p))));
  ForestModel model;
  model.trees.resize(opts.n_trees);
  model.tree_seeds.resize(opts.n_trees);
  std::mt19937_64 master(opts.seed);
  std::vector<std::vector<int>> oob_votes(m);  // per-sample tree votes
  for (int t = 0; t < opts.n_trees; ++t) {
    model.tree_seeds[t] = master();
    std::mt19937_64 rng(model.tree_seeds[t]);
    std::uniform_int_distribution<int> pick(0, m - 1);
    std::vector<int> idx(m);
    std::vector<char> in_bag(m, 0);
    for (int i = 0; i < m; ++i) {
      idx[i] = pick(rng);
      in_bag[idx[i]] = 1;
    }
    int pos = 0;
    for (int i : idx) pos += data.y[i];
    if (pos == 0 || pos == m) {
      // degenerate bootstrap: leaf-only tree on the bag majority
      TreeBuilder tb{data.x, data.y, fpn, opts.min_leaf, rng, {}};
      tb.nodes.emplace_back();
      tb.nodes[0].label = pos > 0 ? 1 : 0;
      model.trees[t].nodes = std::move(tb.nodes);
    } else {
      TreeBuilder tb{data.x, data.y, fpn, opts.min_leaf, std::move(rng), {}};
      tb.build(idx);
      model.trees[t].nodes = std::move(tb.nodes);
    }
    for (int i = 0; i < m; ++i)
      if (!in_bag[i]) oob_votes[i].push_back(model.trees[t].predict(data.x.row(i)));
  }
  int scored = 0, correct = 0;
  for (int i = 0; i < m; ++i) {
    if (oob_votes[i].empty()) continue;
    int votes = std::accumulate(oob_votes[i].begin(), oob_votes[i].end(), 0);
    int pred = 2 * votes > static_cast<int>(oob_votes[i].size()) ? 1 : 0;
    ++scored;
    if (pred == data.y[i]) ++correct;
  }
  model.oob_accuracy = scored > 0 ? double(correct) / scored : 0.0;
  return model;
}

}  // namespace rd

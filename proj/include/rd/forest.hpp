#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rd/types.hpp"

namespace rd {

// Rows are events (at one prefix hour), labels rumor=1, news=0.
struct Dataset {
  MatrixXd x;
  VectorXi y;
  std::vector<std::string> event_ids;
  std::vector<std::string> feature_names;
};

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0;
  int left = -1, right = -1;
  int label = 0;  // leaf majority label
};

struct DecisionTree {
  std::vector<TreeNode> nodes;
  int predict(const Eigen::Ref<const RowVectorXd>& row) const;
};

struct ForestOptions {
  int n_trees = 350;
  std::uint64_t seed = 1;
  int min_leaf = 1;
  // feature subsample per node; <=0 means floor(sqrt(P))
  int features_per_node = 0;
};

struct ForestModel {
  std::vector<DecisionTree> trees;
  std::vector<std::uint64_t> tree_seeds;
  double oob_accuracy = 0;

  // Fraction of trees voting rumor.
  double predict_prob(const Eigen::Ref<const RowVectorXd>& row) const;
  int predict(const Eigen::Ref<const RowVectorXd>& row) const {
    return predict_prob(row) > 0.5 ? 1 : 0;
  }
};

// CART with Gini impurity, bootstrap per tree, full depth.
// Throws SchemaError on single-class data.
ForestModel train_random_forest(const Dataset& data,
                                const ForestOptions& opts = {});

}  // namespace rd

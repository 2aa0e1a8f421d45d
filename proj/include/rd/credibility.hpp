#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "rd/tweet.hpp"
#include "rd/types.hpp"

namespace rd {

struct Vocabulary {
  static constexpr int kPad = 0;
  static constexpr int kUnknown = 1;

  std::unordered_map<std::string, int> token_ids;
  std::vector<std::string> tokens_by_id;  // index 0/1 reserved, empty strings

  int size() const { return static_cast<int>(tokens_by_id.size()); }
  int id(const std::string& token) const {
    auto it = token_ids.find(token);
    return it == token_ids.end() ? kUnknown : it->second;
  }
};

// Tokens with frequency >= min_count get ids ordered by frequency descending,
// ties lexicographic. Throws SchemaError on an empty corpus.
Vocabulary build_vocabulary(const std::vector<std::string>& corpus,
                            int min_count = 1);

struct CredibilityHyper {
  int embed_dim = 50;     // k
  int filter_width = 3;   // h
  int num_filters = 64;   // F
  int hidden_dim = 100;   // LSTM d
  int seq_len = 40;       // L
  int pool_width = 2;     // non-overlapping max pooling over time
  double dropout_rate = 0.25;
  double learning_rate = 0.05;
  int batch_size = 32;
  int epochs = 30;
  std::uint64_t seed = 1;
};

// Token id sequence of fixed length L.
using TweetEncoding = std::vector<int>;

TweetEncoding tokenize_and_pad(const std::string& text, const Vocabulary& vocab,
                               int seq_len);

struct CredibilityPrediction {
  double p_rumor = 0.5;
  double p_news = 0.5;
};

struct CredibilityModel {
  CredibilityHyper hyper;
  Vocabulary vocab;
  MatrixXd embedding;  // V x k
  MatrixXd conv_w;     // F x (h*k)
  VectorXd conv_b;     // F
  MatrixXd lstm_w;     // 4d x (F+d), gate order [input; forget; output; cand]
  VectorXd lstm_b;     // 4d
  MatrixXd softmax_w;  // 2 x d, class order [rumor, news]
  VectorXd softmax_b;  // 2

  int pooled_steps() const {
    return (hyper.seq_len - hyper.filter_width + 1) / hyper.pool_width;
  }
};

// Seeded uniform init in [-0.05, 0.05].
CredibilityModel init_model(const CredibilityHyper& hyper,
                            const Vocabulary& vocab);

// Inference path, no dropout.
CredibilityPrediction forward(const CredibilityModel& model,
                              const TweetEncoding& enc);

// -log p(true label), clamped at 1e-12.
double cross_entropy_loss(const CredibilityPrediction& pred, Label label);

struct CredibilityGradients {
  MatrixXd embedding;
  MatrixXd conv_w;
  VectorXd conv_b;
  MatrixXd lstm_w;
  VectorXd lstm_b;
  MatrixXd softmax_w;
  VectorXd softmax_b;

  void set_zero(const CredibilityModel& m);
  void accumulate(const CredibilityGradients& other, double scale);
};

// Full forward + hand-derived backprop. dropout_mask, when non-null, is an
// inverted-dropout mask applied to the final LSTM hidden state.
double forward_backward(const CredibilityModel& model, const TweetEncoding& enc,
                        Label label, CredibilityGradients& grads,
                        const VectorXd* dropout_mask = nullptr);

struct TrainLog {
  std::vector<double> epoch_loss;
};

// Mini-batch SGD. Throws SchemaError when only one class is present and
// NumericError (with the epoch index) on divergence.
CredibilityModel train_credibility(
    const std::vector<std::pair<std::string, Label>>& dataset,
    const CredibilityHyper& hyper, TrainLog* log = nullptr);

// Max relative analytic-vs-central-difference error over all parameter groups.
double gradient_check(const CredibilityModel& model, const TweetEncoding& enc,
                      Label label, double epsilon = 1e-5);

// Versioned binary container; round-trip is bit-exact.
void save_model(const CredibilityModel& model, const std::string& path);
CredibilityModel load_model(const std::string& path);

}  // namespace rd

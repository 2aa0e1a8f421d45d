#include "rd/credibility.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <random>

#include "rd/features.hpp"

namespace rd {

namespace {

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

struct ForwardCache {
  std::vector<int> ids;
  MatrixXd windows;     // (h*k) x M
  MatrixXd conv_out;    // F x M, tanh applied
  MatrixXd pooled;      // F x T
  Eigen::MatrixXi argmax;  // F x T, column index into conv_out
  MatrixXd gate_i, gate_f, gate_o, gate_g;  // d x T
  MatrixXd cell, hidden;                    // d x T
  VectorXd hidden_dropped;                  // d
  VectorXd probs;                           // 2
};

void run_forward(const CredibilityModel& m, const TweetEncoding& enc,
                 const VectorXd* dropout_mask, ForwardCache& cache) {
  const auto& hp = m.hyper;
  const int L = hp.seq_len, h = hp.filter_width, k = hp.embed_dim;
  const int F = hp.num_filters, d = hp.hidden_dim;
  const int M = L - h + 1;
  const int T = M / hp.pool_width;
  if (static_cast<int>(enc.size()) != L)
    throw SchemaError("forward: encoding length mismatch");

  cache.ids = enc;
  cache.windows.resize(h * k, M);
  for (int i = 0; i < M; ++i) {
    for (int r = 0; r < h; ++r)
      cache.windows.block(r * k, i, k, 1) =
          m.embedding.row(enc[i + r]).transpose();
  }
  cache.conv_out =
      ((m.conv_w * cache.windows).colwise() + m.conv_b).array().tanh();
  if (!cache.conv_out.allFinite())
    throw NumericError("forward: non-finite activation in convolution layer");

  cache.pooled.resize(F, T);
  cache.argmax.resize(F, T);
  for (int j = 0; j < T; ++j) {
    for (int f = 0; f < F; ++f) {
      int base = j * hp.pool_width;
      int arg = base;
      double best = cache.conv_out(f, base);
      for (int w = 1; w < hp.pool_width; ++w) {
        if (cache.conv_out(f, base + w) > best) {
          best = cache.conv_out(f, base + w);
          arg = base + w;
        }
      }
      cache.pooled(f, j) = best;
      cache.argmax(f, j) = arg;
    }
  }

  cache.gate_i.resize(d, T);
  cache.gate_f.resize(d, T);
  cache.gate_o.resize(d, T);
  cache.gate_g.resize(d, T);
  cache.cell.resize(d, T);
  cache.hidden.resize(d, T);
  VectorXd h_prev = VectorXd::Zero(d), c_prev = VectorXd::Zero(d);
  VectorXd zin(F + d);
  for (int t = 0; t < T; ++t) {
    zin.head(F) = cache.pooled.col(t);
    zin.tail(d) = h_prev;
    VectorXd z = m.lstm_w * zin + m.lstm_b;
    for (int u = 0; u < d; ++u) {
      cache.gate_i(u, t) = sigmoid(z[u]);
      cache.gate_f(u, t) = sigmoid(z[d + u]);
      cache.gate_o(u, t) = sigmoid(z[2 * d + u]);
      cache.gate_g(u, t) = std::tanh(z[3 * d + u]);
    }
    cache.cell.col(t) = cache.gate_f.col(t).cwiseProduct(c_prev) +
                        cache.gate_i.col(t).cwiseProduct(cache.gate_g.col(t));
    cache.hidden.col(t) = cache.gate_o.col(t).cwiseProduct(
        cache.cell.col(t).array().tanh().matrix());
    h_prev = cache.hidden.col(t);
    c_prev = cache.cell.col(t);
  }
  if (!h_prev.allFinite())
    throw NumericError("forward: non-finite activation in LSTM layer");

  cache.hidden_dropped =
      dropout_mask ? h_prev.cwiseProduct(*dropout_mask) : h_prev;
  VectorXd logits = m.softmax_w * cache.hidden_dropped + m.softmax_b;
  double mx = logits.maxCoeff();
  VectorXd ex = (logits.array() - mx).exp();
  cache.probs = ex / ex.sum();
  if (!cache.probs.allFinite())
    throw NumericError("forward: non-finite activation in softmax layer");
}

}  // namespace

Vocabulary build_vocabulary(const std::vector<std::string>& corpus,
                            int min_count) {
  if (corpus.empty()) throw SchemaError("build_vocabulary: empty corpus");
  std::map<std::string, std::int64_t> freq;
  for (const auto& text : corpus)
    for (const auto& tok : tokenize(text)) ++freq[tok];
  std::vector<std::pair<std::string, std::int64_t>> kept;
  for (const auto& [tok, n] : freq)
    if (n >= min_count) kept.emplace_back(tok, n);
  std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  Vocabulary v;
  v.tokens_by_id.resize(2);  // pad, unknown
  for (const auto& [tok, n] : kept) {
    v.token_ids[tok] = static_cast<int>(v.tokens_by_id.size());
    v.tokens_by_id.push_back(tok);
  }
  return v;
}

TweetEncoding tokenize_and_pad(const std::string& text, const Vocabulary& vocab,
                               int seq_len) {
  if (seq_len < 1) throw SchemaError("tokenize_and_pad: seq_len must be >= 1");
  TweetEncoding enc(seq_len, Vocabulary::kPad);
  auto tokens = tokenize(text);
  for (int i = 0; i < seq_len && i < static_cast<int>(tokens.size()); ++i)
    enc[i] = vocab.id(tokens[i]);
  return enc;
}

CredibilityModel init_model(const CredibilityHyper& hyper,
                            const Vocabulary& vocab) {
  CredibilityModel m;
  m.hyper = hyper;
  m.vocab = vocab;
  std::mt19937_64 rng(hyper.seed);
  // Embeddings use the classic small uniform range; weight matrices use
  // fan-scaled uniform init so the signal survives the four-layer stack
  // (flat +-0.05 everywhere attenuates activations below trainability).
  auto fill = [&](auto& mat, double limit) {
    std::uniform_real_distribution<double> u(-limit, limit);
    for (Eigen::Index i = 0; i < mat.rows(); ++i)
      for (Eigen::Index j = 0; j < mat.cols(); ++j) mat(i, j) = u(rng);
  };
  auto glorot = [](Eigen::Index fan_in, Eigen::Index fan_out) {
    return std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  };
  const int V = vocab.size(), k = hyper.embed_dim, F = hyper.num_filters;
  const int d = hyper.hidden_dim, h = hyper.filter_width;
  m.embedding.resize(V, k);
  m.conv_w.resize(F, h * k);
  m.conv_b = VectorXd::Zero(F);
  m.lstm_w.resize(4 * d, F + d);
  // Forget-gate bias starts at 1 so early-sequence signal survives the
  // trailing padding steps to the final hidden state.
  m.lstm_b = VectorXd::Zero(4 * d);
  m.lstm_b.segment(d, d).setOnes();
  m.softmax_w.resize(2, d);
  m.softmax_b = VectorXd::Zero(2);
  fill(m.embedding, 0.05);
  fill(m.conv_w, glorot(h * k, F));
  fill(m.lstm_w, glorot(F + d, d));
  fill(m.softmax_w, glorot(d, 2));
  return m;
}

CredibilityPrediction forward(const CredibilityModel& model,
                              const TweetEncoding& enc) {
  ForwardCache cache;
  run_forward(model, enc, nullptr, cache);
  return CredibilityPrediction{cache.probs[0], cache.probs[1]};
}

double cross_entropy_loss(const CredibilityPrediction& pred, Label label) {
  double p = label == Label::kRumor ? pred.p_rumor : pred.p_news;
  return -std::log(std::max(p, 1e-12));
}

void CredibilityGradients::set_zero(const CredibilityModel& m) {
  embedding = MatrixXd::Zero(m.embedding.rows(), m.embedding.cols());
  conv_w = MatrixXd::Zero(m.conv_w.rows(), m.conv_w.cols());
  conv_b = VectorXd::Zero(m.conv_b.size());
  lstm_w = MatrixXd::Zero(m.lstm_w.rows(), m.lstm_w.cols());
  lstm_b = VectorXd::Zero(m.lstm_b.size());
  softmax_w = MatrixXd::Zero(m.softmax_w.rows(), m.softmax_w.cols());
  softmax_b = VectorXd::Zero(m.softmax_b.size());
}

void CredibilityGradients::accumulate(const CredibilityGradients& other,
                                      double scale) {
  embedding += scale * other.embedding;
  conv_w += scale * other.conv_w;
  conv_b += scale * other.conv_b;
  lstm_w += scale * other.lstm_w;
  lstm_b += scale * other.lstm_b;
  softmax_w += scale * other.softmax_w;
  softmax_b += scale * other.softmax_b;
}

double forward_backward(const CredibilityModel& m, const TweetEncoding& enc,
                        Label label, CredibilityGradients& grads,
                        const VectorXd* dropout_mask) {
  ForwardCache cache;
  run_forward(m, enc, dropout_mask, cache);
  const auto& hp = m.hyper;
  const int k = hp.embed_dim, F = hp.num_filters, d = hp.hidden_dim;
  const int M = hp.seq_len - hp.filter_width + 1;
  const int T = M / hp.pool_width;

  grads.set_zero(m);
  double p_true = label == Label::kRumor ? cache.probs[0] : cache.probs[1];
  double loss = -std::log(std::max(p_true, 1e-12));

  VectorXd dlogits = cache.probs;
  dlogits[label == Label::kRumor ? 0 : 1] -= 1.0;
  grads.softmax_w = dlogits * cache.hidden_dropped.transpose();
  grads.softmax_b = dlogits;
  VectorXd dh_dropped = m.softmax_w.transpose() * dlogits;
  VectorXd dh = dropout_mask ? dh_dropped.cwiseProduct(*dropout_mask).eval()
                             : dh_dropped;

  MatrixXd dpooled = MatrixXd::Zero(F, T);
  VectorXd dc = VectorXd::Zero(d);
  VectorXd zin(F + d);
  for (int t = T - 1; t >= 0; --t) {
    VectorXd c_prev =
        t > 0 ? VectorXd(cache.cell.col(t - 1)) : VectorXd(VectorXd::Zero(d));
    VectorXd h_prev =
        t > 0 ? VectorXd(cache.hidden.col(t - 1)) : VectorXd(VectorXd::Zero(d));
    VectorXd tc = cache.cell.col(t).array().tanh();
    VectorXd o = cache.gate_o.col(t), i = cache.gate_i.col(t);
    VectorXd f = cache.gate_f.col(t), g = cache.gate_g.col(t);
    VectorXd do_ = dh.cwiseProduct(tc);
    dc += dh.cwiseProduct(o).cwiseProduct(
        (1.0 - tc.array().square()).matrix());
    VectorXd di = dc.cwiseProduct(g);
    VectorXd dg = dc.cwiseProduct(i);
    VectorXd df = dc.cwiseProduct(c_prev);
    VectorXd dz(4 * d);
    dz.segment(0, d) = di.cwiseProduct(i).cwiseProduct((1.0 - i.array()).matrix());
    dz.segment(d, d) = df.cwiseProduct(f).cwiseProduct((1.0 - f.array()).matrix());
    dz.segment(2 * d, d) =
        do_.cwiseProduct(o).cwiseProduct((1.0 - o.array()).matrix());
    dz.segment(3 * d, d) = dg.cwiseProduct((1.0 - g.array().square()).matrix());
    zin.head(F) = cache.pooled.col(t);
    zin.tail(d) = h_prev;
    grads.lstm_w += dz * zin.transpose();
    grads.lstm_b += dz;
    VectorXd din = m.lstm_w.transpose() * dz;
    dpooled.col(t) = din.head(F);
    dh = din.tail(d);
    dc = dc.cwiseProduct(f);
  }

  MatrixXd dconv = MatrixXd::Zero(F, M);
  for (int t = 0; t < T; ++t)
    for (int f = 0; f < F; ++f) dconv(f, cache.argmax(f, t)) += dpooled(f, t);
  MatrixXd da = dconv.cwiseProduct(
      (1.0 - cache.conv_out.array().square()).matrix());
  grads.conv_w = da * cache.windows.transpose();
  grads.conv_b = da.rowwise().sum();
  MatrixXd dwin = m.conv_w.transpose() * da;  // (h*k) x M
  for (int i2 = 0; i2 < M; ++i2)
    for (int r = 0; r < hp.filter_width; ++r)
      grads.embedding.row(cache.ids[i2 + r]) +=
          dwin.block(r * k, i2, k, 1).transpose();
  return loss;
}

CredibilityModel train_credibility(
    const std::vector<std::pair<std::string, Label>>& dataset,
    const CredibilityHyper& hyper, TrainLog* log) {
  bool has_rumor = false, has_news = false;
  for (const auto& [text, label] : dataset) {
    (label == Label::kRumor ? has_rumor : has_news) = true;
  }
  if (!has_rumor || !has_news)
    throw SchemaError("train_credibility: both labels must be present");

  std::vector<std::string> corpus;
  corpus.reserve(dataset.size());
  for (const auto& [text, label] : dataset) corpus.push_back(text);
  Vocabulary vocab = build_vocabulary(corpus, 1);
  CredibilityModel model = init_model(hyper, vocab);

  std::vector<TweetEncoding> encodings;
  encodings.reserve(dataset.size());
  for (const auto& [text, label] : dataset)
    encodings.push_back(tokenize_and_pad(text, vocab, hyper.seq_len));

  std::mt19937_64 rng(hyper.seed ^ 0x7261696e);
  std::vector<size_t> order(dataset.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::bernoulli_distribution keep(1.0 - hyper.dropout_rate);
  const double inv_keep = 1.0 / (1.0 - hyper.dropout_rate);

  CredibilityGradients batch_grads, sample_grads;
  for (int epoch = 0; epoch < hyper.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double epoch_loss = 0;
    for (size_t b = 0; b < order.size(); b += hyper.batch_size) {
      size_t bend = std::min(order.size(), b + hyper.batch_size);
      batch_grads.set_zero(model);
      for (size_t s = b; s < bend; ++s) {
        VectorXd mask(hyper.hidden_dim);
        for (int u = 0; u < hyper.hidden_dim; ++u)
          mask[u] = keep(rng) ? inv_keep : 0.0;
        epoch_loss += forward_backward(model, encodings[order[s]],
                                       dataset[order[s]].second, sample_grads,
                                       hyper.dropout_rate > 0 ? &mask : nullptr);
        batch_grads.accumulate(sample_grads, 1.0 / (bend - b));
      }
      const double lr = hyper.learning_rate;
      model.embedding -= lr * batch_grads.embedding;
      model.conv_w -= lr * batch_grads.conv_w;
      model.conv_b -= lr * batch_grads.conv_b;
      model.lstm_w -= lr * batch_grads.lstm_w;
      model.lstm_b -= lr * batch_grads.lstm_b;
      model.softmax_w -= lr * batch_grads.softmax_w;
      model.softmax_b -= lr * batch_grads.softmax_b;
    }
    epoch_loss /= static_cast<double>(dataset.size());
    if (!std::isfinite(epoch_loss))
      throw NumericError("train_credibility: loss diverged at epoch " +
                         std::to_string(epoch));
    if (log) log->epoch_loss.push_back(epoch_loss);
  }
  return model;
}

double gradient_check(const CredibilityModel& model, const TweetEncoding& enc,
                      Label label, double epsilon) {
  CredibilityGradients analytic;
  forward_backward(model, enc, label, analytic);

  CredibilityModel probe = model;
  double max_rel = 0;
  auto check = [&](MatrixXd& param, const MatrixXd& grad) {
    for (Eigen::Index i = 0; i < param.rows(); ++i) {
      for (Eigen::Index j = 0; j < param.cols(); ++j) {
        double orig = param(i, j);
        param(i, j) = orig + epsilon;
        double lp = cross_entropy_loss(forward(probe, enc), label);
        param(i, j) = orig - epsilon;
        double lm = cross_entropy_loss(forward(probe, enc), label);
        param(i, j) = orig;
        double numeric = (lp - lm) / (2 * epsilon);
        double a = grad(i, j);
        double rel = std::abs(a - numeric) /
                     std::max(std::abs(a) + std::abs(numeric), 1e-3);
        max_rel = std::max(max_rel, rel);
      }
    }
  };
  auto check_vec = [&](VectorXd& param, const VectorXd& grad) {
    for (Eigen::Index i = 0; i < param.size(); ++i) {
      double orig = param[i];
      param[i] = orig + epsilon;
      double lp = cross_entropy_loss(forward(probe, enc), label);
      param[i] = orig - epsilon;
      double lm = cross_entropy_loss(forward(probe, enc), label);
      param[i] = orig;
      double numeric = (lp - lm) / (2 * epsilon);
      double a = grad[i];
      double rel = std::abs(a - numeric) /
                   std::max(std::abs(a) + std::abs(numeric), 1e-3);
      max_rel = std::max(max_rel, rel);
    }
  };
  check(probe.embedding, analytic.embedding);
  check(probe.conv_w, analytic.conv_w);
  check_vec(probe.conv_b, analytic.conv_b);
  check(probe.lstm_w, analytic.lstm_w);
  check_vec(probe.lstm_b, analytic.lstm_b);
  check(probe.softmax_w, analytic.softmax_w);
  check_vec(probe.softmax_b, analytic.softmax_b);
  return max_rel;
}

namespace {

constexpr std::uint32_t kModelMagic = 0x5244434d;  // "RDCM"
constexpr std::uint32_t kModelVersion = 1;

void write_u32(std::ostream& out, std::uint32_t v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}
void write_u64(std::ostream& out, std::uint64_t v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}
void write_f64(std::ostream& out, double v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}
void write_matrix(std::ostream& out, const MatrixXd& m) {
  write_u64(out, static_cast<std::uint64_t>(m.rows()));
  write_u64(out, static_cast<std::uint64_t>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) write_f64(out, m(i, j));
}
std::uint32_t read_u32(std::istream& in) {
  std::uint32_t v;
  in.read(reinterpret_cast<char*>(&v), sizeof(v));
  return v;
}
std::uint64_t read_u64(std::istream& in) {
  std::uint64_t v;
  in.read(reinterpret_cast<char*>(&v), sizeof(v));
  return v;
}
double read_f64(std::istream& in) {
  double v;
  in.read(reinterpret_cast<char*>(&v), sizeof(v));
  return v;
}
MatrixXd read_matrix(std::istream& in) {
  auto rows = static_cast<Eigen::Index>(read_u64(in));
  auto cols = static_cast<Eigen::Index>(read_u64(in));
  MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = read_f64(in);
  return m;
}

}  // namespace

void save_model(const CredibilityModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write model file: " + path);
  write_u32(out, kModelMagic);
  write_u32(out, kModelVersion);
  const auto& hp = model.hyper;
  for (int v : {hp.embed_dim, hp.filter_width, hp.num_filters, hp.hidden_dim,
                hp.seq_len, hp.pool_width, hp.batch_size, hp.epochs})
    write_u32(out, static_cast<std::uint32_t>(v));
  write_f64(out, hp.dropout_rate);
  write_f64(out, hp.learning_rate);
  write_u64(out, hp.seed);
  write_u64(out, static_cast<std::uint64_t>(model.vocab.size()));
  for (int i = 2; i < model.vocab.size(); ++i) {
    const std::string& tok = model.vocab.tokens_by_id[i];
    write_u64(out, tok.size());
    out.write(tok.data(), static_cast<std::streamsize>(tok.size()));
  }
  write_matrix(out, model.embedding);
  write_matrix(out, model.conv_w);
  write_matrix(out, model.conv_b);
  write_matrix(out, model.lstm_w);
  write_matrix(out, model.lstm_b);
  write_matrix(out, model.softmax_w);
  write_matrix(out, model.softmax_b);
}

CredibilityModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open model file: " + path);
  if (read_u32(in) != kModelMagic)
    throw SchemaError("model file: bad magic: " + path);
  if (read_u32(in) != kModelVersion)
    throw SchemaError("model file: unsupported version: " + path);
  CredibilityModel m;
  auto& hp = m.hyper;
  hp.embed_dim = static_cast<int>(read_u32(in));
  hp.filter_width = static_cast<int>(read_u32(in));
  hp.num_filters = static_cast<int>(read_u32(in));
  hp.hidden_dim = static_cast<int>(read_u32(in));
  hp.seq_len = static_cast<int>(read_u32(in));
  hp.pool_width = static_cast<int>(read_u32(in));
  hp.batch_size = static_cast<int>(read_u32(in));
  hp.epochs = static_cast<int>(read_u32(in));
  hp.dropout_rate = read_f64(in);
  hp.learning_rate = read_f64(in);
  hp.seed = read_u64(in);
  auto vocab_size = static_cast<int>(read_u64(in));
  m.vocab.tokens_by_id.resize(2);
  for (int i = 2; i < vocab_size; ++i) {
    auto len = read_u64(in);
    std::string tok(len, '\0');
    in.read(tok.data(), static_cast<std::streamsize>(len));
    m.vocab.token_ids[tok] = i;
    m.vocab.tokens_by_id.push_back(tok);
  }
  m.embedding = read_matrix(in);
  m.conv_w = read_matrix(in);
  m.conv_b = read_matrix(in);
  m.lstm_w = read_matrix(in);
  m.lstm_b = read_matrix(in);
  m.softmax_w = read_matrix(in);
  m.softmax_b = read_matrix(in);
  if (!in) throw SchemaError("model file: truncated: " + path);
  return m;
}

}  // namespace rd

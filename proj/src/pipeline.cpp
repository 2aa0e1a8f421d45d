#include "rd/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>

#include <nlohmann/json.hpp>

#include "rd/csv.hpp"
#include "rd/dsts.hpp"
#include "rd/time_util.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rd {

namespace fs = std::filesystem;
using nlohmann::json;

const std::vector<std::string>& frame_feature_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n = block_feature_names();
    const auto& epi = epi::epi_feature_names();
    n.insert(n.end(), epi.begin(), epi.end());
    n.push_back("CreditScore");
    n.push_back("CrowdWisdom");
    return n;
  }();
  return names;
}

std::map<std::string, std::vector<int>> base_feature_groups() {
  std::map<std::string, std::vector<int>> g;
  auto range = [](int lo, int hi) {
    std::vector<int> v(hi - lo);
    std::iota(v.begin(), v.end(), lo);
    return v;
  };
  g["Text"] = range(0, 16);
  g["Twitter"] = range(16, 25);
  g["User"] = range(25, 34);
  g["Epidemiological"] = range(34, 43);
  g["SpikeM"] = range(43, 49);
  g["CreditScore"] = {49};
  g["CrowdWisdom"] = {50};
  return g;
}

namespace {

struct StageError : std::runtime_error {
  StageError(const std::string& stage, const std::string& what)
      : std::runtime_error("stage " + stage + ": " + what) {}
};

// Artifacts are written under a .partial suffix and renamed once complete.
class ArtifactFile {
 public:
  explicit ArtifactFile(const std::string& path)
      : path_(path), out_(path + ".partial") {
    if (!out_) throw ConfigError("cannot write artifact: " + path);
  }
  std::ofstream& stream() { return out_; }
  void finalize() {
    out_.close();
    fs::rename(path_ + ".partial", path_);
  }

 private:
  std::string path_;
  std::ofstream out_;
};

std::uint64_t fnv1a(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t stable_string_seed(const std::string& s) { return fnv1a(s); }

LookupPaths lookup_paths(const std::string& data_dir) {
  fs::path d(data_dir);
  return LookupPaths{(d / "domain_rank.tsv").string(),
                     (d / "domain_category.tsv").string(),
                     (d / "wot.tsv").string(),
                     (d / "cities.txt").string(),
                     (d / "lexicon.tsv").string(),
                     (d / "news_domains.txt").string()};
}

}  // namespace

PipelineConfig PipelineConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config: " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("config " + path + ": " + e.what());
  }
  PipelineConfig c;
  c.tweets_path = j.value("tweets", c.tweets_path);
  c.events_path = j.value("events", c.events_path);
  c.out_dir = j.value("out_dir", c.out_dir);
  c.data_dir = j.value("data_dir", c.data_dir);
  c.seed = j.value("seed", c.seed);
  c.n_intervals = j.value("n_intervals", c.n_intervals);
  if (j.contains("hours")) c.hours = j.at("hours").get<std::vector<int>>();
  if (j.contains("models"))
    c.models = j.at("models").get<std::vector<std::string>>();
  if (j.contains("feature_groups"))
    c.feature_groups = j.at("feature_groups").get<std::vector<std::string>>();
  c.credibility_model_path =
      j.value("credibility_model_path", c.credibility_model_path);
  if (j.contains("credibility")) {
    const json& cj = j.at("credibility");
    c.credibility.epochs = cj.value("epochs", c.credibility.epochs);
    c.credibility.num_filters = cj.value("num_filters", c.credibility.num_filters);
    c.credibility.hidden_dim = cj.value("hidden_dim", c.credibility.hidden_dim);
    c.credibility.embed_dim = cj.value("embed_dim", c.credibility.embed_dim);
    c.credibility.seq_len = cj.value("seq_len", c.credibility.seq_len);
    c.credibility.learning_rate =
        cj.value("learning_rate", c.credibility.learning_rate);
    c.max_credibility_training_tweets =
        cj.value("max_training_tweets", c.max_credibility_training_tweets);
  }
  if (j.contains("epi")) {
    const json& ej = j.at("epi");
    c.epi.multi_starts = ej.value("multi_starts", c.epi.multi_starts);
    c.epi.lm.max_iterations =
        ej.value("max_iterations", c.epi.lm.max_iterations);
    c.epi.cumulative_target =
        ej.value("cumulative_target", c.epi.cumulative_target);
  }
  if (j.contains("forest")) {
    c.classifier.forest.n_trees =
        j.at("forest").value("n_trees", c.classifier.forest.n_trees);
  }
  if (j.contains("svm")) {
    c.classifier.svm.c = j.at("svm").value("C", c.classifier.svm.c);
    c.classifier.svm.gamma = j.at("svm").value("gamma", c.classifier.svm.gamma);
  }
  c.importance_repeats = j.value("importance_repeats", c.importance_repeats);
  if (j.contains("importance_hours"))
    c.importance_hours = j.at("importance_hours").get<std::vector<int>>();
  for (int h : c.hours)
    if (h < 1 || h > c.n_intervals)
      throw ConfigError("config: hour " + std::to_string(h) +
                        " outside [1, n_intervals]");
  for (const auto& m : c.models)
    if (m != "rf" && m != "svm")
      throw ConfigError("config: unknown model '" + m + "'");
  return c;
}

std::string PipelineConfig::canonical_json() const {
  json j;
  j["tweets"] = tweets_path;
  j["events"] = events_path;
  j["out_dir"] = out_dir;
  j["data_dir"] = data_dir;
  j["seed"] = seed;
  j["n_intervals"] = n_intervals;
  j["hours"] = hours;
  j["models"] = models;
  j["feature_groups"] = feature_groups;
  j["credibility_model_path"] = credibility_model_path;
  j["credibility"] = {{"epochs", credibility.epochs},
                      {"num_filters", credibility.num_filters},
                      {"hidden_dim", credibility.hidden_dim},
                      {"embed_dim", credibility.embed_dim},
                      {"seq_len", credibility.seq_len},
                      {"learning_rate", credibility.learning_rate},
                      {"max_training_tweets", max_credibility_training_tweets}};
  j["epi"] = {{"multi_starts", epi.multi_starts},
              {"max_iterations", epi.lm.max_iterations},
              {"cumulative_target", epi.cumulative_target}};
  j["forest"] = {{"n_trees", classifier.forest.n_trees}};
  j["svm"] = {{"C", classifier.svm.c}, {"gamma", classifier.svm.gamma}};
  j["importance_repeats"] = importance_repeats;
  j["importance_hours"] = importance_hours;
  return j.dump();
}

std::string PipelineConfig::config_hash() const {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a(canonical_json())));
  return buf;
}

EventFeatures compute_event_features(const Event& event,
                                     const LookupTables& tables,
                                     const DebunkLexicon& debunk,
                                     const CredibilityModel& credibility,
                                     int n_intervals,
                                     const epi::FitOptions& epi_opts) {
  EventFeatures out;
  out.event_id = event.event_id;
  out.label = event.label;
  std::vector<Timestamp> times;
  times.reserve(event.tweets.size());
  for (const auto& t : event.tweets) times.push_back(t.created_at);
  out.window = select_event_window(times, n_intervals);
  auto buckets = bucket_tweets(event, out.window, &out.drops);
  auto volume = volume_curve(buckets);

  out.frames.resize(n_intervals, kFrameFeatureCount);
  out.epi_per_interval.resize(n_intervals);
  for (int t = 0; t < n_intervals; ++t) {
    auto text = extract_text_features(buckets[t], tables);
    auto twitter = extract_twitter_features(buckets[t], tables);
    auto user = extract_user_features(buckets[t], tables);
    auto blocks = block_feature_values(text, twitter, user);
    for (int k = 0; k < 34; ++k) out.frames(t, k) = blocks[k];

    if (t >= 1) {
      epi::VolumeCurve prefix(volume.begin(), volume.begin() + t + 1);
      epi::FitOptions opts = epi_opts;
      opts.seed = epi_opts.seed ^ stable_string_seed(event.event_id) ^
                  (static_cast<std::uint64_t>(t) << 32);
      out.epi_per_interval[t] = epi::fit_epi_features(prefix, opts);
    }
    for (int k = 0; k < epi::kEpiFeatureCount; ++k)
      out.frames(t, 34 + k) = out.epi_per_interval[t].values[k];

    std::vector<CredibilityPrediction> preds;
    preds.reserve(buckets[t].tweets.size());
    for (const auto& tw : buckets[t].tweets)
      preds.push_back(forward(
          credibility,
          tokenize_and_pad(tw.text, credibility.vocab, credibility.hyper.seq_len)));
    out.frames(t, 49) = credit_score(preds);
    out.frames(t, 50) = crowd_wisdom(buckets[t], debunk);
  }
  return out;
}

Dataset build_hour_dataset(const std::vector<EventFeatures>& features,
                           int prefix_hours, bool normalize) {
  Dataset data;
  data.feature_names = dsts_column_names(frame_feature_names(), prefix_hours);
  const Eigen::Index cols =
      static_cast<Eigen::Index>(kFrameFeatureCount) * (2 * prefix_hours - 1);
  data.x.resize(static_cast<Eigen::Index>(features.size()), cols);
  data.y.resize(static_cast<Eigen::Index>(features.size()));
  for (size_t e = 0; e < features.size(); ++e) {
    const auto& f = features[e];
    MatrixXd prefix = f.frames.topRows(prefix_hours);
    DstsVector v = build_dsts_vector(prefix, 1.0, normalize);
    data.x.row(static_cast<Eigen::Index>(e)) = v.values.transpose();
    data.y[static_cast<Eigen::Index>(e)] = f.label == Label::kRumor ? 1 : 0;
    data.event_ids.push_back(f.event_id);
  }
  return data;
}

namespace {

std::map<std::string, std::vector<int>> dsts_groups(
    const std::map<std::string, std::vector<int>>& base_groups, int n_columns) {
  std::map<std::string, std::vector<int>> out;
  for (const auto& [name, base_cols] : base_groups) {
    std::vector<char> member(kFrameFeatureCount, 0);
    for (int b : base_cols) member[b] = 1;
    std::vector<int> cols;
    for (int j = 0; j < n_columns; ++j)
      if (member[j % kFrameFeatureCount]) cols.push_back(j);
    out[name] = std::move(cols);
  }
  return out;
}

std::map<std::string, std::vector<int>> per_base_feature_groups(int n_columns) {
  std::map<std::string, std::vector<int>> out;
  const auto& names = frame_feature_names();
  for (int k = 0; k < kFrameFeatureCount; ++k) {
    std::vector<int> cols;
    for (int j = k; j < n_columns; j += kFrameFeatureCount) cols.push_back(j);
    out[names[k]] = std::move(cols);
  }
  return out;
}

// Deterministic stratified holdout split for importance estimation.
void holdout_split(const Dataset& data, double held_fraction,
                   std::uint64_t seed, std::vector<int>& train_rows,
                   std::vector<int>& held_rows) {
  std::mt19937_64 rng(seed);
  for (int cls : {0, 1}) {
    std::vector<int> idx;
    for (Eigen::Index i = 0; i < data.y.size(); ++i)
      if (data.y[i] == cls) idx.push_back(static_cast<int>(i));
    std::shuffle(idx.begin(), idx.end(), rng);
    size_t held = std::max<size_t>(1, static_cast<size_t>(idx.size() * held_fraction));
    for (size_t j = 0; j < idx.size(); ++j)
      (j < held ? held_rows : train_rows).push_back(idx[j]);
  }
  std::sort(train_rows.begin(), train_rows.end());
  std::sort(held_rows.begin(), held_rows.end());
}

Dataset take_rows(const Dataset& data, const std::vector<int>& rows) {
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

}  // namespace

PipelineResult run_pipeline(const PipelineConfig& config) {
  PipelineResult result;
  fs::create_directories(config.out_dir);
  auto artifact = [&](const std::string& name) {
    return (fs::path(config.out_dir) / name).string();
  };

  // load-config-and-lookups: everything that can fail before any compute
  LookupTables tables;
  DebunkLexicon debunk;
  try {
    tables = load_lookup_tables(lookup_paths(config.data_dir));
    debunk = load_debunk_lexicon(
        (fs::path(config.data_dir) / "debunk_words.txt").string());
  } catch (const std::exception& e) {
    throw StageError("load-lookups", e.what());
  }

  std::vector<Event> events;
  try {
    auto tweets = load_tweets_jsonl(config.tweets_path);
    events = assemble_events(config.events_path, tweets);
    if (events.empty()) throw SchemaError("no events with tweets");
  } catch (const std::exception& e) {
    throw StageError("ingest", e.what());
  }

  CredibilityModel credibility;
  try {
    if (!config.credibility_model_path.empty()) {
      credibility = load_model(config.credibility_model_path);
    } else {
      std::vector<std::pair<std::string, Label>> samples;
      for (const auto& ev : events)
        for (const auto& tw : ev.tweets) samples.emplace_back(tw.text, ev.label);
      std::mt19937_64 rng(config.seed ^ 0xc0ffee);
      std::shuffle(samples.begin(), samples.end(), rng);
      if (static_cast<int>(samples.size()) > config.max_credibility_training_tweets)
        samples.resize(config.max_credibility_training_tweets);
      CredibilityHyper hyper = config.credibility;
      hyper.seed = config.seed;
      credibility = train_credibility(samples, hyper);
      save_model(credibility, artifact("credibility.model"));
    }
  } catch (const std::exception& e) {
    throw StageError("credibility", e.what());
  }

  std::vector<EventFeatures> features(events.size());
  try {
    epi::FitOptions epi_opts = config.epi;
    epi_opts.seed = config.seed;
    std::exception_ptr failure;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::int64_t e = 0; e < static_cast<std::int64_t>(events.size()); ++e) {
      try {
        features[e] = compute_event_features(events[e], tables, debunk,
                                             credibility, config.n_intervals,
                                             epi_opts);
      } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);

    ArtifactFile feat(artifact("features.csv"));
    std::vector<std::string> header = {"event_id", "interval"};
    for (const auto& n : block_feature_names()) header.push_back(n);
    header.push_back("CreditScore");
    header.push_back("CrowdWisdom");
    feat.stream() << csv::join(header) << "\n";
    ArtifactFile epi_csv(artifact("epi_features.csv"));
    std::vector<std::string> eh = {"event_id", "interval"};
    for (const auto& n : epi::epi_feature_names()) eh.push_back(n);
    for (const char* n : {"SseSIS", "SseSEIZ", "SseSpikeM", "ConvergedSIS",
                          "ConvergedSEIZ", "ConvergedSpikeM"})
      eh.push_back(n);
    epi_csv.stream() << csv::join(eh) << "\n";
    ArtifactFile drops(artifact("drop_report.json"));
    json drop_json = json::array();
    for (const auto& f : features) {
      for (int t = 0; t < config.n_intervals; ++t) {
        std::vector<std::string> row = {f.event_id, std::to_string(t)};
        for (int k = 0; k < 34; ++k)
          row.push_back(csv::format_double(f.frames(t, k)));
        row.push_back(csv::format_double(f.frames(t, 49)));
        row.push_back(csv::format_double(f.frames(t, 50)));
        feat.stream() << csv::join(row) << "\n";
        const auto& ef = f.epi_per_interval[t];
        std::vector<std::string> erow = {f.event_id, std::to_string(t)};
        for (double v : ef.values) erow.push_back(csv::format_double(v));
        erow.push_back(csv::format_double(ef.sse_sis));
        erow.push_back(csv::format_double(ef.sse_seiz));
        erow.push_back(csv::format_double(ef.sse_spikem));
        erow.push_back(ef.converged_sis ? "1" : "0");
        erow.push_back(ef.converged_seiz ? "1" : "0");
        erow.push_back(ef.converged_spikem ? "1" : "0");
        epi_csv.stream() << csv::join(erow) << "\n";
      }
      drop_json.push_back({{"event_id", f.event_id},
                           {"dropped_count", f.drops.dropped_count}});
    }
    drops.stream() << drop_json.dump(2) << "\n";
    feat.finalize();
    epi_csv.finalize();
    drops.finalize();
  } catch (const std::exception& e) {
    throw StageError("features", e.what());
  }

  std::map<int, Dataset> raw_by_hour, norm_by_hour;
  try {
    for (int h : config.hours) {
      raw_by_hour[h] = build_hour_dataset(features, h, false);
      norm_by_hour[h] = build_hour_dataset(features, h, true);
    }
    for (int h : config.hours) {
      std::string name = h == config.n_intervals
                             ? "dsts.csv"
                             : "dsts_h" + std::to_string(h) + ".csv";
      ArtifactFile out(artifact(name));
      const Dataset& d = raw_by_hour[h];
      std::vector<std::string> header = {"event_id", "prefix_hours", "label"};
      header.insert(header.end(), d.feature_names.begin(), d.feature_names.end());
      out.stream() << csv::join(header) << "\n";
      for (Eigen::Index i = 0; i < d.x.rows(); ++i) {
        std::vector<std::string> row = {d.event_ids[i], std::to_string(h),
                                        d.y[i] == 1 ? "rumor" : "news"};
        for (Eigen::Index j = 0; j < d.x.cols(); ++j)
          row.push_back(csv::format_double(d.x(i, j)));
        out.stream() << csv::join(row) << "\n";
      }
      out.finalize();
    }
  } catch (const std::exception& e) {
    throw StageError("dsts", e.what());
  }

  auto base_groups = base_feature_groups();
  try {
    ArtifactFile imp(artifact("importance.csv"));
    imp.stream() << "feature,rank,importance,hour\n";
    ArtifactFile gimp(artifact("group_importance.csv"));
    gimp.stream() << "group,rank,importance,hour\n";
    std::map<std::string, std::vector<double>> mean_base;
    for (int h : config.importance_hours) {
      if (!raw_by_hour.count(h)) continue;
      const Dataset& d = raw_by_hour.at(h);
      std::vector<int> train_rows, held_rows;
      holdout_split(d, 0.2, config.seed ^ 0x1417 ^ h, train_rows, held_rows);
      Dataset train = take_rows(d, train_rows);
      Dataset held = take_rows(d, held_rows);
      ForestOptions fo = config.classifier.forest;
      fo.seed = config.seed + h;
      ForestModel model = train_random_forest(train, fo);
      PredictFn predict = [&model](const Eigen::Ref<const RowVectorXd>& row) {
        return model.predict(row);
      };
      int ncols = static_cast<int>(d.x.cols());
      auto base = permutation_importance(predict, held,
                                         per_base_feature_groups(ncols),
                                         config.importance_repeats,
                                         config.seed ^ h);
      auto groups = permutation_importance(predict, held,
                                           dsts_groups(base_groups, ncols),
                                           config.importance_repeats,
                                           config.seed ^ h);
      result.base_importance[h] = base;
      result.group_importance[h] = groups;
      for (size_t r = 0; r < base.size(); ++r) {
        imp.stream() << csv::join({base[r].name, std::to_string(r + 1),
                                   csv::format_double(base[r].importance),
                                   std::to_string(h)})
                     << "\n";
        mean_base[base[r].name].push_back(base[r].importance);
      }
      for (size_t r = 0; r < groups.size(); ++r)
        gimp.stream() << csv::join({groups[r].name, std::to_string(r + 1),
                                    csv::format_double(groups[r].importance),
                                    std::to_string(h)})
                      << "\n";
    }
    std::vector<std::pair<double, std::string>> ranked;
    for (const auto& [name, vals] : mean_base)
      ranked.emplace_back(
          -std::accumulate(vals.begin(), vals.end(), 0.0) / vals.size(), name);
    std::sort(ranked.begin(), ranked.end());
    for (size_t i = 0; i < ranked.size() && i < 9; ++i)
      result.best_set.push_back(ranked[i].second);
    imp.finalize();
    gimp.finalize();
  } catch (const std::exception& e) {
    throw StageError("importance", e.what());
  }

  try {
    // BestSet columns come from the importance stage
    if (!result.best_set.empty()) {
      const auto& names = frame_feature_names();
      std::vector<int> cols;
      for (size_t k = 0; k < names.size(); ++k)
        if (std::find(result.best_set.begin(), result.best_set.end(),
                      names[k]) != result.best_set.end())
          cols.push_back(static_cast<int>(k));
      base_groups["BestSet"] = cols;
    }
    GroupResolver resolver = [&base_groups](const Dataset& d) {
      return dsts_groups(base_groups, static_cast<int>(d.x.cols()));
    };
    for (const auto& model_name : config.models) {
      ModelKind kind =
          model_name == "rf" ? ModelKind::kRandomForest : ModelKind::kSvm;
      const auto& per_hour =
          kind == ModelKind::kRandomForest ? raw_by_hour : norm_by_hour;
      auto cells = accuracy_over_time(per_hour, {kind}, config.feature_groups,
                                      resolver, config.classifier, config.seed);
      result.report.insert(result.report.end(), cells.begin(), cells.end());
    }
    ArtifactFile rep(artifact("report.csv"));
    rep.stream() << "model,feature_group,hour,fold,accuracy\n";
    ArtifactFile summary(artifact("report_summary.csv"));
    summary.stream()
        << "model,feature_group,hour,mean_accuracy,std_accuracy,pooled_accuracy\n";
    for (const auto& cell : result.report) {
      for (const auto& fm : cell.report.folds) {
        rep.stream() << csv::join({cell.model, cell.feature_group,
                                   std::to_string(cell.hour),
                                   std::to_string(fm.fold),
                                   csv::format_double(fm.confusion.accuracy())})
                     << "\n";
      }
      summary.stream() << csv::join(
                              {cell.model, cell.feature_group,
                               std::to_string(cell.hour),
                               csv::format_double(cell.report.mean_accuracy),
                               csv::format_double(cell.report.std_accuracy),
                               csv::format_double(cell.report.pooled_accuracy)})
                       << "\n";
    }
    rep.finalize();
    summary.finalize();
  } catch (const std::exception& e) {
    throw StageError("evaluate", e.what());
  }

  try {
    ArtifactFile manifest(artifact("manifest.json"));
    json m;
    m["tool"] = "rumorscope";
    m["version"] = "1.0.0";
    m["seed"] = config.seed;
    m["config"] = json::parse(config.canonical_json());
    m["config_hash"] = config.config_hash();
    m["n_events"] = events.size();
    m["best_set"] = result.best_set;
    m["artifacts"] = {"features.csv", "epi_features.csv", "dsts.csv",
                      "report.csv", "report_summary.csv", "importance.csv",
                      "group_importance.csv", "drop_report.json"};
    manifest.stream() << m.dump(2) << "\n";
    manifest.finalize();
    result.manifest_path = artifact("manifest.json");
  } catch (const std::exception& e) {
    throw StageError("manifest", e.what());
  }
  return result;
}

std::vector<std::string> validate_run(const PipelineConfig& config) {
  std::vector<std::string> problems;
  auto check_file = [&](const std::string& path, const std::string& what) {
    if (!fs::exists(path)) problems.push_back(what + " missing: " + path);
    return fs::exists(path);
  };
  auto paths = lookup_paths(config.data_dir);
  for (const auto& [p, what] :
       std::vector<std::pair<std::string, std::string>>{
           {paths.domain_rank_tsv, "lookup table"},
           {paths.domain_category_tsv, "lookup table"},
           {paths.wot_tsv, "lookup table"},
           {paths.cities_txt, "lookup table"},
           {paths.lexicon_tsv, "lookup table"},
           {paths.news_domains_txt, "lookup table"},
           {(fs::path(config.data_dir) / "debunk_words.txt").string(),
            "debunk lexicon"}}) {
    check_file(p, what);
  }
  if (check_file(config.tweets_path, "tweets file")) {
    try {
      load_tweets_jsonl(config.tweets_path);
    } catch (const std::exception& e) {
      problems.push_back(e.what());
    }
  }
  if (check_file(config.events_path, "events file")) {
    try {
      auto rows = csv::read_file(config.events_path);
      if (rows.empty() || rows[0].size() < 2 || rows[0][0] != "event_id")
        problems.push_back("events.csv: bad header");
      for (size_t i = 1; i < rows.size(); ++i)
        if (rows[i].size() < 2 || (rows[i][1] != "rumor" && rows[i][1] != "news"))
          problems.push_back("events.csv: bad row " + std::to_string(i + 1));
    } catch (const std::exception& e) {
      problems.push_back(e.what());
    }
  }
  // emitted artifacts, when present
  auto check_csv = [&](const std::string& name, size_t expect_cols) {
    fs::path p = fs::path(config.out_dir) / name;
    if (!fs::exists(p)) return;
    auto rows = csv::read_file(p.string());
    for (size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != expect_cols) {
        problems.push_back(name + ": row " + std::to_string(i + 1) + " has " +
                           std::to_string(rows[i].size()) + " columns, want " +
                           std::to_string(expect_cols));
        break;
      }
    }
  };
  check_csv("features.csv", 2 + 34 + 2);
  check_csv("epi_features.csv", 2 + epi::kEpiFeatureCount + 6);
  check_csv("report.csv", 5);
  fs::path rep = fs::path(config.out_dir) / "report.csv";
  if (fs::exists(rep)) {
    auto rows = csv::read_file(rep.string());
    for (size_t i = 1; i < rows.size(); ++i) {
      double a = std::stod(rows[i][4]);
      if (a < 0 || a > 1) {
        problems.push_back("report.csv: accuracy out of range at row " +
                           std::to_string(i + 1));
        break;
      }
    }
  }
  return problems;
}

}  // namespace rd

// rumorscope: early rumor detection over event tweet streams.
//
// Exit codes: 0 success, 1 input/validation error, 2 runtime/numeric error.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "rd/csv.hpp"
#include "rd/dsts.hpp"
#include "rd/pipeline.hpp"
#include "rd/synth.hpp"
#include "rd/time_util.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

rd::LookupPaths lookup_paths(const std::string& data_dir) {
  fs::path d(data_dir);
  return rd::LookupPaths{(d / "domain_rank.tsv").string(),
                         (d / "domain_category.tsv").string(),
                         (d / "wot.tsv").string(),
                         (d / "cities.txt").string(),
                         (d / "lexicon.tsv").string(),
                         (d / "news_domains.txt").string()};
}

std::vector<rd::Event> load_events(const std::string& tweets_path,
                                   const std::string& events_path) {
  auto tweets = rd::load_tweets_jsonl(tweets_path);
  return rd::assemble_events(events_path, tweets);
}

// Reads a DSTS csv produced by the dsts/run stages back into a Dataset.
rd::Dataset load_dsts_csv(const std::string& path) {
  auto rows = rd::csv::read_file(path);
  if (rows.size() < 2 || rows[0].size() < 4 || rows[0][0] != "event_id" ||
      rows[0][1] != "prefix_hours" || rows[0][2] != "label")
    throw rd::SchemaError("dsts csv " + path +
                          ": expected header event_id,prefix_hours,label,...");
  rd::Dataset d;
  d.feature_names.assign(rows[0].begin() + 3, rows[0].end());
  const size_t cols = d.feature_names.size();
  d.x.resize(static_cast<Eigen::Index>(rows.size() - 1),
             static_cast<Eigen::Index>(cols));
  d.y.resize(static_cast<Eigen::Index>(rows.size() - 1));
  for (size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].size() != cols + 3)
      throw rd::SchemaError("dsts csv " + path + ": row " +
                            std::to_string(i + 1) + " has wrong column count");
    d.event_ids.push_back(rows[i][0]);
    if (rows[i][2] != "rumor" && rows[i][2] != "news")
      throw rd::SchemaError("dsts csv " + path + ": bad label '" + rows[i][2] +
                            "' at row " + std::to_string(i + 1));
    d.y[static_cast<Eigen::Index>(i - 1)] = rows[i][2] == "rumor" ? 1 : 0;
    for (size_t j = 0; j < cols; ++j)
      d.x(static_cast<Eigen::Index>(i - 1), static_cast<Eigen::Index>(j)) =
          std::stod(rows[i][3 + j]);
  }
  return d;
}

rd::CredibilityModel model_for_scoring(const std::string& model_path,
                                       const std::vector<rd::Event>& events,
                                       std::uint64_t seed) {
  if (!model_path.empty()) return rd::load_model(model_path);
  // No trained model supplied: a seeded untrained model keeps the column
  // present and deterministic (scores hover near 0.5).
  std::vector<std::string> corpus;
  for (const auto& ev : events)
    for (const auto& tw : ev.tweets) corpus.push_back(tw.text);
  rd::CredibilityHyper hyper;
  hyper.seed = seed;
  return rd::init_model(hyper, rd::build_vocabulary(corpus));
}

void print_report(const rd::CvReport& report) {
  std::cout << "folds:";
  for (const auto& fm : report.folds)
    std::cout << ' ' << rd::csv::format_double(fm.confusion.accuracy());
  std::cout << "\nmean_accuracy " << rd::csv::format_double(report.mean_accuracy)
            << "\nstd_accuracy " << rd::csv::format_double(report.std_accuracy)
            << "\npooled_accuracy "
            << rd::csv::format_double(report.pooled_accuracy) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rumorscope: early rumor detection pipeline"};
  app.require_subcommand(1);

  std::string config_path, out = "out", tweets_path, events_path,
              data_dir = "data", model_path, dsts_path, model_name = "rf",
              text, spec_path;
  std::uint64_t seed = 1;
  int hours = 48, events_per_class = 100, intervals = 48, epochs = 30,
      repeats = 5, multi_starts = 5;
  bool normalize = false;
  std::vector<std::string> feature_groups = {"All"};

  app.add_option("--seed", seed, "Master RNG seed")->capture_default_str();
  app.add_option("--out", out, "Output directory or file")
      ->capture_default_str();
  app.add_option("--config", config_path, "Pipeline config JSON");
  app.add_option("--hours", hours, "Prefix hours")->capture_default_str();
  app.add_option("--model", model_name, "Classifier: rf or svm")
      ->check(CLI::IsMember({"rf", "svm"}))
      ->capture_default_str();
  app.add_option("--feature-groups", feature_groups,
                 "Feature groups to evaluate")
      ->delimiter(',');

  auto* synth = app.add_subcommand("synth", "Generate a synthetic corpus");
  synth->add_option("--events-per-class", events_per_class, "")
      ->capture_default_str();
  synth->add_option("--intervals", intervals, "")->capture_default_str();
  synth->add_option("--spec", spec_path, "Generator spec JSON");

  auto add_corpus_opts = [&](CLI::App* cmd) {
    cmd->add_option("--tweets", tweets_path, "tweets.jsonl")->required();
    cmd->add_option("--events", events_path, "events.csv")->required();
  };
  auto* ingest = app.add_subcommand("ingest", "Window selection summary");
  add_corpus_opts(ingest);

  auto* features = app.add_subcommand(
      "features", "Per-interval aggregate features (no epidemic fits)");
  add_corpus_opts(features);
  features->add_option("--data", data_dir, "Lookup table directory")
      ->capture_default_str();
  features->add_option("--credibility-model", model_path, "Trained model file");

  auto* fit_epi =
      app.add_subcommand("fit-epi", "Fit the epidemic models per event");
  add_corpus_opts(fit_epi);
  fit_epi->add_option("--multi-starts", multi_starts, "")->capture_default_str();

  auto* train_cred =
      app.add_subcommand("train-credibility", "Train the tweet-level scorer");
  add_corpus_opts(train_cred);
  train_cred->add_option("--epochs", epochs, "")->capture_default_str();

  auto* score = app.add_subcommand("score", "Score one tweet text");
  score->add_option("--credibility-model", model_path, "")->required();
  score->add_option("--text", text, "Tweet text")->required();

  auto* dsts = app.add_subcommand("dsts", "Full feature frames + DSTS vectors");
  add_corpus_opts(dsts);
  dsts->add_option("--data", data_dir, "")->capture_default_str();
  dsts->add_option("--credibility-model", model_path, "");
  dsts->add_flag("--normalize", normalize, "Z-score the frames");
  dsts->add_option("--multi-starts", multi_starts, "")->capture_default_str();

  auto* train = app.add_subcommand("train", "Train a classifier on a DSTS csv");
  train->add_option("--dsts", dsts_path, "")->required();

  auto* evaluate =
      app.add_subcommand("evaluate", "10-fold cross-validation on a DSTS csv");
  evaluate->add_option("--dsts", dsts_path, "")->required();

  auto* importance =
      app.add_subcommand("importance", "Permutation feature importance");
  importance->add_option("--dsts", dsts_path, "")->required();
  importance->add_option("--repeats", repeats, "")->capture_default_str();

  auto* run = app.add_subcommand("run", "Full pipeline from a config file");
  auto* validate = app.add_subcommand("validate", "Schema checks, no compute");

  // Global flags (--seed, --out, ...) are also accepted after the subcommand.
  for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (synth->parsed()) {
      rd::SynthSpec spec = spec_path.empty() ? rd::SynthSpec::defaults()
                                             : rd::SynthSpec::load(spec_path);
      if (spec_path.empty()) {
        spec.n_events_per_class = events_per_class;
        spec.n_intervals = intervals;
      }
      spec.seed = seed;
      auto result = rd::generate_synthetic_corpus(spec, out);
      std::cout << result.tweets_jsonl << "\n"
                << result.events_csv << "\n"
                << result.sidecar_json << "\n";
    } else if (ingest->parsed()) {
      auto events = load_events(tweets_path, events_path);
      std::cout << "event_id,label,t_max,t_0,t_end,n_tweets,dropped\n";
      for (const auto& ev : events) {
        std::vector<rd::Timestamp> times;
        for (const auto& tw : ev.tweets) times.push_back(tw.created_at);
        auto window = rd::select_event_window(times, hours);
        rd::DropReport drops;
        rd::bucket_tweets(ev, window, &drops);
        std::cout << rd::csv::join(
                         {ev.event_id, rd::label_name(ev.label),
                          rd::format_iso8601_utc(window.t_max),
                          rd::format_iso8601_utc(window.t_0),
                          rd::format_iso8601_utc(window.t_end),
                          std::to_string(ev.tweets.size()),
                          std::to_string(drops.dropped_count)})
                  << "\n";
      }
    } else if (features->parsed()) {
      auto tables = rd::load_lookup_tables(lookup_paths(data_dir));
      auto debunk = rd::load_debunk_lexicon(
          (fs::path(data_dir) / "debunk_words.txt").string());
      auto events = load_events(tweets_path, events_path);
      auto model = model_for_scoring(model_path, events, seed);
      std::ofstream csv_out(out);
      if (!csv_out) throw rd::ConfigError("cannot write " + out);
      std::vector<std::string> header = {"event_id", "interval"};
      for (const auto& n : rd::block_feature_names()) header.push_back(n);
      header.push_back("CreditScore");
      header.push_back("CrowdWisdom");
      csv_out << rd::csv::join(header) << "\n";
      for (const auto& ev : events) {
        std::vector<rd::Timestamp> times;
        for (const auto& tw : ev.tweets) times.push_back(tw.created_at);
        auto window = rd::select_event_window(times, hours);
        auto buckets = rd::bucket_tweets(ev, window);
        for (const auto& bucket : buckets) {
          auto blocks = rd::block_feature_values(
              rd::extract_text_features(bucket, tables),
              rd::extract_twitter_features(bucket, tables),
              rd::extract_user_features(bucket, tables));
          std::vector<std::string> row = {ev.event_id,
                                          std::to_string(bucket.index)};
          for (double v : blocks) row.push_back(rd::csv::format_double(v));
          std::vector<rd::CredibilityPrediction> preds;
          for (const auto& tw : bucket.tweets)
            preds.push_back(rd::forward(
                model, rd::tokenize_and_pad(tw.text, model.vocab,
                                            model.hyper.seq_len)));
          row.push_back(rd::csv::format_double(rd::credit_score(preds)));
          row.push_back(
              rd::csv::format_double(rd::crowd_wisdom(bucket, debunk)));
          csv_out << rd::csv::join(row) << "\n";
        }
      }
      std::cout << out << "\n";
    } else if (fit_epi->parsed()) {
      auto events = load_events(tweets_path, events_path);
      rd::epi::FitOptions opts;
      opts.multi_starts = multi_starts;
      opts.seed = seed;
      std::ofstream csv_out(out);
      if (!csv_out) throw rd::ConfigError("cannot write " + out);
      std::vector<std::string> header = {"event_id"};
      for (const auto& n : rd::epi::epi_feature_names()) header.push_back(n);
      for (const char* n : {"SseSIS", "SseSEIZ", "SseSpikeM"}) header.push_back(n);
      csv_out << rd::csv::join(header) << "\n";
      for (const auto& ev : events) {
        std::vector<rd::Timestamp> times;
        for (const auto& tw : ev.tweets) times.push_back(tw.created_at);
        auto window = rd::select_event_window(times, hours);
        auto curve = rd::volume_curve(rd::bucket_tweets(ev, window));
        auto ef = rd::epi::fit_epi_features(curve, opts);
        std::vector<std::string> row = {ev.event_id};
        for (double v : ef.values) row.push_back(rd::csv::format_double(v));
        row.push_back(rd::csv::format_double(ef.sse_sis));
        row.push_back(rd::csv::format_double(ef.sse_seiz));
        row.push_back(rd::csv::format_double(ef.sse_spikem));
        csv_out << rd::csv::join(row) << "\n";
      }
      std::cout << out << "\n";
    } else if (train_cred->parsed()) {
      auto events = load_events(tweets_path, events_path);
      std::vector<std::pair<std::string, rd::Label>> samples;
      for (const auto& ev : events)
        for (const auto& tw : ev.tweets) samples.emplace_back(tw.text, ev.label);
      rd::CredibilityHyper hyper;
      hyper.epochs = epochs;
      hyper.seed = seed;
      rd::TrainLog log;
      auto model = rd::train_credibility(samples, hyper, &log);
      rd::save_model(model, out);
      for (size_t e = 0; e < log.epoch_loss.size(); ++e)
        std::cout << "epoch " << e << " loss "
                  << rd::csv::format_double(log.epoch_loss[e]) << "\n";
      std::cout << out << "\n";
    } else if (score->parsed()) {
      auto model = rd::load_model(model_path);
      auto pred = rd::forward(
          model, rd::tokenize_and_pad(text, model.vocab, model.hyper.seq_len));
      std::cout << "p_rumor " << rd::csv::format_double(pred.p_rumor)
                << "\np_news " << rd::csv::format_double(pred.p_news) << "\n";
    } else if (dsts->parsed()) {
      auto tables = rd::load_lookup_tables(lookup_paths(data_dir));
      auto debunk = rd::load_debunk_lexicon(
          (fs::path(data_dir) / "debunk_words.txt").string());
      auto events = load_events(tweets_path, events_path);
      auto model = model_for_scoring(model_path, events, seed);
      rd::epi::FitOptions opts;
      opts.multi_starts = multi_starts;
      opts.seed = seed;
      std::ofstream csv_out(out);
      if (!csv_out) throw rd::ConfigError("cannot write " + out);
      std::vector<std::string> header = {"event_id", "prefix_hours", "label"};
      auto names = rd::dsts_column_names(rd::frame_feature_names(), hours);
      header.insert(header.end(), names.begin(), names.end());
      csv_out << rd::csv::join(header) << "\n";
      for (const auto& ev : events) {
        auto features48 = rd::compute_event_features(ev, tables, debunk, model,
                                                     hours, opts);
        auto v = rd::build_dsts_vector(features48.frames, 1.0, normalize);
        std::vector<std::string> row = {ev.event_id, std::to_string(hours),
                                        rd::label_name(ev.label)};
        for (Eigen::Index j = 0; j < v.values.size(); ++j)
          row.push_back(rd::csv::format_double(v.values[j]));
        csv_out << rd::csv::join(row) << "\n";
      }
      std::cout << out << "\n";
    } else if (train->parsed()) {
      auto data = load_dsts_csv(dsts_path);
      if (model_name == "rf") {
        rd::ForestOptions fo;
        fo.seed = seed;
        auto forest = rd::train_random_forest(data, fo);
        std::cout << "oob_accuracy "
                  << rd::csv::format_double(forest.oob_accuracy) << "\n";
      } else {
        rd::SvmOptions so;
        so.seed = seed;
        auto svm = rd::train_svm_rbf(data, so);
        std::int64_t correct = 0;
        for (Eigen::Index i = 0; i < data.y.size(); ++i)
          if (svm.predict(data.x.row(i)) == data.y[i]) ++correct;
        std::cout << "train_accuracy "
                  << rd::csv::format_double(double(correct) / data.y.size())
                  << "\n";
      }
    } else if (evaluate->parsed()) {
      auto data = load_dsts_csv(dsts_path);
      rd::ModelKind kind = model_name == "rf" ? rd::ModelKind::kRandomForest
                                              : rd::ModelKind::kSvm;
      print_report(rd::cross_validate(data, kind, {}, seed));
    } else if (importance->parsed()) {
      auto data = load_dsts_csv(dsts_path);
      std::map<std::string, std::vector<int>> groups;
      for (size_t j = 0; j < data.feature_names.size(); ++j) {
        std::string base = data.feature_names[j];
        if (!base.empty() && base[0] == 'd') {
          // slope columns fold into their base feature's group
          auto at = base.rfind("@t");
          std::string candidate = base.substr(1, at - 1);
          const auto& known = rd::frame_feature_names();
          if (std::find(known.begin(), known.end(), candidate) != known.end())
            base = candidate + base.substr(at);
        }
        auto at = base.rfind("@t");
        if (at != std::string::npos) base = base.substr(0, at);
        groups[base].push_back(static_cast<int>(j));
      }
      rd::ForestOptions fo;
      fo.seed = seed;
      auto forest = rd::train_random_forest(data, fo);
      rd::PredictFn predict =
          [&forest](const Eigen::Ref<const rd::RowVectorXd>& row) {
            return forest.predict(row);
          };
      auto entries =
          rd::permutation_importance(predict, data, groups, repeats, seed);
      std::cout << "feature,rank,importance\n";
      for (size_t r = 0; r < entries.size(); ++r)
        std::cout << rd::csv::join({entries[r].name, std::to_string(r + 1),
                                    rd::csv::format_double(
                                        entries[r].importance)})
                  << "\n";
    } else if (run->parsed()) {
      if (config_path.empty())
        throw rd::ConfigError("run: --config is required");
      rd::PipelineConfig config = rd::PipelineConfig::load(config_path);
      auto result = rd::run_pipeline(config);
      std::cout << "manifest " << result.manifest_path << "\n";
      for (const auto& cell : result.report)
        std::cout << cell.model << ' ' << cell.feature_group << " h"
                  << cell.hour << " mean "
                  << rd::csv::format_double(cell.report.mean_accuracy) << "\n";
    } else if (validate->parsed()) {
      if (config_path.empty())
        throw rd::ConfigError("validate: --config is required");
      rd::PipelineConfig config = rd::PipelineConfig::load(config_path);
      auto problems = rd::validate_run(config);
      for (const auto& p : problems) std::cout << p << "\n";
      if (!problems.empty()) return kExitValidation;
      std::cout << "ok\n";
    }
  } catch (const rd::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const rd::SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const rd::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "rd/pipeline.hpp"
#include "rd/synth.hpp"

using namespace rd;
namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(bool(in), path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string write_temp(const std::string& name, const std::string& content) {
  fs::path p = fs::temp_directory_path() / name;
  std::ofstream out(p);
  out << content;
  return p.string();
}

// A small but CV-viable configuration that runs in seconds.
PipelineConfig small_config(const fs::path& corpus_dir, const fs::path& out_dir) {
  PipelineConfig cfg;
  cfg.tweets_path = (corpus_dir / "tweets.jsonl").string();
  cfg.events_path = (corpus_dir / "events.csv").string();
  cfg.out_dir = out_dir.string();
  cfg.data_dir = "data";
  cfg.seed = 5;
  cfg.n_intervals = 6;
  cfg.hours = {1, 6};
  cfg.importance_hours = {6};
  cfg.importance_repeats = 2;
  cfg.models = {"rf"};
  cfg.feature_groups = {"All", "CreditScore"};
  cfg.credibility.embed_dim = 8;
  cfg.credibility.num_filters = 8;
  cfg.credibility.hidden_dim = 8;
  cfg.credibility.seq_len = 12;
  cfg.credibility.epochs = 2;
  cfg.max_credibility_training_tweets = 300;
  cfg.epi.multi_starts = 1;
  cfg.epi.lm.max_iterations = 8;
  cfg.classifier.forest.n_trees = 15;
  return cfg;
}

const fs::path& small_corpus() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "pipe_corpus";
    fs::create_directories(d);
    SynthSpec spec = SynthSpec::defaults();
    spec.n_events_per_class = 10;  // 10-fold CV needs 10 rows per class
    spec.n_intervals = 6;
    spec.min_total_volume = 40;
    spec.max_total_volume = 80;
    spec.seed = 99;
    generate_synthetic_corpus(spec, d.string());
    return d;
  }();
  return dir;
}

}  // namespace

TEST_CASE("frame feature catalogue has 51 names partitioned by the groups") {
  const auto& names = frame_feature_names();
  REQUIRE(names.size() == kFrameFeatureCount);
  CHECK(names[0] == "LengthOfTweet");
  CHECK(names[34] == "BetaSIS");
  CHECK(names[49] == "CreditScore");
  CHECK(names[50] == "CrowdWisdom");
  std::set<std::string> unique(names.begin(), names.end());
  CHECK(unique.size() == names.size());

  auto groups = base_feature_groups();
  CHECK(groups.size() == 7);  // "All"/"BestSet" are resolved downstream
  std::set<int> covered;
  for (const auto& [name, cols] : groups) {
    for (int c : cols) {
      CHECK(covered.insert(c).second);  // groups are disjoint
      CHECK(c >= 0);
      CHECK(c < kFrameFeatureCount);
    }
  }
  CHECK(covered.size() == size_t(kFrameFeatureCount));  // and exhaustive
}

TEST_CASE("config load validates hours and models, hash is stable") {
  std::string good = write_temp("pipe_cfg.json", R"({
    "tweets_path": "t.jsonl", "events_path": "e.csv", "seed": 3,
    "n_intervals": 12, "hours": [1, 12], "models": ["rf", "svm"]})");
  PipelineConfig cfg = PipelineConfig::load(good);
  CHECK(cfg.seed == 3);
  CHECK(cfg.hours == std::vector<int>{1, 12});
  CHECK(cfg.models == std::vector<std::string>{"rf", "svm"});
  CHECK(cfg.config_hash() == cfg.config_hash());
  PipelineConfig other = cfg;
  other.seed = 4;
  CHECK(other.config_hash() != cfg.config_hash());

  std::string bad_hours = write_temp("pipe_cfg_bh.json", R"({
    "tweets_path": "t", "events_path": "e", "n_intervals": 12,
    "hours": [13]})");
  CHECK_THROWS_AS(PipelineConfig::load(bad_hours), ConfigError);
  std::string bad_model = write_temp("pipe_cfg_bm.json", R"({
    "tweets_path": "t", "events_path": "e", "models": ["boost"]})");
  CHECK_THROWS_AS(PipelineConfig::load(bad_model), ConfigError);
  CHECK_THROWS_AS(PipelineConfig::load("/nonexistent.json"), ConfigError);
}

TEST_CASE("build_hour_dataset dimensions follow the prefix length") {
  // Two fabricated events with constant frames.
  std::vector<EventFeatures> evs(2);
  for (int i = 0; i < 2; ++i) {
    evs[i].event_id = "e" + std::to_string(i);
    evs[i].label = i == 0 ? Label::kRumor : Label::kNews;
    evs[i].frames = MatrixXd::Constant(6, kFrameFeatureCount, double(i));
  }
  Dataset h1 = build_hour_dataset(evs, 1, false);
  CHECK(h1.x.rows() == 2);
  CHECK(h1.x.cols() == kFrameFeatureCount);  // single frame, no slopes
  Dataset h4 = build_hour_dataset(evs, 4, false);
  CHECK(h4.x.cols() == kFrameFeatureCount * (2 * 4 - 1));
  CHECK(h4.feature_names.size() == size_t(h4.x.cols()));
  CHECK(h1.y[0] == 1);  // rumor encoded as 1
  CHECK(h1.y[1] == 0);
}

TEST_CASE("end-to-end pipeline emits every artifact and is deterministic") {
  fs::path out_a = fs::temp_directory_path() / "pipe_out_a";
  fs::path out_b = fs::temp_directory_path() / "pipe_out_b";
  PipelineConfig cfg_a = small_config(small_corpus(), out_a);
  PipelineResult res = run_pipeline(cfg_a);

  for (const char* name :
       {"features.csv", "epi_features.csv", "drop_report.json", "dsts.csv",
        "report.csv", "report_summary.csv", "importance.csv",
        "group_importance.csv", "manifest.json", "credibility.model"}) {
    CHECK_MESSAGE(fs::exists(out_a / name), name);
  }
  CHECK(res.best_set.size() == 9);
  CHECK(!res.report.empty());
  CHECK(res.base_importance.count(6) == 1);
  CHECK(res.group_importance.count(6) == 1);

  // validate_run accepts its own outputs.
  CHECK(validate_run(cfg_a).empty());

  // A second run from the same config is byte-identical.
  PipelineConfig cfg_b = small_config(small_corpus(), out_b);
  run_pipeline(cfg_b);
  CHECK(slurp((out_a / "report.csv").string()) ==
        slurp((out_b / "report.csv").string()));
  CHECK(slurp((out_a / "features.csv").string()) ==
        slurp((out_b / "features.csv").string()));
  CHECK(slurp((out_a / "credibility.model").string()) ==
        slurp((out_b / "credibility.model").string()));
}

TEST_CASE("validate_run flags broken inputs") {
  PipelineConfig cfg = small_config(small_corpus(),
                                    fs::temp_directory_path() / "pipe_none");
  cfg.tweets_path = "/nonexistent/tweets.jsonl";
  auto problems = validate_run(cfg);
  CHECK(!problems.empty());
}

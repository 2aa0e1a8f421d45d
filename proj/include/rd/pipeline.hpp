#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rd/credibility.hpp"
#include "rd/ensemble.hpp"
#include "rd/epi/fit.hpp"
#include "rd/evaluate.hpp"
#include "rd/features.hpp"
#include "rd/ingestion.hpp"

namespace rd {

inline constexpr int kFrameFeatureCount = 51;  // 16+9+9+15+2

// Names of the 51 per-interval frame features, declared order:
// text, twitter, user, epidemiological, CreditScore, CrowdWisdom.
const std::vector<std::string>& frame_feature_names();

// The 7 catalogue groups as base-feature index sets; together they partition
// the 51 frame features. "All" is special-cased by the evaluation layer and
// "BestSet" is appended by the importance stage.
std::map<std::string, std::vector<int>> base_feature_groups();

struct PipelineConfig {
  std::string tweets_path;
  std::string events_path;
  std::string out_dir = "out";
  std::string data_dir = "data";
  std::uint64_t seed = 1;
  int n_intervals = 48;
  std::vector<int> hours = {1, 6, 12, 18, 24, 30, 36, 42, 48};
  std::vector<std::string> models = {"rf"};
  std::vector<std::string> feature_groups = {"All"};
  std::string credibility_model_path;  // load when set, else train first
  CredibilityHyper credibility;
  int max_credibility_training_tweets = 4000;
  epi::FitOptions epi;
  ClassifierOptions classifier;
  int importance_repeats = 5;
  std::vector<int> importance_hours = {12, 48};

  static PipelineConfig load(const std::string& path);
  std::string canonical_json() const;
  std::string config_hash() const;  // FNV-1a over the canonical JSON
};

struct EventFeatures {
  std::string event_id;
  Label label = Label::kNews;
  EventWindow window;
  DropReport drops;
  MatrixXd frames;  // n_intervals x kFrameFeatureCount
  std::vector<epi::EpiFeatures> epi_per_interval;  // diagnostics per prefix
};

// Frames for one event: window selection, bucketing, the 34 aggregate block
// features, prefix epi fits, CreditScore and CrowdWisdom per interval.
EventFeatures compute_event_features(const Event& event,
                                     const LookupTables& tables,
                                     const DebunkLexicon& debunk,
                                     const CredibilityModel& credibility,
                                     int n_intervals,
                                     const epi::FitOptions& epi_opts);

// Prefix-hours DSTS dataset over all events (rows align with events order).
Dataset build_hour_dataset(const std::vector<EventFeatures>& features,
                           int prefix_hours, bool normalize);

struct PipelineResult {
  std::vector<TimedCell> report;
  std::map<int, std::vector<ImportanceEntry>> base_importance;   // by hour
  std::map<int, std::vector<ImportanceEntry>> group_importance;  // by hour
  std::vector<std::string> best_set;  // top-9 base features
  std::string manifest_path;
};

// End-to-end orchestration; writes every artifact into config.out_dir.
// Stage failures throw with the stage name; partially written artifacts
// keep a .partial suffix.
PipelineResult run_pipeline(const PipelineConfig& config);

// Schema self-check over input files and, when present, emitted artifacts.
// Returns human-readable problem descriptions; empty means valid.
std::vector<std::string> validate_run(const PipelineConfig& config);

}  // namespace rd

#pragma once

#include <string>

#include "rd/types.hpp"

namespace rd {

// Class-conditional generator knobs. Rumor/news signal strengths live in the
// serialized SynthSpec so corpora are reproducible and documented.
struct ClassProfile {
  double debunk_phrase_rate = 0.05;   // tweets carrying a debunking phrase
  double url_prob = 0.4;
  double reliable_url_prob = 0.5;     // among tweets with a URL
  double verified_prob = 0.15;
  double description_prob = 0.5;
  double city_prob = 0.15;
  double negative_word_rate = 0.1;    // extra negative sentiment tokens
  double followers_log_mean = 5.5;    // lognormal
  double followers_log_sd = 1.5;
  double friends_log_mean = 5.0;
  double friends_log_sd = 1.2;
};

struct SynthSpec {
  int n_events_per_class = 100;
  std::uint64_t seed = 42;
  int n_intervals = 48;
  double min_total_volume = 80;
  double max_total_volume = 300;
  ClassProfile rumor;
  ClassProfile news;

  static SynthSpec defaults();
  static SynthSpec load(const std::string& path);
  void save(const std::string& path) const;
};

struct SynthOutput {
  std::string tweets_jsonl;
  std::string events_csv;
  std::string sidecar_json;  // ground-truth propagation parameters per event
};

// Deterministic under (spec, seed): writes tweets.jsonl, events.csv and the
// ground-truth parameter sidecar into out_dir.
SynthOutput generate_synthetic_corpus(const SynthSpec& spec,
                                      const std::string& out_dir);

}  // namespace rd

#pragma once

#include <map>
#include <string>
#include <vector>

#include "rd/tweet.hpp"
#include "rd/types.hpp"

namespace rd {

struct EventWindow {
  Timestamp t_max = 0;  // start of the peak-volume clock hour
  Timestamp t_0 = 0;
  Timestamp t_end = 0;
  Duration interval_length = kHour;
  int n_intervals = 48;
};

struct IntervalBucket {
  int index = 0;
  std::vector<Tweet> tweets;
};

struct DropReport {
  std::string event_id;
  std::int64_t dropped_count = 0;
};

// One JSONL record -> Tweet. Missing optional fields default; missing
// id/text/created_at raise SchemaError naming the field.
Tweet parse_tweet_record(const std::string& line);

// Reads tweets.jsonl; parse failures carry the 1-based line number.
std::vector<Tweet> load_tweets_jsonl(const std::string& path);

// Reads events.csv (header event_id,label) and groups tweets by event_id.
// Events with no tweets are skipped.
std::vector<Event> assemble_events(const std::string& events_csv_path,
                                   const std::vector<Tweet>& tweets);

// Peak-hour window selection: t_max is the clock hour with the maximal tweet
// count (ties broken by earliest hour); t_0 is the earliest timestamp within
// 48h before t_max (or inside the peak hour when nothing precedes it);
// t_end = t_0 + n_intervals * interval_length.
EventWindow select_event_window(const std::vector<Timestamp>& timestamps,
                                int n_intervals = 48,
                                Duration interval_length = kHour);

// Half-open hourly buckets [t_0 + i*len, t_0 + (i+1)*len). Tweets outside
// [t_0, t_end) are dropped and counted.
std::vector<IntervalBucket> bucket_tweets(const Event& event,
                                          const EventWindow& window,
                                          DropReport* report = nullptr);

// Per-interval tweet counts over the window.
std::vector<double> volume_curve(const std::vector<IntervalBucket>& buckets);

}  // namespace rd

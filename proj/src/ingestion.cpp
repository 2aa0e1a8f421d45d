#include "rd/ingestion.hpp"

#include <algorithm>
#include <fstream>
#include <map>

#include <nlohmann/json.hpp>

#include "rd/csv.hpp"
#include "rd/time_util.hpp"

namespace rd {

using nlohmann::json;

namespace {

std::vector<std::string> string_list(const json& j, const char* key) {
  std::vector<std::string> out;
  if (!j.contains(key)) return out;
  for (const auto& v : j.at(key)) out.push_back(v.get<std::string>());
  return out;
}

}  // namespace

Tweet parse_tweet_record(const std::string& line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  for (const char* req : {"id", "text", "created_at"}) {
    if (!j.contains(req))
      throw SchemaError(std::string("missing required field: ") + req);
  }
  Tweet t;
  t.id = j.at("id").is_string() ? j.at("id").get<std::string>()
                                : j.at("id").dump();
  t.event_id = j.value("event_id", std::string{});
  t.text = j.at("text").get<std::string>();
  t.created_at = parse_iso8601_utc(j.at("created_at").get<std::string>());
  t.is_retweet = j.value("is_retweet", false);
  t.retweet_count = j.value("retweet_count", std::int64_t{0});
  t.urls = string_list(j, "urls");
  t.hashtags = string_list(j, "hashtags");
  t.mentions = string_list(j, "mentions");
  if (j.contains("user")) {
    const json& u = j.at("user");
    t.author.followers_count = u.value("followers", std::int64_t{0});
    t.author.friends_count = u.value("friends", std::int64_t{0});
    t.author.statuses_count = u.value("statuses", std::int64_t{0});
    t.author.photos_count = u.value("photos", std::int64_t{0});
    t.author.verified = u.value("verified", false);
    if (u.contains("description") && !u.at("description").is_null())
      t.author.has_description = !u.at("description").get<std::string>().empty();
    if (u.contains("location") && !u.at("location").is_null())
      t.author.location = u.at("location").get<std::string>();
    if (u.contains("join_date") && !u.at("join_date").is_null())
      t.author.join_date = parse_iso8601_utc(u.at("join_date").get<std::string>());
  }
  return t;
}

std::vector<Tweet> load_tweets_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open file: " + path);
  std::vector<Tweet> tweets;
  std::string line;
  std::int64_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      tweets.push_back(parse_tweet_record(line));
    } catch (const std::runtime_error& e) {
      throw ParseError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return tweets;
}

std::vector<Event> assemble_events(const std::string& events_csv_path,
                                   const std::vector<Tweet>& tweets) {
  auto rows = csv::read_file(events_csv_path);
  if (rows.empty() || rows[0].size() < 2 || rows[0][0] != "event_id")
    throw SchemaError("events.csv: expected header event_id,label");
  std::map<std::string, Label> labels;
  std::vector<std::string> order;
  for (size_t i = 1; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (r.size() < 2)
      throw SchemaError("events.csv: short row " + std::to_string(i + 1));
    Label lab;
    if (r[1] == "rumor")
      lab = Label::kRumor;
    else if (r[1] == "news")
      lab = Label::kNews;
    else
      throw SchemaError("events.csv: unknown label '" + r[1] + "'");
    if (!labels.count(r[0])) order.push_back(r[0]);
    labels[r[0]] = lab;
  }
  std::map<std::string, std::vector<Tweet>> grouped;
  for (const auto& t : tweets) grouped[t.event_id].push_back(t);
  std::vector<Event> events;
  for (const auto& id : order) {
    auto it = grouped.find(id);
    if (it == grouped.end() || it->second.empty()) continue;
    events.push_back(Event{id, labels.at(id), std::move(it->second)});
  }
  return events;
}

EventWindow select_event_window(const std::vector<Timestamp>& timestamps,
                                int n_intervals, Duration interval_length) {
  if (timestamps.empty()) throw SchemaError("empty event: no timestamps");
  std::map<Timestamp, int> per_hour;
  for (Timestamp t : timestamps) ++per_hour[floor_to_hour(t)];
  Timestamp t_max = per_hour.begin()->first;
  int best = 0;
  for (const auto& [hour, count] : per_hour) {
    if (count > best) {  // map iteration is ascending, so ties keep earliest
      best = count;
      t_max = hour;
    }
  }
  const Duration span = static_cast<Duration>(n_intervals) * interval_length;
  Timestamp t_0 = t_max + interval_length;  // sentinel past the peak hour
  for (Timestamp t : timestamps) {
    if (t >= t_max - span && t < t_max + interval_length) t_0 = std::min(t_0, t);
  }
  EventWindow w;
  w.t_max = t_max;
  w.t_0 = t_0;
  w.interval_length = interval_length;
  w.n_intervals = n_intervals;
  w.t_end = t_0 + span;
  return w;
}

std::vector<IntervalBucket> bucket_tweets(const Event& event,
                                          const EventWindow& window,
                                          DropReport* report) {
  std::vector<IntervalBucket> buckets(window.n_intervals);
  for (int i = 0; i < window.n_intervals; ++i) buckets[i].index = i;
  std::int64_t dropped = 0;
  for (const Tweet& t : event.tweets) {
    Timestamp off = t.created_at - window.t_0;
    if (off < 0 || t.created_at >= window.t_end) {
      ++dropped;
      continue;
    }
    buckets[static_cast<int>(off / window.interval_length)].tweets.push_back(t);
  }
  if (report) {
    report->event_id = event.event_id;
    report->dropped_count = dropped;
  }
  return buckets;
}

std::vector<double> volume_curve(const std::vector<IntervalBucket>& buckets) {
  std::vector<double> v(buckets.size());
  for (size_t i = 0; i < buckets.size(); ++i)
    v[i] = static_cast<double>(buckets[i].tweets.size());
  return v;
}

}  // namespace rd

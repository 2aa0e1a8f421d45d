#include "rd/synth.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>

#include <nlohmann/json.hpp>

#include "rd/csv.hpp"
#include "rd/epi/models.hpp"
#include "rd/time_util.hpp"

namespace rd {

using nlohmann::json;

namespace {

const std::vector<std::string> kRumorPool = {
    "hoax",     "shocking", "exposed",  "conspiracy", "coverup",
    "secret",   "leaked",   "insider",  "allegedly",  "anonymous",
    "hidden",   "banned",   "censored", "suppressed", "bombshell"};
const std::vector<std::string> kNewsPool = {
    "officials",   "confirm", "report",    "statement", "announced",
    "conference",  "update",  "spokesman", "agency",    "according",
    "confirmed",   "press",   "briefing",  "sources",   "ministry"};
const std::vector<std::string> kSharedPool = {
    "the",  "a",     "in",   "on",    "today", "event", "people",
    "city", "story", "new",  "now",   "about", "after", "scene"};
const std::vector<std::string> kNegativeWords = {
    "terrible", "awful", "horrible", "tragic", "disaster", "fear", "panic"};
const std::vector<std::string> kPositiveWords = {
    "good", "great", "progress", "hope", "calm", "safe", "relief"};
const std::vector<std::string> kDebunkPhrases = {
    "hoax", "not true", "fake", "debunked", "rumor", "unverified", "false"};
const std::vector<std::string> kReliableDomains = {
    "bbc.com", "reuters.com", "nytimes.com", "theguardian.com", "cnn.com",
    "apnews.com"};
const std::vector<std::string> kUnreliableDomains = {
    "truthexposed.biz", "realnewsnow.info", "wakeupsheeple.net",
    "dailybuzz.click", "viralreport.xyz"};
const std::vector<std::string> kCities = {
    "London", "New York", "Tokyo", "Paris", "Berlin", "Madrid"};
const std::vector<std::string> kSmallTowns = {
    "Elm Creek", "Dusty Flats", "Pine Hollow", "Graniteville"};
const std::vector<std::string> kTopics = {
    "election", "earthquake", "celebrity", "outbreak", "merger", "verdict",
    "blackout", "protest"};

template <typename Rng>
const std::string& pick(const std::vector<std::string>& pool, Rng& rng) {
  std::uniform_int_distribution<size_t> d(0, pool.size() - 1);
  return pool[d(rng)];
}

template <typename Rng>
bool chance(double p, Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

struct EventPlan {
  std::string model;
  json params;
  epi::VolumeCurve curve;
};

template <typename Rng>
EventPlan sample_propagation(int n_intervals, double total, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double population = 10.0 * total;
  EventPlan plan;
  int which = std::uniform_int_distribution<int>(0, 2)(rng);
  if (which == 0) {
    epi::SisParams p;
    p.beta = 0.4 + 0.8 * u(rng);
    p.alpha = 0.05 + 0.25 * u(rng);
    p.population = population;
    plan.model = "sis";
    plan.params = {{"beta", p.beta}, {"alpha", p.alpha}, {"population", population}};
    plan.curve = epi::simulate_sis(p, n_intervals);
  } else if (which == 1) {
    epi::SeizParams p;
    p.beta = 0.5 + 1.0 * u(rng);
    p.b = 0.2 + 0.8 * u(rng);
    p.l = 0.2 + 0.6 * u(rng);
    p.p = 0.2 + 0.6 * u(rng);
    p.epsilon = 0.05 + 0.25 * u(rng);
    p.rho = 0.1 + 0.4 * u(rng);
    p.population = population;
    plan.model = "seiz";
    plan.params = {{"beta", p.beta},   {"b", p.b},     {"l", p.l},
                   {"p", p.p},         {"epsilon", p.epsilon},
                   {"rho", p.rho},     {"population", population}};
    plan.curve = epi::simulate_seiz(p, n_intervals);
  } else {
    epi::SpikeMParams p;
    p.population = population;
    p.beta_strength = (0.5 + 1.5 * u(rng)) / population;
    p.shock_size = population / 100.0 * (0.5 + u(rng));
    p.noise = 0.1;
    p.p_period = 24;
    p.p_strength = 0.3 + 0.5 * u(rng);
    p.p_shift = 24 * u(rng);
    p.q_period = 12 + 18 * u(rng);
    p.q_strength = 0.2 + 0.6 * u(rng);
    p.q_shift = 12 * u(rng);
    plan.model = "spikem";
    plan.params = {{"beta_strength", p.beta_strength},
                   {"shock_size", p.shock_size},
                   {"noise", p.noise},
                   {"p_period", p.p_period},
                   {"p_strength", p.p_strength},
                   {"p_shift", p.p_shift},
                   {"q_period", p.q_period},
                   {"q_strength", p.q_strength},
                   {"q_shift", p.q_shift},
                   {"population", population}};
    plan.curve = epi::simulate_spikem(p, n_intervals);
  }
  return plan;
}

template <typename Rng>
std::string make_text(bool rumor, const ClassProfile& prof, Rng& rng) {
  const auto& pool = rumor ? kRumorPool : kNewsPool;
  std::string text;
  int len = std::uniform_int_distribution<int>(7, 13)(rng);
  for (int i = 0; i < len; ++i) {
    if (!text.empty()) text += ' ';
    double r = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    if (r < 0.45) {
      text += pick(pool, rng);
    } else if (r < 0.45 + prof.negative_word_rate) {
      text += pick(kNegativeWords, rng);
    } else if (r < 0.5 + prof.negative_word_rate) {
      text += pick(kPositiveWords, rng);
    } else {
      text += pick(kSharedPool, rng);
    }
  }
  text += " " + pick(kTopics, rng);
  if (chance(prof.debunk_phrase_rate, rng))
    text += " " + pick(kDebunkPhrases, rng);
  if (chance(rumor ? 0.35 : 0.15, rng)) text += "?";
  if (chance(rumor ? 0.3 : 0.15, rng)) text += "!";
  return text;
}

}  // namespace

SynthSpec SynthSpec::defaults() {
  SynthSpec s;
  s.rumor.debunk_phrase_rate = 0.12;
  s.rumor.reliable_url_prob = 0.25;
  s.rumor.verified_prob = 0.06;
  s.rumor.city_prob = 0.13;
  s.rumor.negative_word_rate = 0.18;
  s.rumor.followers_log_mean = 4.8;
  s.news.debunk_phrase_rate = 0.03;
  s.news.reliable_url_prob = 0.6;
  s.news.verified_prob = 0.22;
  s.news.city_prob = 0.175;
  s.news.negative_word_rate = 0.08;
  s.news.followers_log_mean = 5.8;
  return s;
}

namespace {

json profile_to_json(const ClassProfile& p) {
  return {{"debunk_phrase_rate", p.debunk_phrase_rate},
          {"url_prob", p.url_prob},
          {"reliable_url_prob", p.reliable_url_prob},
          {"verified_prob", p.verified_prob},
          {"description_prob", p.description_prob},
          {"city_prob", p.city_prob},
          {"negative_word_rate", p.negative_word_rate},
          {"followers_log_mean", p.followers_log_mean},
          {"followers_log_sd", p.followers_log_sd},
          {"friends_log_mean", p.friends_log_mean},
          {"friends_log_sd", p.friends_log_sd}};
}

ClassProfile profile_from_json(const json& j) {
  ClassProfile p;
  p.debunk_phrase_rate = j.value("debunk_phrase_rate", p.debunk_phrase_rate);
  p.url_prob = j.value("url_prob", p.url_prob);
  p.reliable_url_prob = j.value("reliable_url_prob", p.reliable_url_prob);
  p.verified_prob = j.value("verified_prob", p.verified_prob);
  p.description_prob = j.value("description_prob", p.description_prob);
  p.city_prob = j.value("city_prob", p.city_prob);
  p.negative_word_rate = j.value("negative_word_rate", p.negative_word_rate);
  p.followers_log_mean = j.value("followers_log_mean", p.followers_log_mean);
  p.followers_log_sd = j.value("followers_log_sd", p.followers_log_sd);
  p.friends_log_mean = j.value("friends_log_mean", p.friends_log_mean);
  p.friends_log_sd = j.value("friends_log_sd", p.friends_log_sd);
  return p;
}

}  // namespace

SynthSpec SynthSpec::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open synth spec: " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("synth spec " + path + ": " + e.what());
  }
  SynthSpec s = defaults();
  s.n_events_per_class = j.value("n_events_per_class", s.n_events_per_class);
  s.seed = j.value("seed", s.seed);
  s.n_intervals = j.value("n_intervals", s.n_intervals);
  s.min_total_volume = j.value("min_total_volume", s.min_total_volume);
  s.max_total_volume = j.value("max_total_volume", s.max_total_volume);
  if (s.n_events_per_class < 1)
    throw ConfigError("synth spec: n_events_per_class must be >= 1");
  if (s.n_intervals < 2)
    throw ConfigError("synth spec: n_intervals must be >= 2");
  if (s.min_total_volume <= 0 || s.max_total_volume < s.min_total_volume)
    throw ConfigError("synth spec: invalid volume range");
  if (j.contains("rumor")) s.rumor = profile_from_json(j.at("rumor"));
  if (j.contains("news")) s.news = profile_from_json(j.at("news"));
  return s;
}

void SynthSpec::save(const std::string& path) const {
  json j = {{"n_events_per_class", n_events_per_class},
            {"seed", seed},
            {"n_intervals", n_intervals},
            {"min_total_volume", min_total_volume},
            {"max_total_volume", max_total_volume},
            {"rumor", profile_to_json(rumor)},
            {"news", profile_to_json(news)}};
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write synth spec: " + path);
  out << j.dump(2) << "\n";
}

SynthOutput generate_synthetic_corpus(const SynthSpec& spec,
                                      const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  SynthOutput files;
  files.tweets_jsonl = (fs::path(out_dir) / "tweets.jsonl").string();
  files.events_csv = (fs::path(out_dir) / "events.csv").string();
  files.sidecar_json = (fs::path(out_dir) / "ground_truth.json").string();

  std::ofstream tweets_out(files.tweets_jsonl);
  std::ofstream events_out(files.events_csv);
  if (!tweets_out || !events_out)
    throw ConfigError("cannot write corpus files under " + out_dir);
  events_out << "event_id,label\n";

  json sidecar;
  sidecar["events"] = json::array();
  std::mt19937_64 master(spec.seed);

  const Timestamp corpus_epoch = parse_iso8601_utc("2016-07-01T00:00:00Z");
  std::int64_t tweet_serial = 0;
  const int total_events = 2 * spec.n_events_per_class;
  for (int e = 0; e < total_events; ++e) {
    const bool rumor = e % 2 == 0;
    const ClassProfile& prof = rumor ? spec.rumor : spec.news;
    std::mt19937_64 rng(master());
    std::uniform_real_distribution<double> u(0.0, 1.0);

    char idbuf[32];
    std::snprintf(idbuf, sizeof(idbuf), "ev%04d", e);
    std::string event_id = idbuf;
    double total = spec.min_total_volume +
                   u(rng) * (spec.max_total_volume - spec.min_total_volume);
    EventPlan plan = sample_propagation(spec.n_intervals, total, rng);
    double curve_sum = 0;
    for (double v : plan.curve) curve_sum += v;
    if (curve_sum <= 0) {
      plan.curve.assign(spec.n_intervals, 0.0);
      plan.curve[0] = 1.0;
      curve_sum = 1.0;
    }

    const Timestamp base = corpus_epoch + static_cast<Timestamp>(e) * 72 * kHour;
    std::vector<int> counts(spec.n_intervals, 0);
    int produced = 0;
    for (int t = 0; t < spec.n_intervals; ++t) {
      double lambda = plan.curve[t] * total / curve_sum;
      std::poisson_distribution<int> pois(std::max(lambda, 1e-9));
      counts[t] = pois(rng);
      produced += counts[t];
    }
    if (produced == 0) {
      counts[0] = 1;  // keep every event non-empty
      produced = 1;
    }

    for (int t = 0; t < spec.n_intervals; ++t) {
      for (int c = 0; c < counts[t]; ++c) {
        json tw;
        tw["id"] = "tw" + std::to_string(++tweet_serial);
        tw["event_id"] = event_id;
        tw["text"] = make_text(rumor, prof, rng);
        Timestamp at = base + static_cast<Timestamp>(t) * kHour +
                       static_cast<Timestamp>(u(rng) * (kHour - 1));
        tw["created_at"] = format_iso8601_utc(at);
        tw["is_retweet"] = chance(0.3, rng);
        tw["retweet_count"] =
            std::uniform_int_distribution<int>(0, rumor ? 20 : 25)(rng);
        json urls = json::array();
        if (chance(prof.url_prob, rng)) {
          const auto& domains = chance(prof.reliable_url_prob, rng)
                                    ? kReliableDomains
                                    : kUnreliableDomains;
          urls.push_back("http://" + pick(domains, rng) + "/story/" +
                         std::to_string(tweet_serial));
        }
        tw["urls"] = urls;
        json hashtags = json::array();
        if (chance(0.4, rng)) hashtags.push_back(pick(kTopics, rng));
        tw["hashtags"] = hashtags;
        json mentions = json::array();
        if (chance(0.25, rng)) mentions.push_back("user" + std::to_string(
            std::uniform_int_distribution<int>(1, 500)(rng)));
        tw["mentions"] = mentions;

        std::lognormal_distribution<double> followers(prof.followers_log_mean,
                                                      prof.followers_log_sd);
        std::lognormal_distribution<double> friends(prof.friends_log_mean,
                                                    prof.friends_log_sd);
        json user;
        user["followers"] = static_cast<std::int64_t>(followers(rng));
        user["friends"] = static_cast<std::int64_t>(friends(rng));
        user["statuses"] = std::uniform_int_distribution<int>(10, 20000)(rng);
        user["photos"] = std::uniform_int_distribution<int>(0, 400)(rng);
        user["verified"] = chance(prof.verified_prob, rng);
        user["description"] = chance(prof.description_prob, rng)
                                  ? "account of a real person"
                                  : "";
        user["location"] = chance(prof.city_prob, rng) ? pick(kCities, rng)
                                                       : pick(kSmallTowns, rng);
        Timestamp joined =
            at - static_cast<Timestamp>((30 + u(rng) * 3000) * 86400);
        user["join_date"] = format_iso8601_utc(joined);
        tw["user"] = user;
        tweets_out << tw.dump() << "\n";
      }
    }
    events_out << event_id << "," << (rumor ? "rumor" : "news") << "\n";
    json ev = {{"event_id", event_id},
               {"label", rumor ? "rumor" : "news"},
               {"model", plan.model},
               {"params", plan.params},
               {"target_volume", total},
               {"generated_volume", produced}};
    sidecar["events"].push_back(ev);
  }

  std::ofstream sidecar_out(files.sidecar_json);
  sidecar_out << sidecar.dump(2) << "\n";
  return files;
}

}  // namespace rd

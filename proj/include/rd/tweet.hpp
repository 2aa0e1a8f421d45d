#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rd/types.hpp"

namespace rd {

struct UserProfile {
  std::int64_t followers_count = 0;
  std::int64_t friends_count = 0;
  std::int64_t statuses_count = 0;
  std::int64_t photos_count = 0;
  bool verified = false;
  bool has_description = false;
  std::optional<std::string> location;
  Timestamp join_date = 0;
};

struct Tweet {
  std::string id;
  std::string event_id;
  std::string text;
  Timestamp created_at = 0;
  UserProfile author;
  bool is_retweet = false;
  std::int64_t retweet_count = 0;
  std::vector<std::string> urls;
  std::vector<std::string> hashtags;
  std::vector<std::string> mentions;
};

enum class Label { kRumor, kNews };

inline std::string label_name(Label l) {
  return l == Label::kRumor ? "rumor" : "news";
}

struct Event {
  std::string event_id;
  Label label = Label::kNews;
  std::vector<Tweet> tweets;  // non-empty
};

}  // namespace rd

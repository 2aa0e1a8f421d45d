#include "rd/features.hpp"

#include <cctype>
#include <set>
#include <unordered_set>

namespace rd {

namespace {

const std::vector<std::string> kSmileys = {":->", ":-)", ";->", ";-)", ":)", ";)"};
const std::vector<std::string> kSadFaces = {":-<", ":-(", ";-<", ";-(", ":(", ";("};

const std::unordered_set<std::string> kFirstPronouns = {
    "i", "my", "mine", "me", "we", "our", "ours", "us"};
const std::unordered_set<std::string> kSecondPronouns = {
    "u", "you", "your", "yours"};
const std::unordered_set<std::string> kThirdPronouns = {
    "he", "she", "they", "his", "her", "hers", "him", "them", "their",
    "theirs", "it", "its"};

bool contains_any(const std::string& text, const std::vector<std::string>& pats) {
  for (const auto& p : pats)
    if (text.find(p) != std::string::npos) return true;
  return false;
}

bool is_strip_punct(char c) {
  unsigned char u = static_cast<unsigned char>(c);
  return std::ispunct(u) != 0;
}

}  // namespace

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> tokens;
  std::string cur;
  auto flush = [&] {
    size_t b = 0, e = cur.size();
    while (b < e && is_strip_punct(cur[b])) ++b;
    while (e > b && is_strip_punct(cur[e - 1])) --e;
    if (e > b) tokens.push_back(cur.substr(b, e - b));
    cur.clear();
  };
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else {
      cur += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
  }
  flush();
  return tokens;
}

double polarity_score(const std::string& text, const LookupTables& tables) {
  auto tokens = tokenize(text);
  if (tokens.empty()) return 0.0;
  double sum = 0;
  for (const auto& tok : tokens) sum += tables.polarity(tok);
  return sum / static_cast<double>(tokens.size());
}

TextFeatureBlock extract_text_features(const IntervalBucket& bucket,
                                       const LookupTables& tables) {
  TextFeatureBlock f;
  if (bucket.tweets.empty()) {
    f.empty = true;
    return f;
  }
  const double n = static_cast<double>(bucket.tweets.size());
  for (const Tweet& tw : bucket.tweets) {
    const std::string& raw = tw.text;
    f.length_of_tweet += static_cast<double>(raw.size());
    f.num_of_char += static_cast<double>(
        std::set<char>(raw.begin(), raw.end()).size());
    std::int64_t alpha = 0, upper = 0;
    for (char c : raw) {
      unsigned char u = static_cast<unsigned char>(c);
      if (std::isalpha(u)) {
        ++alpha;
        if (std::isupper(u)) ++upper;
      }
    }
    if (alpha > 0) f.capital += static_cast<double>(upper) / alpha;
    if (contains_any(raw, kSmileys)) f.smile += 1;
    if (contains_any(raw, kSadFaces)) f.sad += 1;
    if (raw.find('?') != std::string::npos) f.question += 1;
    if (raw.find('!') != std::string::npos) f.exclamation += 1;
    if (raw.find("??") != std::string::npos ||
        raw.find("!!") != std::string::npos ||
        raw.find("?!") != std::string::npos ||
        raw.find("!?") != std::string::npos)
      f.question_exclamation += 1;
    if (raw.find('$') != std::string::npos) f.stock += 1;

    auto tokens = tokenize(raw);
    bool has_via = false, has_first = false, has_second = false, has_third = false;
    double pol_sum = 0;
    for (const auto& tok : tokens) {
      double p = tables.polarity(tok);
      pol_sum += p;
      if (p > 0) f.num_positive_words += 1;
      if (p < 0) f.num_negative_words += 1;
      if (tok == "via") has_via = true;
      if (kFirstPronouns.count(tok)) has_first = true;
      if (kSecondPronouns.count(tok)) has_second = true;
      if (kThirdPronouns.count(tok)) has_third = true;
    }
    if (!tokens.empty()) f.polarity_scores += pol_sum / tokens.size();
    if (has_via) f.via += 1;
    if (has_first) f.first_pronoun += 1;
    if (has_second) f.second_pronoun += 1;
    if (has_third) f.third_pronoun += 1;
  }
  f.length_of_tweet /= n;
  f.num_of_char /= n;
  f.capital /= n;
  f.smile /= n;
  f.sad /= n;
  f.num_positive_words /= n;
  f.num_negative_words /= n;
  f.polarity_scores /= n;
  f.via /= n;
  f.stock /= n;
  f.question /= n;
  f.exclamation /= n;
  f.question_exclamation /= n;
  f.first_pronoun /= n;
  f.second_pronoun /= n;
  f.third_pronoun /= n;
  return f;
}

TwitterFeatureBlock extract_twitter_features(const IntervalBucket& bucket,
                                             const LookupTables& tables) {
  TwitterFeatureBlock f;
  if (bucket.tweets.empty()) {
    f.empty = true;
    f.wot_score = kNeutralWot;
    return f;
  }
  const double n = static_cast<double>(bucket.tweets.size());
  double wot_sum = 0;
  std::int64_t url_count = 0;
  for (const Tweet& tw : bucket.tweets) {
    if (!tw.hashtags.empty()) f.hashtag += 1;
    if (!tw.mentions.empty()) f.mention += 1;
    if (tw.is_retweet) f.is_retweet += 1;
    f.num_urls += static_cast<double>(tw.urls.size());
    f.retweets += static_cast<double>(tw.retweet_count);
    bool any_news = false, any_rank = false, any_curated = false;
    for (const auto& url : tw.urls) {
      UrlClassification c = classify_url(url, tables);
      wot_sum += c.wot;
      ++url_count;
      if (c.is_news) any_news = true;
      if (c.rank_lt_5000) any_rank = true;
      std::string domain = url_domain(url);
      if (!domain.empty() && tables.news_domains.count(domain)) any_curated = true;
    }
    if (any_news) f.contain_news += 1;
    if (any_rank) f.url_rank_5000 += 1;
    if (any_curated) f.contain_news_url += 1;
  }
  f.hashtag /= n;
  f.mention /= n;
  f.num_urls /= n;
  f.retweets /= n;
  f.is_retweet /= n;
  f.contain_news /= n;
  f.url_rank_5000 /= n;
  f.contain_news_url /= n;
  f.wot_score = url_count > 0 ? wot_sum / url_count : kNeutralWot;
  return f;
}

UserFeatureBlock extract_user_features(const IntervalBucket& bucket,
                                       const LookupTables& tables) {
  UserFeatureBlock f;
  if (bucket.tweets.empty()) {
    f.empty = true;
    return f;
  }
  const double n = static_cast<double>(bucket.tweets.size());
  for (const Tweet& tw : bucket.tweets) {
    const UserProfile& u = tw.author;
    f.num_followers += static_cast<double>(u.followers_count);
    f.num_friends += static_cast<double>(u.friends_count);
    f.num_tweets += static_cast<double>(u.statuses_count);
    f.num_photos += static_cast<double>(u.photos_count);
    if (u.location && tables.location_in_large_city(*u.location))
      f.in_large_city += 1;
    f.join_date_days +=
        static_cast<double>(tw.created_at - u.join_date) / 86400.0;
    if (u.has_description) f.has_description += 1;
    if (u.verified) f.verified += 1;
    double denom = static_cast<double>(u.followers_count + u.friends_count);
    if (denom > 0) f.reputation_score += u.friends_count / denom;
  }
  f.num_followers /= n;
  f.num_friends /= n;
  f.num_tweets /= n;
  f.num_photos /= n;
  f.in_large_city /= n;
  f.join_date_days /= n;
  f.has_description /= n;
  f.verified /= n;
  f.reputation_score /= n;
  return f;
}

const std::vector<std::string>& block_feature_names() {
  static const std::vector<std::string> names = {
      "LengthOfTweet", "NumOfChar", "Capital", "Smile", "Sad",
      "NumPositiveWords", "NumNegativeWords", "PolarityScores", "Via", "Stock",
      "Question", "Exclamation", "QuestionExclamation", "I", "You", "HeShe",
      "Hashtag", "Mention", "NumUrls", "Retweets", "IsRetweet", "ContainNEWS",
      "WotScore", "URLRank5000", "ContainNewsURL",
      "UserNumFollowers", "UserNumFriends", "UserNumTweets", "UserNumPhotos",
      "UserIsInLargeCity", "UserJoinDate", "UserDescription", "UserVerified",
      "UserReputationScore"};
  return names;
}

std::array<double, 34> block_feature_values(const TextFeatureBlock& text,
                                            const TwitterFeatureBlock& twitter,
                                            const UserFeatureBlock& user) {
  std::array<double, 34> out{};
  size_t i = 0;
  for (double v : text.values()) out[i++] = v;
  for (double v : twitter.values()) out[i++] = v;
  for (double v : user.values()) out[i++] = v;
  return out;
}

}  // namespace rd

#pragma once

#include <array>
#include <string>
#include <vector>

#include "rd/ingestion.hpp"
#include "rd/lookup.hpp"
#include "rd/types.hpp"

namespace rd {

// Lowercase tokens split on whitespace, leading/trailing punctuation stripped.
// Emoticon detection elsewhere runs on raw text, not on these tokens.
std::vector<std::string> tokenize(const std::string& text);

// Mean lexicon polarity over tokens; unknown tokens count toward N with 0.
double polarity_score(const std::string& text, const LookupTables& tables);

struct TextFeatureBlock {
  double length_of_tweet = 0;      // mean character length
  double num_of_char = 0;          // mean count of distinct characters
  double capital = 0;              // mean per-tweet uppercase fraction
  double smile = 0;
  double sad = 0;
  double num_positive_words = 0;
  double num_negative_words = 0;
  double polarity_scores = 0;
  double via = 0;
  double stock = 0;
  double question = 0;
  double exclamation = 0;
  double question_exclamation = 0;
  double first_pronoun = 0;
  double second_pronoun = 0;
  double third_pronoun = 0;
  bool empty = false;

  std::array<double, 16> values() const {
    return {length_of_tweet, num_of_char, capital, smile, sad,
            num_positive_words, num_negative_words, polarity_scores, via,
            stock, question, exclamation, question_exclamation, first_pronoun,
            second_pronoun, third_pronoun};
  }
};

struct TwitterFeatureBlock {
  double hashtag = 0;
  double mention = 0;
  double num_urls = 0;
  double retweets = 0;
  double is_retweet = 0;
  double contain_news = 0;      // >=1 URL categorized News
  double wot_score = kNeutralWot;
  double url_rank_5000 = 0;
  double contain_news_url = 0;  // >=1 URL in the curated news-domain list
  bool empty = false;

  std::array<double, 9> values() const {
    return {hashtag, mention, num_urls, retweets, is_retweet,
            contain_news, wot_score, url_rank_5000, contain_news_url};
  }
};

struct UserFeatureBlock {
  double num_followers = 0;
  double num_friends = 0;
  double num_tweets = 0;
  double num_photos = 0;
  double in_large_city = 0;
  double join_date_days = 0;  // mean days between join date and tweet time
  double has_description = 0;
  double verified = 0;
  double reputation_score = 0;  // friends / (followers + friends)
  bool empty = false;

  std::array<double, 9> values() const {
    return {num_followers, num_friends, num_tweets, num_photos, in_large_city,
            join_date_days, has_description, verified, reputation_score};
  }
};

TextFeatureBlock extract_text_features(const IntervalBucket& bucket,
                                       const LookupTables& tables);
TwitterFeatureBlock extract_twitter_features(const IntervalBucket& bucket,
                                             const LookupTables& tables);
UserFeatureBlock extract_user_features(const IntervalBucket& bucket,
                                       const LookupTables& tables);

// Column names of the 34 block features, declared order.
const std::vector<std::string>& block_feature_names();

std::array<double, 34> block_feature_values(const TextFeatureBlock& text,
                                            const TwitterFeatureBlock& twitter,
                                            const UserFeatureBlock& user);

}  // namespace rd

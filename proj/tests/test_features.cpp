#include <doctest.h>

#include <fstream>
#include <random>

#include "naive_oracles.hpp"
#include "rd/features.hpp"

using namespace rd;

namespace {

LookupTables repo_tables() {
  LookupPaths paths;
  paths.domain_rank_tsv = "data/domain_rank.tsv";
  paths.domain_category_tsv = "data/domain_category.tsv";
  paths.wot_tsv = "data/wot.tsv";
  paths.cities_txt = "data/cities.txt";
  paths.lexicon_tsv = "data/lexicon.tsv";
  paths.news_domains_txt = "data/news_domains.txt";
  return load_lookup_tables(paths);
}

Tweet text_tweet(const std::string& text) {
  Tweet t;
  t.id = "t";
  t.created_at = 0;
  t.text = text;
  return t;
}

std::vector<std::string> read_fixture(const std::string& path) {
  std::ifstream in(path);
  REQUIRE_MESSAGE(bool(in), path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("tokenize lowercases, splits, strips edge punctuation") {
  CHECK(tokenize("Hello, World!") == std::vector<std::string>{"hello", "world"});
  CHECK(tokenize("  (really?)  YES!! ") ==
        std::vector<std::string>{"really", "yes"});
  CHECK(tokenize("don't stop") == std::vector<std::string>{"don't", "stop"});
  CHECK(tokenize("") == std::vector<std::string>{});
  CHECK(tokenize("... !!!") == std::vector<std::string>{});
}

TEST_CASE("polarity_score hand-computed oracle") {
  LookupTables t;
  t.sentiment_lexicon = {{"good", 1.0}, {"bad", -1.0}, {"awful", -2.0}};
  // tokens: good(1) day(0) bad(-1) awful(-2) -> mean = -2/4
  CHECK(polarity_score("Good day, bad AWFUL!", t) == doctest::Approx(-0.5));
  CHECK(polarity_score("", t) == 0.0);
  CHECK(polarity_score("neutral words only", t) == 0.0);
}

TEST_CASE("empty bucket blocks are flagged and neutral") {
  LookupTables t;
  IntervalBucket b;
  auto text = extract_text_features(b, t);
  auto tw = extract_twitter_features(b, t);
  auto user = extract_user_features(b, t);
  CHECK(text.empty);
  CHECK(tw.empty);
  CHECK(user.empty);
  CHECK(tw.wot_score == kNeutralWot);
  for (double v : text.values()) CHECK(v == 0.0);
  for (double v : user.values()) CHECK(v == 0.0);
}

TEST_CASE("text block single-tweet hand oracle") {
  LookupTables t;
  t.sentiment_lexicon = {{"good", 1.0}, {"hoax", -1.0}};
  IntervalBucket b;
  b.tweets.push_back(text_tweet("Good hoax? via I :-)"));
  auto f = extract_text_features(b, t);
  CHECK(f.length_of_tweet == 20);
  CHECK(f.capital == doctest::Approx(2.0 / 12.0));  // G, I of 12 letters
  CHECK(f.smile == 1);
  CHECK(f.sad == 0);
  CHECK(f.num_positive_words == 1);
  CHECK(f.num_negative_words == 1);
  // tokens: good(1) hoax(-1) via(0) i(0) :-) strips to empty -> 4 tokens
  CHECK(f.polarity_scores == doctest::Approx(0.0));
  CHECK(f.via == 1);
  CHECK(f.question == 1);
  CHECK(f.exclamation == 0);
  CHECK(f.first_pronoun == 1);
  CHECK(f.second_pronoun == 0);
}

TEST_CASE("block_feature_values concatenates the three blocks in order") {
  CHECK(block_feature_names().size() == 34);
  TextFeatureBlock text;
  text.length_of_tweet = 1;
  TwitterFeatureBlock tw;
  tw.contain_news_url = 2;
  UserFeatureBlock user;
  user.reputation_score = 3;
  auto v = block_feature_values(text, tw, user);
  CHECK(v[0] == 1);
  CHECK(v[24] == 2);
  CHECK(v[33] == 3);
}

TEST_CASE("feature blocks match naive recomputation on randomized buckets") {
  LookupTables tables = repo_tables();
  std::mt19937_64 rng(20160701);
  for (int trial = 0; trial < 1000; ++trial) {
    IntervalBucket bucket = oracle::random_bucket(rng);
    auto text = extract_text_features(bucket, tables).values();
    auto tw = extract_twitter_features(bucket, tables).values();
    auto user = extract_user_features(bucket, tables).values();
    auto o_text = oracle::naive_text_block(bucket, tables);
    auto o_tw = oracle::naive_twitter_block(bucket, tables);
    auto o_user = oracle::naive_user_block(bucket, tables);
    for (int i = 0; i < 16; ++i)
      CHECK_MESSAGE(text[i] == doctest::Approx(o_text[i]).epsilon(1e-12),
                    "trial ", trial, " text[", i, "]");
    for (int i = 0; i < 9; ++i)
      CHECK_MESSAGE(tw[i] == doctest::Approx(o_tw[i]).epsilon(1e-12),
                    "trial ", trial, " twitter[", i, "]");
    for (int i = 0; i < 9; ++i)
      CHECK_MESSAGE(user[i] == doctest::Approx(o_user[i]).epsilon(1e-12),
                    "trial ", trial, " user[", i, "]");
  }
}

TEST_CASE("rumor fixture polarity is below news fixture polarity") {
  LookupTables tables = repo_tables();
  auto mean_polarity = [&](const std::string& path) {
    auto lines = read_fixture(path);
    double sum = 0;
    for (const auto& line : lines) sum += polarity_score(line, tables);
    return sum / double(lines.size());
  };
  double rumor = mean_polarity("data/fixtures/rumor_texts.txt");
  double news = mean_polarity("data/fixtures/news_texts.txt");
  CHECK(rumor < news);
}

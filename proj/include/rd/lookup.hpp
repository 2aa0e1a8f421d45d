#pragma once

#include <limits>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "rd/types.hpp"

namespace rd {

inline constexpr double kUnknownRank = std::numeric_limits<double>::infinity();
inline constexpr double kNeutralWot = 50.0;

// Offline snapshots replacing the live reputation services. Lookups are total:
// unknown domain -> rank +inf, category non_news, WOT 50.
struct LookupTables {
  std::unordered_map<std::string, double> domain_rank;
  std::unordered_set<std::string> news_category;   // domains categorized News
  std::unordered_map<std::string, double> wot_score;
  std::unordered_set<std::string> large_cities;    // lowercased names
  std::unordered_map<std::string, double> sentiment_lexicon;
  std::unordered_set<std::string> news_domains;    // curated news-site list

  double rank(const std::string& domain) const {
    auto it = domain_rank.find(domain);
    return it == domain_rank.end() ? kUnknownRank : it->second;
  }
  bool is_news_category(const std::string& domain) const {
    return news_category.count(domain) > 0;
  }
  double wot(const std::string& domain) const {
    auto it = wot_score.find(domain);
    return it == wot_score.end() ? kNeutralWot : it->second;
  }
  double polarity(const std::string& token) const {
    auto it = sentiment_lexicon.find(token);
    return it == sentiment_lexicon.end() ? 0.0 : it->second;
  }
  // Case-insensitive substring match on normalized location text.
  bool location_in_large_city(const std::string& location) const;
};

struct LookupPaths {
  std::string domain_rank_tsv;
  std::string domain_category_tsv;
  std::string wot_tsv;
  std::string cities_txt;
  std::string lexicon_tsv;
  std::string news_domains_txt;
};

LookupTables load_lookup_tables(const LookupPaths& paths);

struct UrlClassification {
  bool is_news = false;
  bool rank_lt_5000 = false;
  double wot = kNeutralWot;
};

// Lowercased host of an absolute URL, with a leading "www." stripped.
// Returns empty string when the URL has no recognizable host.
std::string url_domain(const std::string& url);

// diagnostics, when non-null, counts unparseable URLs.
UrlClassification classify_url(const std::string& url,
                               const LookupTables& tables,
                               std::int64_t* diagnostics = nullptr);

// Lowercase, trim, collapse internal whitespace runs to single spaces.
std::string normalize_text(const std::string& text);

}  // namespace rd

#include "rd/ensemble.hpp"

#include <fstream>

#include "rd/lookup.hpp"

namespace rd {

DebunkLexicon load_debunk_lexicon(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open debunk lexicon: " + path);
  DebunkLexicon lex;
  std::string line;
  while (std::getline(in, line)) {
    std::string norm = normalize_text(line);
    if (!norm.empty()) lex.phrases.push_back(norm);
  }
  if (lex.phrases.empty())
    throw SchemaError("debunk lexicon is empty: " + path);
  return lex;
}

DebunkLexicon default_debunk_lexicon() {
  return DebunkLexicon{{
      "hoax", "rumor", "rumour", "not true", "fake", "debunk", "debunked",
      "false", "falsely", "unconfirmed", "misleading", "untrue", "fabricated",
      "baseless", "unverified", "no evidence", "made up", "doubt", "doubtful",
      "denies", "denied", "deny", "lie", "lies", "lying", "scam", "myth",
      "misinformation", "disinformation", "not real", "photoshopped"}};
}

double credit_score(const std::vector<CredibilityPrediction>& predictions,
                    bool* flagged_empty) {
  if (flagged_empty) *flagged_empty = predictions.empty();
  if (predictions.empty()) return 0.5;
  double sum = 0;
  for (const auto& p : predictions) sum += p.p_news;
  return sum / static_cast<double>(predictions.size());
}

double crowd_wisdom(const IntervalBucket& bucket, const DebunkLexicon& lexicon) {
  if (bucket.tweets.empty()) return 0.0;
  std::int64_t hits = 0;
  for (const Tweet& tw : bucket.tweets) {
    std::string norm = normalize_text(tw.text);
    for (const auto& phrase : lexicon.phrases) {
      if (norm.find(phrase) != std::string::npos) {
        ++hits;
        break;
      }
    }
  }
  return static_cast<double>(hits) / static_cast<double>(bucket.tweets.size());
}

}  // namespace rd

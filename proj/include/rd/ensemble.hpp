#pragma once

#include <string>
#include <vector>

#include "rd/credibility.hpp"
#include "rd/ingestion.hpp"

namespace rd {

// Lowercase debunking phrases; matching is case-insensitive substring on
// whitespace-normalized text.
struct DebunkLexicon {
  std::vector<std::string> phrases;
};

DebunkLexicon load_debunk_lexicon(const std::string& path);
DebunkLexicon default_debunk_lexicon();

// Mean p_news over an interval's predictions; empty -> neutral 0.5.
// flagged_empty, when non-null, reports the empty-interval case.
double credit_score(const std::vector<CredibilityPrediction>& predictions,
                    bool* flagged_empty = nullptr);

// Fraction of tweets whose normalized text contains any lexicon phrase.
double crowd_wisdom(const IntervalBucket& bucket, const DebunkLexicon& lexicon);

}  // namespace rd

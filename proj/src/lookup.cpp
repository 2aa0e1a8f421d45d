#include "rd/lookup.hpp"

#include <cctype>
#include <fstream>

#include "rd/csv.hpp"

namespace rd {

namespace {

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::vector<std::vector<std::string>> read_tsv(const std::string& path) {
  return csv::read_file(path, '\t');
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open file: " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n'))
      line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

}  // namespace

std::string normalize_text(const std::string& text) {
  std::string out;
  bool pending_space = false;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!out.empty()) pending_space = true;
    } else {
      if (pending_space) out += ' ';
      pending_space = false;
      out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
  }
  return out;
}

bool LookupTables::location_in_large_city(const std::string& location) const {
  std::string norm = normalize_text(location);
  if (norm.empty()) return false;
  for (const auto& city : large_cities) {
    if (norm.find(city) != std::string::npos) return true;
  }
  return false;
}

LookupTables load_lookup_tables(const LookupPaths& paths) {
  LookupTables t;
  for (const auto& row : read_tsv(paths.domain_rank_tsv)) {
    if (row.size() < 2) throw SchemaError("domain_rank.tsv: short row");
    t.domain_rank[lower(row[0])] = std::stod(row[1]);
  }
  for (const auto& row : read_tsv(paths.domain_category_tsv)) {
    if (row.size() < 2) throw SchemaError("domain_category.tsv: short row");
    if (row[1] == "news") t.news_category.insert(lower(row[0]));
    else if (row[1] != "non_news")
      throw SchemaError("domain_category.tsv: unknown category '" + row[1] + "'");
  }
  for (const auto& row : read_tsv(paths.wot_tsv)) {
    if (row.size() < 2) throw SchemaError("wot.tsv: short row");
    t.wot_score[lower(row[0])] = std::stod(row[1]);
  }
  for (const auto& line : read_lines(paths.cities_txt))
    t.large_cities.insert(normalize_text(line));
  for (const auto& row : read_tsv(paths.lexicon_tsv)) {
    if (row.size() < 2) throw SchemaError("lexicon.tsv: short row");
    t.sentiment_lexicon[lower(row[0])] = std::stod(row[1]);
  }
  for (const auto& line : read_lines(paths.news_domains_txt))
    t.news_domains.insert(lower(line));
  return t;
}

std::string url_domain(const std::string& url) {
  size_t start = 0;
  size_t scheme = url.find("://");
  if (scheme != std::string::npos) {
    start = scheme + 3;
  } else if (url.rfind("//", 0) == 0) {
    start = 2;
  } else {
    return "";  // not an absolute URL
  }
  size_t end = url.find_first_of("/?#", start);
  std::string host = url.substr(start, end == std::string::npos ? std::string::npos
                                                                : end - start);
  size_t at = host.rfind('@');
  if (at != std::string::npos) host = host.substr(at + 1);
  size_t colon = host.rfind(':');
  if (colon != std::string::npos) host = host.substr(0, colon);
  host = lower(host);
  if (host.rfind("www.", 0) == 0) host = host.substr(4);
  if (host.empty() || host.find('.') == std::string::npos) return "";
  return host;
}

UrlClassification classify_url(const std::string& url,
                               const LookupTables& tables,
                               std::int64_t* diagnostics) {
  std::string domain = url_domain(url);
  if (domain.empty()) {
    if (diagnostics) ++*diagnostics;
    return UrlClassification{};  // declared defaults
  }
  UrlClassification c;
  c.is_news = tables.is_news_category(domain);
  c.rank_lt_5000 = tables.rank(domain) < 5000.0;
  c.wot = tables.wot(domain);
  return c;
}

}  // namespace rd

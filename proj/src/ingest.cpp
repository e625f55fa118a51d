#include "partisan/ingest.hpp"

#include <fstream>
#include <istream>
#include <utility>

#include <json.hpp>

#include "partisan/csv.hpp"
#include "partisan/errors.hpp"
#include "partisan/log.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace partisan {

namespace {

// Lines per batch: large enough to amortize the parallel region, small enough
// to keep the raw-line buffer modest.
constexpr size_t kChunkLines = 65536;

struct ParsedLine {
  bool ok = false;
  TweetRecord rec;
};

bool get_string_field(const nlohmann::json& j, const char* key, std::string& out,
                      bool required) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return !required;
  if (it->is_string()) {
    out = it->get<std::string>();
    return true;
  }
  // Numeric ids are tolerated; nlohmann prints 64-bit integers exactly.
  if (it->is_number_integer() || it->is_number_unsigned()) {
    out = it->dump();
    return true;
  }
  return false;
}

bool parse_kind(std::string_view s, TweetKind& out) {
  if (s == "original" || s == "tweet" || s == "quote") {
    out = TweetKind::Original;  // quote-tweets count as originals
    return true;
  }
  if (s == "retweet") {
    out = TweetKind::Retweet;
    return true;
  }
  if (s == "reply") {
    out = TweetKind::Reply;
    return true;
  }
  return false;
}

ParsedLine parse_line(const std::string& line) {
  ParsedLine out;
  nlohmann::json j = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) return out;

  TweetRecord& r = out.rec;
  if (!get_string_field(j, "id", r.tweet_id, true) || r.tweet_id.empty()) return out;
  if (!get_string_field(j, "author_id", r.author_id, true) || r.author_id.empty()) return out;

  std::string kind;
  if (!get_string_field(j, "kind", kind, true) || !parse_kind(kind, r.kind)) return out;

  std::string ref_tweet, ref_author;
  if (!get_string_field(j, "ref_tweet_id", ref_tweet, false)) return out;
  if (!get_string_field(j, "ref_author_id", ref_author, false)) return out;
  if (!ref_tweet.empty()) r.referenced_tweet_id = std::move(ref_tweet);
  if (!ref_author.empty()) r.referenced_author_id = std::move(ref_author);
  if (r.kind == TweetKind::Retweet &&
      (!r.referenced_tweet_id || !r.referenced_author_id)) {
    return out;  // a retweet must say what and whom it retweets
  }
  if (r.kind == TweetKind::Reply && !r.referenced_author_id) return out;

  std::string lang;
  if (!get_string_field(j, "lang", lang, true)) return out;
  r.language = to_lower(lang);

  if (!get_string_field(j, "text", r.text, true)) return out;
  if (!get_string_field(j, "created_at", r.created_at, true)) return out;

  if (auto it = j.find("hashtags"); it != j.end() && !it->is_null()) {
    if (!it->is_array()) return out;
    r.hashtags.reserve(it->size());
    for (const auto& h : *it) {
      if (!h.is_string()) return out;
      std::string_view tag = h.get_ref<const std::string&>();
      if (!tag.empty() && tag.front() == '#') tag.remove_prefix(1);
      if (!tag.empty()) r.hashtags.push_back(to_lower(tag));
    }
  }
  if (auto it = j.find("urls"); it != j.end() && !it->is_null()) {
    if (!it->is_array()) return out;
    r.urls.reserve(it->size());
    for (const auto& u : *it) {
      if (!u.is_string()) return out;
      if (!u.get_ref<const std::string&>().empty())
        r.urls.push_back(u.get<std::string>());
    }
  }

  out.ok = true;
  return out;
}

bool is_excluded(const TweetRecord& r, const std::vector<std::string>& terms) {
  for (const std::string& term : terms) {
    if (term.empty()) continue;
    std::string_view tag_form = term;
    if (tag_form.front() == '#') tag_form.remove_prefix(1);
    for (const std::string& h : r.hashtags) {
      if (h == tag_form) return true;
    }
    if (contains_ci(r.text, term)) return true;
  }
  return false;
}

}  // namespace

Corpus ingest(std::istream& in, const FilterConfig& config, IngestReport* report,
              Execution exec) {
  IngestReport local;
  IngestReport& rep = report ? *report : local;
  rep = IngestReport{};

  std::vector<TweetRecord> kept;
  StringSet seen_ids;

  std::vector<std::string> lines;
  lines.reserve(kChunkLines);
  std::vector<ParsedLine> parsed;

  const bool parallel = exec == Execution::Parallel;
  bool eof = false;
  while (!eof) {
    lines.clear();
    std::string line;
    while (lines.size() < kChunkLines && std::getline(in, line)) {
      lines.push_back(std::move(line));
    }
    eof = lines.size() < kChunkLines;
    if (lines.empty()) break;
    rep.lines_read += lines.size();

    parsed.assign(lines.size(), ParsedLine{});
    const int64_t n = static_cast<int64_t>(lines.size());
#pragma omp parallel for schedule(dynamic, 512) if (parallel)
    for (int64_t i = 0; i < n; ++i) {
      parsed[static_cast<size_t>(i)] = parse_line(lines[static_cast<size_t>(i)]);
    }

    // The merge is sequential and in input order, so the outcome matches the
    // serial path exactly: dedup first (first occurrence wins), then the
    // content filters.
    for (ParsedLine& p : parsed) {
      if (!p.ok) {
        ++rep.dropped_malformed;
        continue;
      }
      if (config.dedup && !seen_ids.insert(p.rec.tweet_id).second) {
        ++rep.dropped_duplicate;
        continue;
      }
      if (!config.keep_languages.empty() &&
          !config.keep_languages.contains(p.rec.language)) {
        ++rep.dropped_language;
        continue;
      }
      if (is_excluded(p.rec, config.exclusion_terms)) {
        ++rep.dropped_excluded;
        continue;
      }
      kept.push_back(std::move(p.rec));
    }
  }

  rep.kept = kept.size();
  return Corpus(std::move(kept));
}

Corpus ingest_file(const std::string& path, const FilterConfig& config,
                   IngestReport* report, Execution exec) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open: " + path);
  return ingest(in, config, report, exec);
}

std::vector<std::string> load_exclusion_terms(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open: " + path);
  std::vector<std::string> terms;
  std::string line;
  while (std::getline(in, line)) {
    std::string_view t = trim(line);
    if (t.empty() || t.front() == ';') continue;
    terms.push_back(to_lower(t));
  }
  return terms;
}

void write_ingest_report(const IngestReport& report, const std::string& path) {
  CsvWriter csv(path);
  csv.row({"measure", "count"});
  csv.row() << "lines_read" << report.lines_read;
  csv.row() << "kept" << report.kept;
  csv.row() << "dropped_malformed" << report.dropped_malformed;
  csv.row() << "dropped_duplicate" << report.dropped_duplicate;
  csv.row() << "dropped_language" << report.dropped_language;
  csv.row() << "dropped_excluded" << report.dropped_excluded;
}

}  // namespace partisan
